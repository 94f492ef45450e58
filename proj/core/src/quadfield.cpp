#include "padicfe/quadfield.hpp"

#include <algorithm>
#include <cmath>

namespace padicfe {

long kronecker_symbol(long a, long n) {
    // general Kronecker symbol (a/n), n may be negative or even
    if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
    long r = 1;
    if (n < 0) {
        n = -n;
        if (a < 0) r = -r;
    }
    long v = 0;
    while (n % 2 == 0) {
        n /= 2;
        ++v;
    }
    if (v % 2 == 1) {
        long am = ((a % 8) + 8) % 8;
        if (am == 3 || am == 5) r = -r;
        if (am % 2 == 0) return 0;
    }
    a = ((a % n) + n) % n;
    // Jacobi from here
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            long nm = n % 8;
            if (nm == 3 || nm == 5) r = -r;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) r = -r;
        a %= n;
    }
    return n == 1 ? r : 0;
}

namespace {

mpz_class sqrt_minus_D_mod_pN(long D, unsigned long p, int N) {
    // Hensel-lift a root of x^2 = -D from mod p; deterministic: smallest root mod p
    long r0 = -1;
    long target = long(((-D) % long(p) + long(p)) % long(p));
    for (long x = 0; x < long(p); ++x)
        if ((x * x) % long(p) == target) {
            r0 = x;
            break;
        }
    if (r0 < 0) throw domain_error("p is not split in this field");
    mpz_class pk(p), x(r0);
    mpz_class mD(-D);
    for (int i = 1; i < N; ++i) {
        pk *= p;
        // x <- x - (x^2 + D)/(2x) mod p^(i+1)
        mpz_class f = (x * x - mD) % pk;
        mpz_class inv2x;
        mpz_class two_x = (2 * x) % pk;
        if (mpz_invert(inv2x.get_mpz_t(), two_x.get_mpz_t(), pk.get_mpz_t()) == 0)
            throw domain_error("Hensel lift failed");
        x = ((x - f * inv2x) % pk + pk) % pk;
    }
    return x;
}

}  // namespace

ImagQuadField::ImagQuadField(long D, unsigned long p, int N) : D_(D), p_(p) {
    if (D <= 0) throw domain_error("D must be positive (field is Q(sqrt(-D)))");
    // require squarefree D
    for (long d = 2; d * d <= D; ++d)
        if (D % (d * d) == 0) throw domain_error("D must be squarefree");
    half_ = ((-D) % 4 + 4) % 4 == 1;  // -D = 1 mod 4
    disc_ = half_ ? -D : -4 * D;
    w_ = (D == 1) ? 4 : (D == 3 ? 6 : 2);
    if (count_reduced_forms() != 1)
        throw domain_error("class number is not 1; field rejected");
    if (D % long(p) == 0) throw domain_error("p must not divide D");
    zp_ = make_zp_ring(p, N);
    s_ = sqrt_minus_D_mod_pN(D, p, N);
    // omega images: omega = (1+s)/2 or s
    if (half_) {
        mpz_class inv2 = zp_->inv(mpz_class(2));
        om_p_ = zp_->mul(zp_->reduce(1 + s_), inv2);
        om_pc_ = zp_->mul(zp_->reduce(1 - s_), inv2);
    } else {
        om_p_ = zp_->reduce(s_);
        om_pc_ = zp_->reduce(-s_);
    }
    // find a generator of pfrak: norm p with x + y*omega = 0 mod pfrak
    bool found = false;
    long lim = long(std::sqrt(double(p))) + 2;
    for (long y = -lim; y <= lim && !found; ++y) {
        for (long x = -3 * lim; x <= 3 * lim && !found; ++x) {
            KElem z{x, y};
            if (norm(z) == long(p)) {
                mpz_class red = reduce_mod_pfrak(z, 1);
                if (red == 0) {
                    pi_ = canonical(z);
                    found = true;
                }
            }
        }
    }
    if (!found) throw domain_error("no generator of norm p found (p split, h = 1 expected)");
}

long ImagQuadField::count_reduced_forms() const {
    // reduced positive-definite forms (a,b,c) of discriminant disc:
    // b^2 - 4ac = disc, |b| <= a <= c, b >= 0 if |b| = a or a = c
    long h = 0;
    long Dd = -disc_;
    for (long a = 1; a * a * 4 <= Dd * 4; ++a) {
        if (a * a > Dd / 3 + 1) break;
        for (long b = -a; b <= a; ++b) {
            long num = b * b + Dd;
            if (num % (4 * a) != 0) continue;
            long c = num / (4 * a);
            if (c < a) continue;
            if ((b < 0) && (-b == a || a == c)) continue;
            h += 1;
        }
    }
    return h;
}

KElem ImagQuadField::mul(const KElem& x, const KElem& y) const {
    if (half_) {
        // omega^2 = omega - (1+D)/4
        mpz_class nm((1 + D_) / 4);
        return KElem{x.a * y.a - nm * x.b * y.b, x.a * y.b + x.b * y.a + x.b * y.b};
    }
    return KElem{x.a * y.a - D_ * x.b * y.b, x.a * y.b + x.b * y.a};
}

KElem ImagQuadField::conj(const KElem& x) const {
    if (half_) return KElem{x.a + x.b, -x.b};  // conj(omega) = 1 - omega
    return KElem{x.a, -x.b};
}

KElem ImagQuadField::pow(const KElem& x, long e) const {
    if (e < 0) throw domain_error("negative powers leave O_K");
    KElem r{1, 0}, b = x;
    while (e) {
        if (e & 1) r = mul(r, b);
        e >>= 1;
        if (e) b = mul(b, b);
    }
    return r;
}

mpz_class ImagQuadField::norm(const KElem& x) const {
    if (half_) {
        mpz_class nm((1 + D_) / 4);
        return x.a * x.a + x.a * x.b + nm * x.b * x.b;
    }
    return x.a * x.a + D_ * x.b * x.b;
}

mpz_class ImagQuadField::trace(const KElem& x) const {
    mpz_class t = 2 * x.a;
    if (half_) t += x.b;
    return t;
}

bool ImagQuadField::divides(const KElem& y, const KElem& x, KElem* quotient) const {
    // y | x  <=>  x * conj(y) / N(y) is integral
    mpz_class n = norm(y);
    if (n == 0) return false;
    KElem t = mul(x, conj(y));
    if (!mpz_divisible_p(t.a.get_mpz_t(), n.get_mpz_t()) ||
        !mpz_divisible_p(t.b.get_mpz_t(), n.get_mpz_t()))
        return false;
    if (quotient) {
        KElem q;
        mpz_divexact(q.a.get_mpz_t(), t.a.get_mpz_t(), n.get_mpz_t());
        mpz_divexact(q.b.get_mpz_t(), t.b.get_mpz_t(), n.get_mpz_t());
        *quotient = q;
    }
    return true;
}

std::vector<KElem> ImagQuadField::units() const {
    std::vector<KElem> us{{1, 0}, {-1, 0}};
    if (D_ == 1) {
        us.push_back({0, 1});
        us.push_back({0, -1});
    } else if (D_ == 3) {
        // omega = (1+sqrt(-3))/2 is a primitive 6th root of unity
        us.push_back({0, 1});
        us.push_back({0, -1});
        us.push_back({-1, 1});
        us.push_back({1, -1});
    }
    return us;
}

KElem ImagQuadField::canonical(const KElem& x) const {
    // canonical representative: among associates prefer b > 0, then smallest
    // (b, a) lexicographically; for b = 0 take a > 0
    std::vector<KElem> assoc;
    for (const auto& u : units()) assoc.push_back(mul(x, u));
    std::sort(assoc.begin(), assoc.end(), [](const KElem& l, const KElem& r) {
        auto lkey = std::make_tuple(!(l.b > 0 || (l.b == 0 && l.a > 0)), l.b, l.a);
        auto rkey = std::make_tuple(!(r.b > 0 || (r.b == 0 && r.a > 0)), r.b, r.a);
        return lkey < rkey;
    });
    return assoc.front();
}

std::vector<std::pair<KElem, long>> ImagQuadField::ideals_up_to(long B) const {
    std::vector<std::pair<KElem, long>> out;
    long ylim = half_ ? long(std::sqrt(4.0 * B / (4.0 * ((1 + D_) / 4.0) - 1))) + 2
                      : long(std::sqrt(double(B) / D_)) + 2;
    long xlim = long(std::sqrt(double(B))) + ylim + 2;
    for (long y = 0; y <= ylim; ++y) {
        for (long x = -xlim; x <= xlim; ++x) {
            if (x == 0 && y == 0) continue;
            KElem z{x, y};
            mpz_class n = norm(z);
            if (n > B) continue;
            KElem c = canonical(z);
            if (c.a == z.a && c.b == z.b) out.push_back({z, n.get_si()});
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& l, const auto& r) {
        return std::make_tuple(l.second, l.first.a, l.first.b) <
               std::make_tuple(r.second, r.first.a, r.first.b);
    });
    return out;
}

mpz_class ImagQuadField::reduce_mod_pfrak(const KElem& x, long r) const {
    mpz_class pr;
    mpz_ui_pow_ui(pr.get_mpz_t(), p_, (unsigned long)r);
    mpz_class v = (x.a + x.b * om_p_) % pr;
    if (v < 0) v += pr;
    return v;
}

mpz_class ImagQuadField::reduce_mod_pfrak_bar(const KElem& x, long r) const {
    mpz_class pr;
    mpz_ui_pow_ui(pr.get_mpz_t(), p_, (unsigned long)r);
    mpz_class v = (x.a + x.b * om_pc_) % pr;
    if (v < 0) v += pr;
    return v;
}

long ImagQuadField::eps_K(long n) const { return kronecker_symbol(disc_, n); }

}  // namespace padicfe
