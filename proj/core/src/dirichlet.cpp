#include "padicfe/dirichlet.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

namespace padicfe {

namespace {

long gcd_l(long a, long b) { return std::gcd(a, b); }

// generators (with orders) of (Z/q)^x via CRT over prime powers
struct UnitGroup {
    long q;
    std::vector<long> gens;    // elements of (Z/q)^x
    std::vector<long> orders;  // respective orders; group = product of cyclic
};

long pow_mod_l(long b, long e, long m) {
    long r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1) r = long((__int128)r * b % m);
        b = long((__int128)b * b % m);
        e >>= 1;
    }
    return r;
}

std::vector<long> prime_factors(long n) {
    std::vector<long> fs;
    for (long d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            fs.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) fs.push_back(n);
    return fs;
}

long order_mod(long a, long m, long group_order) {
    long o = group_order;
    for (long d : prime_factors(group_order))
        while (o % d == 0 && pow_mod_l(a, o / d, m) == 1) o /= d;
    return o;
}

long primitive_root_mod_ppower(long p, long e) {
    long pe = 1;
    for (long i = 0; i < e; ++i) pe *= p;
    long phi = (p - 1) * (pe / p);
    for (long g = 2; g < pe; ++g) {
        if (gcd_l(g, pe) != 1) continue;
        if (order_mod(g, pe, phi) == phi) return g;
    }
    throw domain_error("no primitive root");
}

long crt_pair(long r1, long m1, long r2, long m2) {
    // x = r1 mod m1, x = r2 mod m2, gcd(m1,m2)=1
    long m1i = 0;
    for (long t = 0; t < m2; ++t)
        if ((__int128)t * m1 % m2 == 1 % m2) {
            m1i = t;
            break;
        }
    long x = r1 + m1 * (((r2 - r1) % m2 + m2) % m2 * m1i % m2);
    return ((x % (m1 * m2)) + m1 * m2) % (m1 * m2);
}

UnitGroup unit_group(long q) {
    UnitGroup U;
    U.q = q;
    if (q == 1) return U;
    std::vector<std::pair<long, long>> pps;  // (p, p^e)
    long m = q;
    for (long d = 2; d * d <= m; ++d) {
        if (m % d == 0) {
            long pe = 1;
            while (m % d == 0) {
                m /= d;
                pe *= d;
            }
            pps.push_back({d, pe});
        }
    }
    if (m > 1) pps.push_back({m, m});
    for (auto [p, pe] : pps) {
        std::vector<std::pair<long, long>> local;  // (gen mod pe, order)
        if (p == 2) {
            if (pe == 2) {
            } else if (pe == 4) {
                local.push_back({3, 2});
            } else {
                local.push_back({pe - 1, 2});
                local.push_back({5, pe / 4});
            }
        } else {
            long g = primitive_root_mod_ppower(p, 1);
            long e = 0;
            for (long t = pe; t > 1; t /= p) ++e;
            if (e > 1) g = primitive_root_mod_ppower(p, e);
            local.push_back({g, (p - 1) * (pe / p)});
        }
        for (auto [g, o] : local) {
            long lifted = crt_pair(g, pe, 1, q / pe);
            U.gens.push_back(lifted);
            U.orders.push_back(o);
        }
    }
    return U;
}

}  // namespace

DirichletCharacter DirichletCharacter::trivial(long q) {
    std::vector<long> expo(size_t(q), -1);
    for (long a = 0; a < q; ++a)
        if (gcd_l(a, q) == 1 || q == 1) expo[size_t(a)] = 0;
    return DirichletCharacter(q, 1, std::move(expo));
}

DirichletCharacter::DirichletCharacter(long q, long order, std::vector<long> expo)
    : q_(q), n_(order), expo_(std::move(expo)) {
    if (q_ < 1 || long(expo_.size()) != q_) throw domain_error("bad character table");
    normalize_order();
}

void DirichletCharacter::normalize_order() {
    long g = n_;
    for (long e : expo_)
        if (e > 0) g = gcd_l(g, e);
    if (g > 1 && n_ > 1) {
        for (auto& e : expo_)
            if (e > 0) e /= g;
        n_ /= g;
    }
    if (n_ < 1) n_ = 1;
}

bool DirichletCharacter::is_unit_arg(long a) const {
    long r = ((a % q_) + q_) % q_;
    return expo_[size_t(r)] >= 0;
}

long DirichletCharacter::expo_at(const mpz_class& a) const {
    mpz_class r;
    mpz_mod_ui(r.get_mpz_t(), a.get_mpz_t(), (unsigned long)q_);
    long idx = r.get_si();
    long e = expo_[size_t(idx)];
    if (e < 0) throw domain_error("character evaluated at non-unit");
    return e;
}

CycExact DirichletCharacter::value(const mpz_class& a) const {
    mpz_class r;
    mpz_mod_ui(r.get_mpz_t(), a.get_mpz_t(), (unsigned long)q_);
    long idx = r.get_si();
    long e = expo_[size_t(idx)];
    if (e < 0) return CycExact(n_);
    return CycExact::root_of_unity(n_, e);
}

bool DirichletCharacter::is_trivial() const {
    for (long a = 0; a < q_; ++a)
        if (expo_[size_t(a)] > 0) return false;
    return true;
}

long DirichletCharacter::parity() const {
    long e = expo_[size_t((q_ - 1) % q_)];
    return e == 0 ? 1 : -1;  // chi(-1)^2 = 1 forces e in {0, n/2}
}

long DirichletCharacter::conductor() const {
    for (long f = 1; f <= q_; ++f) {
        if (q_ % f != 0) continue;
        // chi trivial on units a = 1 mod f ?
        bool ok = true;
        for (long a = 0; a < q_ && ok; ++a) {
            if (expo_[size_t(a)] >= 0 && a % f == 1 % f && expo_[size_t(a)] != 0) ok = false;
        }
        if (ok) return f;
    }
    return q_;
}

DirichletCharacter DirichletCharacter::primitive_part() const {
    long f = conductor();
    if (f == q_) return *this;
    std::vector<long> expo(size_t(f), -1);
    for (long a = 0; a < f; ++a) {
        if (gcd_l(a, f) != 1 && f > 1) continue;
        // find lift of a mod f coprime to q
        for (long t = 0; t < q_ / f + 1; ++t) {
            long b = a + t * f;
            if (b < q_ && (q_ == 1 || gcd_l(b, q_) == 1)) {
                expo[size_t(a)] = expo_[size_t(b)];
                break;
            }
        }
        if (f == 1) expo[0] = 0;
    }
    return DirichletCharacter(f, n_, std::move(expo));
}

DirichletCharacter DirichletCharacter::induced_mod(long qq) const {
    if (qq % q_ != 0) throw domain_error("induced_mod needs q | qq");
    std::vector<long> expo(size_t(qq), -1);
    for (long a = 0; a < qq; ++a) {
        if (qq > 1 && gcd_l(a, qq) != 1) continue;
        expo[size_t(a)] = expo_[size_t(a % q_)];
        if (expo[size_t(a)] < 0 && q_ == 1) expo[size_t(a)] = 0;
    }
    return DirichletCharacter(qq, n_, std::move(expo));
}

DirichletCharacter DirichletCharacter::operator*(const DirichletCharacter& o) const {
    long q = std::lcm(q_, o.q_);
    DirichletCharacter A = induced_mod(q), B = o.induced_mod(q);
    long n = std::lcm(A.n_, B.n_);
    std::vector<long> expo(size_t(q), -1);
    for (long a = 0; a < q; ++a) {
        if (A.expo_[size_t(a)] >= 0 && B.expo_[size_t(a)] >= 0)
            expo[size_t(a)] = (A.expo_[size_t(a)] * (n / A.n_) + B.expo_[size_t(a)] * (n / B.n_)) % n;
    }
    return DirichletCharacter(q, n, std::move(expo));
}

DirichletCharacter DirichletCharacter::inverse() const {
    std::vector<long> expo(expo_);
    for (auto& e : expo)
        if (e > 0) e = n_ - e;
    return DirichletCharacter(q_, n_, std::move(expo));
}

DirichletCharacter DirichletCharacter::pow(long e) const {
    long ee = ((e % n_) + n_) % n_;
    std::vector<long> expo(expo_);
    for (auto& x : expo)
        if (x >= 0) x = (x * ee) % n_;
    return DirichletCharacter(q_, n_, std::move(expo));
}

bool operator==(const DirichletCharacter& a, const DirichletCharacter& b) {
    if (a.q_ != b.q_) return false;
    for (long t = 0; t < a.q_; ++t) {
        bool ua = a.expo_[size_t(t)] >= 0, ub = b.expo_[size_t(t)] >= 0;
        if (ua != ub) return false;
        if (ua) {
            // compare as roots of unity
            long n = std::lcm(a.n_, b.n_);
            if (a.expo_[size_t(t)] * (n / a.n_) % n != b.expo_[size_t(t)] * (n / b.n_) % n) return false;
        }
    }
    return true;
}

std::vector<DirichletCharacter> DirichletCharacter::all_mod(long q) {
    std::vector<DirichletCharacter> out;
    UnitGroup U = unit_group(q);
    long ngens = long(U.gens.size());
    long n = 1;
    for (long o : U.orders) n = std::lcm(n, o);
    // enumerate exponent tuples
    std::vector<long> tup(size_t(ngens), 0);
    auto emit = [&]() {
        std::vector<long> expo(size_t(q), -1);
        // discrete log over the product structure: walk all units
        // by products of generator powers
        std::vector<long> idx(size_t(ngens), 0);
        std::function<void(long, long)> rec = [&](long pos, long val) {
            if (pos == ngens) {
                long e = 0;
                for (long t = 0; t < ngens; ++t) e = (e + tup[size_t(t)] * idx[size_t(t)] % U.orders[size_t(t)] * (n / U.orders[size_t(t)])) % n;
                expo[size_t(val)] = e;
                return;
            }
            long v = val;
            for (long k = 0; k < U.orders[size_t(pos)]; ++k) {
                idx[size_t(pos)] = k;
                rec(pos + 1, v);
                v = long((__int128)v * U.gens[size_t(pos)] % q);
            }
        };
        if (q == 1) {
            expo[0] = 0;
        } else {
            rec(0, 1 % q);
        }
        out.emplace_back(q, n, std::move(expo));
    };
    std::function<void(long)> walk = [&](long pos) {
        if (pos == ngens) {
            emit();
            return;
        }
        for (long k = 0; k < U.orders[size_t(pos)]; ++k) {
            tup[size_t(pos)] = k;
            walk(pos + 1);
        }
    };
    walk(0);
    return out;
}

std::vector<DirichletCharacter> DirichletCharacter::primitive_mod(long q) {
    std::vector<DirichletCharacter> out;
    for (auto& chi : all_mod(q))
        if (chi.conductor() == q) out.push_back(chi);
    return out;
}

CycExact gauss_sum(const DirichletCharacter& mu) {
    if (!mu.is_primitive()) throw imprimitive_character("imprimitive character");
    long q = mu.modulus();
    long n = mu.order();
    long m = std::lcm(q, n);
    CycExact acc(m);
    for (long a = 0; a < q; ++a) {
        if (!mu.is_unit_arg(a) && q > 1) continue;
        CycExact term = mu.value(a).lift_to(m) * CycExact::root_of_unity(m, a * (m / q));
        acc = acc + term;
    }
    if (q == 1) acc = CycExact::rational(1, 1);
    return acc;
}

}  // namespace padicfe
