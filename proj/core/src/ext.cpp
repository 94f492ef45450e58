#include "padicfe/ext.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace padicfe {

std::shared_ptr<const ExtRing> ExtRing::quadratic(ZpRingPtr base, const mpz_class& c) {
    auto r = std::shared_ptr<ExtRing>(new ExtRing());
    r->base_ = std::move(base);
    r->kind_ = Kind::Quadratic;
    r->d_ = 2;
    r->c_ = r->base_->reduce(c);
    if (r->c_ == 0) throw domain_error("quadratic modulus x^2 - c needs c != 0 mod p^N");
    int vc = r->base_->val(r->c_);
    if (vc % 2 == 1) {
        r->e_ = 2;
        r->irreducible_ = true;
    } else {
        r->e_ = 1;
        // unit part a square mod p  <=>  x^2 - c splits (p odd)
        mpz_class u = r->c_;
        for (int i = 0; i < vc; ++i) mpz_divexact_ui(u.get_mpz_t(), u.get_mpz_t(), r->base_->p());
        mpz_class pm(r->base_->p());
        int leg = mpz_legendre(u.get_mpz_t(), pm.get_mpz_t());
        r->irreducible_ = (leg == -1);
    }
    return r;
}

std::shared_ptr<const ExtRing> ExtRing::cyclo_p_power(ZpRingPtr base, int rr) {
    if (rr < 1) throw domain_error("cyclotomic level must be >= 1");
    auto r = std::shared_ptr<ExtRing>(new ExtRing());
    r->base_ = std::move(base);
    r->kind_ = Kind::CycloPPower;
    r->r_ = rr;
    unsigned long p = r->base_->p();
    long pr1 = 1;
    for (int i = 0; i < rr - 1; ++i) pr1 *= long(p);
    r->d_ = int((p - 1) * pr1);
    r->e_ = r->d_;  // totally ramified
    r->irreducible_ = true;
    return r;
}

std::vector<mpz_class> ExtRing::modulus() const {
    std::vector<mpz_class> m(size_t(d_) + 1, 0);
    if (kind_ == Kind::Quadratic) {
        m[0] = base_->reduce(-c_);
        m[2] = 1;
    } else {
        long pr1 = d_ / long(base_->p() - 1);
        for (unsigned long i = 0; i < base_->p(); ++i) m[size_t(i * pr1)] = 1;
    }
    return m;
}

std::vector<mpz_class> ExtRing::reduce(std::vector<mpz_class> poly) const {
    if (kind_ == Kind::Quadratic) {
        for (size_t deg = poly.size(); deg-- > 2;) {
            if (poly[deg] != 0) {
                poly[deg - 2] += poly[deg] * c_;
                poly[deg] = 0;
            }
        }
    } else {
        long pr1 = d_ / long(base_->p() - 1);
        for (size_t deg = poly.size(); deg-- > size_t(d_);) {
            mpz_class c = poly[deg];
            if (c != 0) {
                poly[deg] = 0;
                for (unsigned long i = 0; i + 1 < base_->p(); ++i)
                    poly[deg - size_t(d_) + size_t(i * pr1)] -= c;
            }
        }
    }
    poly.resize(size_t(d_));
    for (auto& x : poly) x = base_->reduce(x);
    return poly;
}

ExtElem::ExtElem(ExtRingPtr ring, std::vector<mpz_class> coeffs)
    : ring_(std::move(ring)), c_(ring_->reduce(std::move(coeffs))) {}

ExtElem ExtElem::from_base(ExtRingPtr ring, const mpz_class& a) {
    std::vector<mpz_class> c(size_t(ring->degree()), 0);
    c[0] = ring->base()->reduce(a);
    return ExtElem(std::move(ring), std::move(c));
}

ExtElem ExtElem::gen(ExtRingPtr ring) {
    std::vector<mpz_class> c(size_t(ring->degree()), 0);
    c[1] = 1;
    return ExtElem(std::move(ring), std::move(c));
}

bool ExtElem::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const mpz_class& x) { return x == 0; });
}

static void check_ext_ring(const ExtElem& a, const ExtElem& b, const char* where) {
    if (a.ring().get() != b.ring().get()) {
        if (a.ring()->kind() != b.ring()->kind() || a.ring()->degree() != b.ring()->degree() ||
            !a.ring()->base()->same(*b.ring()->base()) ||
            (a.ring()->kind() == ExtRing::Kind::Quadratic && a.ring()->quad_c() != b.ring()->quad_c()) ||
            (a.ring()->kind() == ExtRing::Kind::CycloPPower && a.ring()->cyclo_level() != b.ring()->cyclo_level()))
            throw ring_mismatch(std::string(where) + ": operands from different extension rings");
    }
}

ExtElem operator+(const ExtElem& a, const ExtElem& b) {
    check_ext_ring(a, b, "ExtElem+");
    std::vector<mpz_class> c(a.c_.size());
    for (size_t i = 0; i < c.size(); ++i) c[i] = a.ring_->base()->add(a.c_[i], b.c_[i]);
    return ExtElem(a.ring_, std::move(c));
}

ExtElem operator-(const ExtElem& a, const ExtElem& b) {
    check_ext_ring(a, b, "ExtElem-");
    std::vector<mpz_class> c(a.c_.size());
    for (size_t i = 0; i < c.size(); ++i) c[i] = a.ring_->base()->sub(a.c_[i], b.c_[i]);
    return ExtElem(a.ring_, std::move(c));
}

ExtElem ExtElem::operator-() const {
    std::vector<mpz_class> c(c_.size());
    for (size_t i = 0; i < c.size(); ++i) c[i] = ring_->base()->reduce(-c_[i]);
    return ExtElem(ring_, std::move(c));
}

ExtElem operator*(const ExtElem& a, const ExtElem& b) {
    check_ext_ring(a, b, "ExtElem*");
    size_t d = a.c_.size();
    std::vector<mpz_class> prod(2 * d - 1, 0);
    for (size_t i = 0; i < d; ++i) {
        if (a.c_[i] == 0) continue;
        for (size_t j = 0; j < d; ++j)
            if (b.c_[j] != 0) prod[i + j] += a.c_[i] * b.c_[j];
    }
    return ExtElem(a.ring_, std::move(prod));
}

ExtElem ExtElem::scale(const mpz_class& s) const {
    std::vector<mpz_class> c(c_.size());
    for (size_t i = 0; i < c.size(); ++i) c[i] = ring_->base()->mul(c_[i], s);
    return ExtElem(ring_, std::move(c));
}

ExtElem ExtElem::inverse() const {
    const auto& zr = *ring_->base();
    if (ring_->kind() == ExtRing::Kind::Quadratic) {
        // (a+bx)(a-bx) = a^2 - c b^2
        mpz_class n = zr.reduce(c_[0] * c_[0] - ring_->quad_c() * c_[1] * c_[1]);
        mpz_class ni = zr.inv(n);  // throws not_invertible for non-units
        std::vector<mpz_class> c{zr.mul(c_[0], ni), zr.reduce(-c_[1] * ni)};
        return ExtElem(ring_, std::move(c));
    }
    // local ring with residue map x -> 1; Newton-lift the inverse of the image
    mpz_class img = 0;
    for (const auto& x : c_) img += x;
    img = zr.reduce(img);
    if (zr.val(img) > 0) throw not_invertible("not invertible at this precision");
    ExtElem y = from_base(ring_, zr.inv(img));
    ExtElem one_ = one(ring_);
    ExtElem two = from_base(ring_, 2);
    // m-adic Newton: y <- y(2 - ay); the error ideal is nilpotent mod p^N
    int guard = 2 * (32 - __builtin_clz(unsigned(zr.precision() * ring_->degree() + 2))) + 4;
    for (int it = 0; it < guard; ++it) {
        ExtElem e = (*this) * y;
        if (e == one_) return y;
        y = y * (two - e);
    }
    if ((*this) * y == one_) return y;
    throw not_invertible("not invertible at this precision");
}

ExtElem ExtElem::pow(const mpz_class& e) const {
    if (e < 0) return inverse().pow(-e);
    ExtElem r = one(ring_);
    ExtElem b = *this;
    mpz_class k = e;
    while (k > 0) {
        if (mpz_odd_p(k.get_mpz_t())) r = r * b;
        k >>= 1;
        if (k > 0) b = b * b;
    }
    return r;
}

bool operator==(const ExtElem& a, const ExtElem& b) {
    check_ext_ring(a, b, "ExtElem==");
    return a.c_ == b.c_;
}

Val ExtElem::valuation() const {
    if (!ring_->irreducible()) throw domain_error("valuation undefined");
    const auto& zr = *ring_->base();
    const int N = zr.precision();
    if (ring_->kind() == ExtRing::Kind::Quadratic) {
        int vc = zr.val(ring_->quad_c());
        int va = zr.val(c_[0]);
        int vb = zr.val(c_[1]);
        if (vc % 2 == 1) {
            // ramified: v = min(v(a), v(b) + vc/2) in (1/2)Z
            long na = 2L * va, nb = 2L * vb + vc;
            bool ca = va >= N, cb = vb >= N;
            if (ca && cb) return Val::floor(N);
            if (!ca && (cb || na < nb)) return Val::exact(na, 2);
            if (!cb && (ca || nb < na)) return Val::exact(nb, 2);
            return Val::exact(std::min(na, nb), 2);
        }
        // unramified: coordinates (a, b p^(vc/2)) in an integral basis
        bool ca = va >= N, cb = vb >= N;
        long nb = vb + vc / 2;
        if (ca && cb) return Val::floor(N);
        if (ca) return Val::exact(nb);
        if (cb) return Val::exact(va);
        return Val::exact(std::min(long(va), nb));
    }
    // totally ramified cyclotomic: Newton read-off in the (x-1)-basis
    const int d = ring_->degree();
    bool any = false;
    long bestnum = 0;
    for (int t = 0; t < d; ++t) {
        mpz_class bt = 0;
        for (int i = t; i < d; ++i)
            if (c_[size_t(i)] != 0) bt += binom_exact(i, (unsigned long)t) * c_[size_t(i)];
        bt = zr.reduce(bt);
        if (bt == 0) continue;
        long num = long(zr.val(bt)) * d + t;
        if (!any || num < bestnum) {
            bestnum = num;
            any = true;
        }
    }
    if (!any) return Val::floor(N);
    long g = std::gcd(bestnum, long(d));
    return Val::exact(bestnum / g, d / g);
}

mpz_class ExtElem::trace() const {
    if (ring_->kind() != ExtRing::Kind::CycloPPower)
        throw domain_error("trace implemented for cyclotomic rings only");
    // Tr(zeta^i) with zeta of order p^r: phi(p^r) if i=0; -p^(r-1) if
    // p^(r-1) || i; 0 otherwise (for 0 < i < d all i are < p^r).
    const auto& zr = *ring_->base();
    long p = long(zr.p());
    long d = ring_->degree();
    long pr1 = d / (p - 1);
    mpz_class t = 0;
    for (long i = 0; i < d; ++i) {
        if (c_[size_t(i)] == 0) continue;
        if (i == 0)
            t += c_[0] * d;
        else if (i % pr1 == 0)
            t -= c_[size_t(i)] * pr1;
    }
    return zr.reduce(t);
}

std::string ExtElem::str() const {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < c_.size(); ++i) {
        if (i) os << ", ";
        os << c_[i].get_str();
    }
    os << "]";
    return os.str();
}

}  // namespace padicfe
