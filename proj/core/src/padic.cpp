#include "padicfe/padic.hpp"

#include <sstream>

namespace padicfe {

std::string Val::str() const {
    std::ostringstream os;
    if (at_least) os << ">=";
    os << num;
    if (den != 1) os << "/" << den;
    return os.str();
}

namespace {

bool is_prime_ul(unsigned long n) {
    if (n < 2) return false;
    for (unsigned long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

unsigned long smallest_primitive_root(unsigned long p) {
    // order of g in (Z/p)^x must be p-1
    for (unsigned long g = 2; g < p; ++g) {
        bool ok = true;
        for (unsigned long q = 2; q <= p - 2; ++q) {
            if ((p - 1) % q == 0 && is_prime_ul(q)) {
                mpz_class t;
                mpz_powm_ui(t.get_mpz_t(), mpz_class(g).get_mpz_t(), (p - 1) / q,
                            mpz_class(p).get_mpz_t());
                if (t == 1) {
                    ok = false;
                    break;
                }
            }
        }
        if (ok) return g;
    }
    throw domain_error("no primitive root (p not prime?)");
}

}  // namespace

ZpRing::ZpRing(unsigned long p, int N) : p_(p), N_(N) {
    if (!is_prime_ul(p) || p < 3) throw domain_error("p must be an odd prime");
    if (N < 1) throw domain_error("precision exponent must be positive");
    mpz_ui_pow_ui(pN_.get_mpz_t(), p, N);
    g_ = smallest_primitive_root(p);
}

ZpRingPtr make_zp_ring(unsigned long p, int N) {
    return std::make_shared<const ZpRing>(p, N);
}

mpz_class ZpRing::reduce(const mpz_class& x) const {
    mpz_class r;
    mpz_mod(r.get_mpz_t(), x.get_mpz_t(), pN_.get_mpz_t());
    return r;
}

int ZpRing::val(const mpz_class& r) const {
    if (r == 0) return N_;
    mpz_class x = r;
    int v = 0;
    while (v < N_ && mpz_divisible_ui_p(x.get_mpz_t(), p_)) {
        mpz_divexact_ui(x.get_mpz_t(), x.get_mpz_t(), p_);
        ++v;
    }
    return v;
}

mpz_class ZpRing::add(const mpz_class& a, const mpz_class& b) const {
    return reduce(a + b);
}
mpz_class ZpRing::sub(const mpz_class& a, const mpz_class& b) const {
    return reduce(a - b);
}
mpz_class ZpRing::mul(const mpz_class& a, const mpz_class& b) const {
    return reduce(a * b);
}

mpz_class ZpRing::inv(const mpz_class& a) const {
    mpz_class r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), pN_.get_mpz_t()) == 0)
        throw not_invertible("not invertible at this precision");
    return r;
}

mpz_class ZpRing::divexact_p(const mpz_class& a, int k) const {
    if (k == 0) return reduce(a);
    mpz_class pk;
    mpz_ui_pow_ui(pk.get_mpz_t(), p_, k);
    if (!mpz_divisible_p(a.get_mpz_t(), pk.get_mpz_t()))
        throw domain_error("exact division by p-power fails");
    mpz_class r;
    mpz_divexact(r.get_mpz_t(), a.get_mpz_t(), pk.get_mpz_t());
    return reduce(r);
}

mpz_class ZpRing::pow(const mpz_class& a, const mpz_class& e) const {
    if (e >= 0) {
        mpz_class r;
        mpz_powm(r.get_mpz_t(), a.get_mpz_t(), e.get_mpz_t(), pN_.get_mpz_t());
        return r;
    }
    mpz_class ia = inv(a);
    mpz_class me = -e;
    mpz_class r;
    mpz_powm(r.get_mpz_t(), ia.get_mpz_t(), me.get_mpz_t(), pN_.get_mpz_t());
    return r;
}

mpz_class ZpRing::teichmuller(const mpz_class& seed) const {
    mpz_class a = reduce(seed);
    if (mpz_divisible_ui_p(a.get_mpz_t(), p_))
        throw domain_error("teichmuller seed must be a unit");
    // iterate a <- a^p; stabilizes after N steps
    for (int i = 0; i < N_; ++i) {
        mpz_powm_ui(a.get_mpz_t(), a.get_mpz_t(), p_, pN_.get_mpz_t());
    }
    return a;
}

mpz_class ZpRing::one_unit_part(const mpz_class& x) const {
    return mul(x, inv(teichmuller(x)));
}

void check_same_ring(const ZpRing& a, const ZpRing& b, const char* where) {
    if (!a.same(b))
        throw ring_mismatch(std::string(where) + ": mixed-precision or mixed-prime operands");
}

Val Padic::valuation() const {
    int v = ring_->val(r_);
    if (v >= ring_->precision()) return Val::floor(ring_->precision());
    return Val::exact(v);
}

Padic operator+(const Padic& a, const Padic& b) {
    check_same_ring(*a.ring_, *b.ring_, "Padic+");
    return Padic(a.ring_, a.ring_->add(a.r_, b.r_));
}
Padic operator-(const Padic& a, const Padic& b) {
    check_same_ring(*a.ring_, *b.ring_, "Padic-");
    return Padic(a.ring_, a.ring_->sub(a.r_, b.r_));
}
Padic operator*(const Padic& a, const Padic& b) {
    check_same_ring(*a.ring_, *b.ring_, "Padic*");
    return Padic(a.ring_, a.ring_->mul(a.r_, b.r_));
}
Padic Padic::inverse() const { return Padic(ring_, ring_->inv(r_)); }

mpz_class binom_exact(const mpz_class& c, unsigned long k) {
    mpz_class num = 1;
    for (unsigned long t = 0; t < k; ++t) num *= (c - t);
    mpz_class d = factorial_exact(k);
    mpz_class r;
    mpz_divexact(r.get_mpz_t(), num.get_mpz_t(), d.get_mpz_t());
    return r;
}

mpz_class factorial_exact(unsigned long n) {
    mpz_class r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

long vp_long(const mpz_class& x, unsigned long p) {
    if (x == 0) throw domain_error("vp of zero");
    mpz_class t = x;
    long v = 0;
    while (mpz_divisible_ui_p(t.get_mpz_t(), p)) {
        mpz_divexact_ui(t.get_mpz_t(), t.get_mpz_t(), p);
        ++v;
    }
    return v;
}

}  // namespace padicfe
