#pragma once

#include <gmpxx.h>

#include <memory>
#include <stdexcept>
#include <string>

namespace padicfe {

struct ring_mismatch : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct not_invertible : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct domain_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Exact rational valuation, with an "at least" flag for values the
/// truncation cannot distinguish from larger ones (residue == 0 mod p^N).
struct Val {
    long num = 0;
    long den = 1;
    bool at_least = false;

    static Val exact(long n, long d = 1) { return Val{n, d, false}; }
    static Val floor(long n, long d = 1) { return Val{n, d, true}; }

    bool is_integer() const { return num % den == 0; }
    double approx() const { return double(num) / double(den); }
    friend bool operator==(const Val& a, const Val& b) {
        return a.at_least == b.at_least && a.num * b.den == b.num * a.den;
    }
    std::string str() const;
};

/// The capped-precision coefficient ring Z/p^N, p >= 3 prime, N >= 1.
/// Residues are held as mpz_class in [0, p^N).  Precision belongs to the
/// ring, not to elements; operations across different rings are rejected.
class ZpRing {
  public:
    ZpRing(unsigned long p, int N);

    unsigned long p() const { return p_; }
    int precision() const { return N_; }
    const mpz_class& modulus() const { return pN_; }

    mpz_class reduce(const mpz_class& x) const;
    mpz_class reduce(long x) const { return reduce(mpz_class(x)); }

    /// v_p of a residue, in {0,...,N}; N means "residue is 0 mod p^N",
    /// indistinguishable from any valuation >= N.
    int val(const mpz_class& r) const;

    mpz_class add(const mpz_class& a, const mpz_class& b) const;
    mpz_class sub(const mpz_class& a, const mpz_class& b) const;
    mpz_class mul(const mpz_class& a, const mpz_class& b) const;
    /// Inverse of a unit residue; throws not_invertible otherwise.
    mpz_class inv(const mpz_class& a) const;
    /// a * p^-k for a divisible by p^k (exact); throws otherwise.
    mpz_class divexact_p(const mpz_class& a, int k) const;
    /// a^e for e >= 0, or unit a with any sign of e.
    mpz_class pow(const mpz_class& a, const mpz_class& e) const;

    /// Teichmueller representative: the unique (p-1)-st root of unity
    /// congruent to seed mod p (seed a unit).
    mpz_class teichmuller(const mpz_class& seed) const;
    /// The fixed smallest primitive root mod p (recorded in reports).
    unsigned long primitive_root() const { return g_; }
    /// Principal-unit part <x> = x / teichmuller(x) of a unit residue.
    mpz_class one_unit_part(const mpz_class& x) const;

    bool same(const ZpRing& other) const {
        return p_ == other.p_ && N_ == other.N_;
    }

  private:
    unsigned long p_;
    int N_;
    mpz_class pN_;
    unsigned long g_;
};

using ZpRingPtr = std::shared_ptr<const ZpRing>;

ZpRingPtr make_zp_ring(unsigned long p, int N);

/// A single capped-precision p-adic integer with its ring handle.
class Padic {
  public:
    Padic(ZpRingPtr ring, mpz_class residue)
        : ring_(std::move(ring)), r_(ring_->reduce(residue)) {}

    const ZpRingPtr& ring() const { return ring_; }
    const mpz_class& residue() const { return r_; }

    Val valuation() const;
    bool is_zero() const { return r_ == 0; }

    friend Padic operator+(const Padic& a, const Padic& b);
    friend Padic operator-(const Padic& a, const Padic& b);
    friend Padic operator*(const Padic& a, const Padic& b);
    Padic inverse() const;

    friend bool operator==(const Padic& a, const Padic& b) {
        return a.ring_->same(*b.ring_) && a.r_ == b.r_;
    }

  private:
    ZpRingPtr ring_;
    mpz_class r_;
};

void check_same_ring(const ZpRing& a, const ZpRing& b, const char* where);

/// Exact integer binomial binom(c, k) for arbitrary (possibly negative) c.
mpz_class binom_exact(const mpz_class& c, unsigned long k);

mpz_class factorial_exact(unsigned long n);

long vp_long(const mpz_class& x, unsigned long p);  // valuation of a nonzero integer

}  // namespace padicfe
