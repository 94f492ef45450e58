#pragma once

#include "padicfe/ext.hpp"

#include <gmpxx.h>

#include <vector>

namespace padicfe {

/// Exact element of Q(zeta_m), stored as a polynomial of degree < phi(m) in
/// zeta_m with rational coefficients, canonically reduced mod Phi_m.  No
/// rounding anywhere; complex conjugation is zeta -> zeta^(m-1).
class CycExact {
  public:
    explicit CycExact(long m);                              // zero of Q(zeta_m)
    CycExact(long m, std::vector<mpq_class> coeffs);        // reduced mod Phi_m
    static CycExact rational(long m, const mpq_class& a);
    static CycExact root_of_unity(long m, long expo);       // zeta_m^expo

    long order() const { return m_; }
    const std::vector<mpq_class>& coeffs() const { return c_; }
    bool is_zero() const;
    bool is_rational() const;
    mpq_class rational_part() const;  // requires is_rational()

    /// Rewrite in Q(zeta_mm) for m | mm.
    CycExact lift_to(long mm) const;

    friend CycExact operator+(const CycExact& a, const CycExact& b);
    friend CycExact operator-(const CycExact& a, const CycExact& b);
    friend CycExact operator*(const CycExact& a, const CycExact& b);
    CycExact operator-() const;
    CycExact conj() const;
    CycExact inverse() const;
    CycExact pow(long e) const;

    friend bool operator==(const CycExact& a, const CycExact& b);
    friend bool operator!=(const CycExact& a, const CycExact& b) { return !(a == b); }

    /// True when this is a root of unity (x^m == 1).
    bool is_root_of_unity() const;

    std::string str() const;

  private:
    long m_;
    std::vector<mpq_class> c_;
};

/// The m-th cyclotomic polynomial over Z (cached), coefficient of x^i at i.
const std::vector<mpz_class>& cyclotomic_polynomial(long m);

long euler_phi(long m);

/// Embedding iota_p of Q(zeta_m) into a p-adic coefficient ring, for
/// m | p^r (p-1): the prime-to-p part goes through the Teichmueller lift of
/// the fixed smallest primitive root, the p-part through the Phi_{p^r} class
/// of x.  Throws domain_error("embedding not available") otherwise.
ExtElem embed_exact(const CycExact& x, const ExtRingPtr& target);

/// Same embedding when m is prime to p, landing in the base ring.
mpz_class embed_exact_base(const CycExact& x, const ZpRing& target);

}  // namespace padicfe
