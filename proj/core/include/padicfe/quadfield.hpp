#pragma once

#include "padicfe/cyclotomic.hpp"

#include <vector>

namespace padicfe {

class ImagQuadField;

/// Exact element a + b*omega of O_K (or of K when used with rationals).
struct KElem {
    mpz_class a, b;
    friend bool operator==(const KElem& x, const KElem& y) { return x.a == y.a && x.b == y.b; }
};

/// Imaginary quadratic field K = Q(sqrt(-D)) of class number one, with
/// omega = (1+sqrt(-D))/2 when -D = 1 mod 4 and omega = sqrt(-D) otherwise.
/// Carries a fixed split prime p with a chosen square root s of -D mod p^N,
/// selecting the prime pfrak above p (the one where omega reduces via s).
class ImagQuadField {
  public:
    ImagQuadField(long D, unsigned long p, int N);

    long D() const { return D_; }
    long discriminant() const { return disc_; }
    bool half_integral() const { return half_; }  // omega = (1+sqrt(-D))/2
    long class_number() const { return 1; }
    long unit_count() const { return w_; }
    unsigned long p() const { return p_; }
    const ZpRingPtr& zp() const { return zp_; }
    /// chosen root of x^2 = -D mod p^N
    const mpz_class& root() const { return s_; }
    /// image of omega in O/pfrak^N = Z/p^N and in the conjugate
    const mpz_class& omega_mod_p() const { return om_p_; }
    const mpz_class& omega_mod_pbar() const { return om_pc_; }

    // O_K arithmetic
    KElem mul(const KElem& x, const KElem& y) const;
    KElem conj(const KElem& x) const;
    KElem pow(const KElem& x, long e) const;
    mpz_class norm(const KElem& x) const;
    mpz_class trace(const KElem& x) const;
    /// divisibility of x by y in O_K; quotient when divisible
    bool divides(const KElem& y, const KElem& x, KElem* quotient = nullptr) const;

    /// canonical generator among associates (unit multiples)
    KElem canonical(const KElem& x) const;
    std::vector<KElem> units() const;

    /// all nonzero integral ideals of norm <= B as canonical generators,
    /// sorted by (norm, a, b); each ideal appears exactly once
    std::vector<std::pair<KElem, long>> ideals_up_to(long B) const;

    /// a generator of the chosen prime pfrak above p (canonical form)
    KElem pfrak_gen() const { return pi_; }
    KElem pfrak_bar_gen() const { return canonical(conj(pi_)); }

    /// reduction O_K -> Z/p^r along pfrak (omega -> om_p) or its conjugate
    mpz_class reduce_mod_pfrak(const KElem& x, long r) const;
    mpz_class reduce_mod_pfrak_bar(const KElem& x, long r) const;

    /// Kronecker symbol (disc / n), the quadratic character attached to K
    long eps_K(long n) const;

  private:
    long D_;
    long disc_;
    bool half_;
    long w_;
    unsigned long p_;
    ZpRingPtr zp_;
    mpz_class s_;      // sqrt(-D) mod p^N
    mpz_class om_p_;   // omega mod pfrak^N
    mpz_class om_pc_;  // omega mod conj(pfrak)^N
    KElem pi_;         // generator of pfrak
    long count_reduced_forms() const;
};

long kronecker_symbol(long a, long n);

}  // namespace padicfe
