#pragma once

#include "padicfe/ext.hpp"
#include "padicfe/report.hpp"

#include <optional>
#include <vector>

namespace padicfe {

/// Truncated one-variable Iwasawa-algebra element: p^(-shift) * sum c_i T^i
/// mod (p^N, T^M), T = gamma0 - 1, with a global p-power denominator shift.
/// shift = 0 iff the element is declared integral.  The cyclotomic-character
/// value of gamma0 is fixed to u = 1 + p throughout the workbench.
class IwaSeries {
  public:
    IwaSeries(ZpRingPtr ring, int M, long shift, std::vector<mpz_class> coeffs);
    static IwaSeries zero(ZpRingPtr ring, int M);
    static IwaSeries one(ZpRingPtr ring, int M);
    static IwaSeries tee(ZpRingPtr ring, int M);        // the variable T
    static IwaSeries constant(ZpRingPtr ring, int M, const mpz_class& a);

    const ZpRingPtr& ring() const { return ring_; }
    int trunc() const { return M_; }
    long shift() const { return shift_; }
    const std::vector<mpz_class>& coeffs() const { return c_; }
    const mpz_class& coeff(int i) const { return c_[size_t(i)]; }
    bool is_zero() const;

    friend IwaSeries operator+(const IwaSeries& a, const IwaSeries& b);
    friend IwaSeries operator-(const IwaSeries& a, const IwaSeries& b);
    friend IwaSeries operator*(const IwaSeries& a, const IwaSeries& b);
    IwaSeries operator-() const;
    IwaSeries scale(const mpz_class& s) const;
    IwaSeries with_shift(long e) const;  // multiply by p^(e - shift) formally
    /// numerator divided by p^k exactly (throws if not divisible)
    IwaSeries reduce_shift(long k) const;
    /// re-truncate to a smaller M
    IwaSeries truncate(int M) const;
    /// map into a ring of lower precision (same p)
    IwaSeries lower_precision(const ZpRingPtr& target) const;

    std::string str(int max_terms = 8) const;

  private:
    ZpRingPtr ring_;
    int M_;
    long shift_;
    std::vector<mpz_class> c_;
};

/// Series equality at aligned shifts; effective exponent is N - max(shifts).
struct SeriesEq {
    bool equal;
    int effective_precision;
    int first_diff = -1;
};
SeriesEq series_equal(const IwaSeries& a, const IwaSeries& b);

/// Graded equality modulo the ideal (p^N, (p,T)^M): coefficient of T^t is
/// compared mod p^(min(N, M-t) - shift alignment).  This is the equality
/// notion matching substitution maps whose image has a nonzero constant
/// term (twists), where tails T^M * R feed lower degrees with p-valuation
/// at least M - t.
SeriesEq series_equal_ideal(const IwaSeries& a, const IwaSeries& b);

/// gamma0^c as (1+T)^c with exact p-adic binomials; group_element(c1) *
/// group_element(c2) = group_element(c1+c2) mod (p^N, T^M).
IwaSeries group_element(const ZpRingPtr& ring, int M, const mpz_class& c);

/// u^j-scaled group element  s * (1+T)^c  with s = u^(j) handled exactly.
IwaSeries scaled_group_element(const ZpRingPtr& ring, int M, const mpz_class& c,
                               const mpz_class& u_exponent);

/// Tw_j: T -> u^j (1+T) - 1.  A ring automorphism; Tw_i Tw_j = Tw_{i+j}.
IwaSeries twist(const IwaSeries& f, long j);

/// tau: T -> (1+T)^{-1} - 1 (gamma0 -> gamma0^{-1}); an involution.
IwaSeries tau(const IwaSeries& f);

/// Phi_m(u^{-j} gamma0) where Phi_m(X) = sum_{i<p} X^{i p^(m-1)} is the
/// p^m-th cyclotomic polynomial in the group variable.
IwaSeries phi_cyclo(const ZpRingPtr& ring, int M, int m, long j);

/// Value of the cyclotomic character on gamma0 (u = 1+p, recorded choice).
mpz_class cyc_u(const ZpRing& ring);

enum class Sign { Plus, Minus };

/// Truncated signed logarithm: for each j in 0..k-2 the factor
/// (1/p) prod_{n<=n_max} Phi_{2n or 2n-1}(u^{-j} gamma0) / p;
/// shift = (k-1)(n_max+1), numerator the integral product of Phi-factors.
IwaSeries pollack_log(const ZpRingPtr& ring, int M, Sign sign, int k, int n_max);

/// Tw_{k/2-1} of the signed logarithm, built directly as the product over
/// the symmetric window j in [1-k/2, k/2-1] so that truncation cancels on
/// both sides of the involution identity (exact mod (p^N, T^M), unlike
/// twist() applied to an already-truncated series).
IwaSeries pollack_log_tw(const ZpRingPtr& ring, int M, Sign sign, int k, int n_max);

/// Truncated unit products  prod_{|j|<k/2} prod_{n<=n_max} (u^{-j}gamma0)^e(n),
/// e(n) = p^(2n-1)-p^(2n) for +, p^(2n-2)-p^(2n-1) for -.
IwaSeries u_plusminus(const ZpRingPtr& ring, int M, Sign sign, int k, int n_max);

/// Membership test in 1 + pZp + (gamma0 - 1) * (integral series).
bool one_unit_plus_T_integral(const IwaSeries& f);

/// The involution identity for a single cyclotomic factor:
///   tau(Phi_m(u^{-j} g0)) = (u^j g0)^(p^(m-1)-p^m) Phi_m(u^j g0)
/// checked exactly mod (p^N, T^M).
CheckResult verify_pollack_fe(const ZpRingPtr& ring, int M, int m, long j);

/// Evaluation at the character gamma0 -> u^j * zeta, zeta = class of x in a
/// cyclotomic ExtRing; value = p^(-shift) * num.
struct CharEval {
    ExtElem num;
    long shift;
};
CharEval eval_character(const IwaSeries& f, const ExtRingPtr& target, long j);

/// Series division num/den tolerating a non-unit leading coefficient of den
/// when divisibility holds coefficientwise; returns the quotient and the
/// total p-adic precision consumed by the cascaded exact divisions.
struct DivResult {
    IwaSeries q;
    long loss;
};
DivResult divide_series(const IwaSeries& num, const IwaSeries& den);

}  // namespace padicfe
