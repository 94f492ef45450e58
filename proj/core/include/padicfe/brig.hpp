#pragma once

#include "padicfe/iwasawa.hpp"

namespace padicfe {

struct mellin_image_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Truncated model of the convergent power series ring in pi: coefficients
/// in Z/p^N, reduced mod (p^N, pi^Mpi), with a global p-power shift.
class BrigSeries {
  public:
    BrigSeries(ZpRingPtr ring, int Mpi, long shift, std::vector<mpz_class> coeffs);
    static BrigSeries zero(ZpRingPtr ring, int Mpi);
    static BrigSeries one(ZpRingPtr ring, int Mpi);
    static BrigSeries pi(ZpRingPtr ring, int Mpi);
    /// (1 + pi)^c by exact p-adic binomials, any integer c.
    static BrigSeries one_plus_pi_pow(ZpRingPtr ring, int Mpi, const mpz_class& c);

    const ZpRingPtr& ring() const { return ring_; }
    int trunc() const { return Mpi_; }
    long shift() const { return shift_; }
    const std::vector<mpz_class>& coeffs() const { return c_; }
    const mpz_class& coeff(int i) const { return c_[size_t(i)]; }
    bool is_zero() const;

    friend BrigSeries operator+(const BrigSeries& a, const BrigSeries& b);
    friend BrigSeries operator-(const BrigSeries& a, const BrigSeries& b);
    friend BrigSeries operator*(const BrigSeries& a, const BrigSeries& b);
    BrigSeries operator-() const;
    BrigSeries scale(const mpz_class& s) const;
    BrigSeries with_shift(long e) const;
    /// multiplicative inverse of a series with unit constant term
    BrigSeries invert_unit() const;

    friend bool operator==(const BrigSeries& a, const BrigSeries& b);

  private:
    ZpRingPtr ring_;
    int Mpi_;
    long shift_;
    std::vector<mpz_class> c_;
};

/// phi: pi -> (1+pi)^p - 1 (Q_p-linear ring map raising degrees by p).
BrigSeries frobenius(const BrigSeries& f);

/// Galois action gamma . pi = (1+pi)^c - 1 for the cyclotomic-character
/// value c of gamma; a ring homomorphism, multiplicative in c.
BrigSeries gamma_action(const BrigSeries& f, const mpz_class& c);

/// Left inverse psi of phi, realized by the averaged trace
///   psi(f)(phi(pi)) = (1/p) sum_{zeta^p = 1} f(zeta(1+pi) - 1)
/// over exact p-th roots of unity, followed by canonical descent along phi.
/// psi(phi(f)) = f exactly; psi((1+pi)^j) = (1+pi)^(j/p) if p | j else 0,
/// where for non-polynomial inputs the truncated tail perturbs the output
/// coefficient of pi^s at valuation >= (Mpi - p s)/(p-1).
BrigSeries psi(const BrigSeries& f);

/// q = phi(pi)/pi (exact polynomial division) and the unit
/// delta = p/(q - pi^(p-1)), with delta (q - pi^(p-1)) = p exactly.
std::pair<BrigSeries, BrigSeries> q_delta(const ZpRingPtr& ring, int Mpi);

/// The operator (1+pi) d/dpi; realizes the weight twist through the
/// Mellin transform: mellin(Tw_1 f) = dee(mellin(f)).
BrigSeries dee(const BrigSeries& f);

/// Lambda-linear Mellin transform, 1 -> 1+pi; group-likes gamma0^c map to
/// (1+pi)^(u^c).
BrigSeries mellin(const IwaSeries& f, int Mpi);

struct MellinInverse {
    IwaSeries series;
    long delta_audit;   // max p-valuation divided out while solving
    long delta_bound;   // the a-priori bound M(M-1)/2
    int residual_floor; // weakest valuation guarantee enforced on residual
};

/// Inverse of the Mellin transform at truncation: solves for the unique
/// length-M series whose transform matches F in pi-degrees < M, by exact
/// Newton/Lagrange interpolation at the points u^j.  `exact_image` declares
/// that F is the transform of a length-M series on the nose (no tail), in
/// which case the residual must vanish to full working precision.
/// Throws mellin_image_error when the residual exceeds the tolerance.
MellinInverse mellin_inverse(const BrigSeries& F, int M, bool exact_image = false);

/// Signed half-logarithm data computed through the pi-side product
///   (1/p) prod_{n<=n_max} phi^(2n)(q) / (p phi^(2n+1)(delta))      (+ sign)
///   (1/p) prod_{n<=n_max} phi^(2n-1)(q) / (p phi^(2n)(delta))      (- sign)
/// raised to the (k-1)-st power, multiplied by (1+pi), pulled back through
/// mellin_inverse.  `tw` applies Tw_{k/2-1} upstairs via dee, keeping both
/// sides of downstream identities at matched cutoffs.
struct LogTilde {
    IwaSeries series;     // shift (k-1)(n_max+1)
    long solver_loss;     // precision consumed by the padded solve
};
LogTilde log_tilde(const ZpRingPtr& ring, int M, Sign sign, int k, int n_max, bool tw = false);

/// Comparison unit v = Tw log-tilde / Tw log (pointwise series division),
/// the unit u-tilde = (v^tau / v) u^pm, and the assembled checks:
/// membership in 1 + pZp + (gamma0-1)*(integral) and the tau functional
/// equation (Tw log-tilde)^tau = u-tilde * (Tw log-tilde).
struct TildeUnits {
    IwaSeries u_tilde;
    IwaSeries v;
    CheckResult membership;
    CheckResult fe_cross;
};
TildeUnits tilde_units(const ZpRingPtr& ring, int M, Sign sign, int k, int n_max);

/// Legendre formula: v_p(n!).
long vp_factorial(unsigned long n, unsigned long p);

}  // namespace padicfe
