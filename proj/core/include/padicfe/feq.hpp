#pragma once

#include "padicfe/dirichlet.hpp"
#include "padicfe/ext.hpp"
#include "padicfe/report.hpp"

#include <map>

namespace padicfe {

/// Formal unit product: exact rational (p-unit) times an explicit power of
/// p times an exact cyclotomic factor times formal unimodular markers with
/// integer exponents.  Identities must close with all marker exponents zero;
/// transcendental factors are carried as the marker "two-pi".
class SymbolicUnit {
  public:
    SymbolicUnit();
    static SymbolicUnit from_rational(const mpq_class& q, unsigned long p);
    static SymbolicUnit from_cyc(CycExact c);
    static SymbolicUnit marker(const std::string& name, long expo = 1);
    static SymbolicUnit p_power(long e);

    SymbolicUnit operator*(const SymbolicUnit& o) const;
    SymbolicUnit operator/(const SymbolicUnit& o) const;
    SymbolicUnit pow(long e) const;

    const mpq_class& rational_part() const { return rat_; }
    long p_exponent() const { return p_exp_; }
    const CycExact& cyc_part() const { return cyc_; }
    const std::map<std::string, long>& markers() const { return sym_; }
    long marker_exponent(const std::string& name) const;
    bool markers_empty() const;

    /// replace a marker by a concrete factor (marker exponent folds in)
    SymbolicUnit resolve(const std::string& name, const SymbolicUnit& value) const;
    /// drop a marker whose even powers are declared trivial (unimodular
    /// conjugate-pair rules); throws if the exponent is odd
    SymbolicUnit cancel_even_marker(const std::string& name) const;

    /// p-adic image of the numeric part (rational and cyclotomic factors),
    /// requiring marker-freeness; p_exponent must be zero
    ExtElem embed(const ExtRingPtr& ring) const;

    bool is_one() const;
    std::string str() const;

  private:
    mpq_class rat_;
    long p_exp_ = 0;
    CycExact cyc_;
    std::map<std::string, long> sym_;
    unsigned long p_ = 0;
    void split_p(unsigned long p);
};

/// Parameters of the two-weight interpolation setting: weights (k, kappa),
/// type integers (a, b), coprime levels, the wild Dirichlet character mu of
/// conductor p^r, the nebentype data, and a synthetic U_p eigenvalue.
struct RankinParams {
    long k = 2;
    long kappa = 2;
    long a = 0;
    long b = 0;
    long Nf = 1;
    long Nchi = 1;
    unsigned long p = 5;
    int r = 1;
    DirichletCharacter mu = DirichletCharacter::trivial(1);
    DirichletCharacter theta_chi_psi = DirichletCharacter::trivial(1);  // prime-to-p nebentype
    ZpRingPtr zp;
    mpz_class alpha;  // ordinary synthetic U_p eigenvalue (unit)

    void validate() const;
    /// dual tuple: evaluation point exchanged, (a,b) -> (k-kappa-b, k-kappa-a),
    /// mu inverted, nebentype inverted
    RankinParams dual() const;
};

/// Global root number  (Nf N)^(-2s+kappa+b-a) theta(-1) eps_h(N)
/// conj(theta)(Nf) lambda_h^2 lambda_g^2  as a symbolic product; s in (1/2)Z.
SymbolicUnit root_number_W(const RankinParams& P, const mpq_class& s);

/// Right-hand side of the completed-ratio identity at the near-central
/// point: level power, nebentype values, Atkin-Lehner markers, the (2 pi)
/// marker and the exact factorial quotient.
SymbolicUnit ratio_rhs(const RankinParams& P);

/// The two interpolation-factor values  G(mu)^2 (p^(a+b+k-2)/alpha^2)^r  and
/// G(conj mu)^2 (p^(2 kappa-k-a-b-2)/alpha^2)^r, embedded p-adically.
struct EpsilonFactors {
    ExtElem direct;
    ExtElem dual;
    long vp_direct_num;  // p-exponent of the numerator power
    long vp_dual_num;
};
EpsilonFactors epsilon_factors(const RankinParams& P, const ExtRingPtr& ring);

/// Symbolic ratio of the two interpolation factors (exact route: cyclotomic
/// Gauss quotient and p-powers; the alpha markers cancel).
SymbolicUnit epsilon_ratio_symbolic(const RankinParams& P);

/// The interpolation constant: (-Nf Nchi)^(-a-b) (G(mu)^2/G(conj mu)^2)
/// theta^(-1)(-Nf) mu^2(Nf) lambda_f^2 lambda_g^2, markers kept formal.
SymbolicUnit gf_value(const RankinParams& P);

/// Assemble the ratio of the two interpolation formulas through the
/// completed-ratio rewrite and check it equals gf * <Nf^2 Nchi>^(kappa-k)
/// exactly: the (2 pi) markers and the Atkin-Lehner markers must cancel
/// (lambda_h^2 resolves to <Nf>^kappa, lambda_f^2 to <Nf>^k), the p-powers
/// must vanish, and the numeric parts must agree mod p^N.
SuiteReport verify_interpolation_chain(const RankinParams& P);

/// Exponent bookkeeping of the evaluation-point exchange s -> kappa+b-a-s.
SuiteReport center_shift_check(const RankinParams& P);

/// gf(P) * gf(P.dual()): at anticyclotomic self-dual tuples the product
/// reduces to a root of unity after the unimodular-pair cancellations.
CheckResult gf_product_duality(const RankinParams& P);

}  // namespace padicfe
