#pragma once

#include "padicfe/hecke.hpp"
#include "padicfe/report.hpp"

namespace padicfe {

/// Finite q-expansion with exact coefficients in K(zeta), 1-indexed up to B,
/// plus eigenform metadata.
struct QExpansion {
    const ImagQuadField* K = nullptr;
    long B = 0;
    std::vector<KCyc> a;  // a[n] for 1 <= n <= B; a[0] unused
    long weight = 0;
    long level = 0;
    DirichletCharacter nebentype = DirichletCharacter::trivial(1);

    const KCyc& coeff(long n) const { return a[size_t(n)]; }
};

/// All nonzero integral ideals of norm <= B (canonical generators, each
/// ideal exactly once, sorted by norm).
std::vector<std::pair<KElem, long>> enumerate_ideals(const ImagQuadField& K, long B);

/// Theta series of a character of type (-u, 0): a_n = sum over ideals of
/// norm n coprime to the conductor of the finite part.  Characters of other
/// shapes are rejected; factor first and route through the unramified
/// component.
QExpansion theta(const HeckeCharacter& xi, long B);

/// Ordinary variant: the sum is additionally restricted to ideals coprime
/// to pfrak, applied to the unramified-at-conj(pfrak) component rho(xi).
QExpansion theta_ord(const HeckeCharacter& xi, long B);

/// Zero out all a_n with p | n.
QExpansion p_deplete(const QExpansion& f);

/// Coefficientwise twist a_n -> nu(n) a_n; level and nebentype follow the
/// stated-level bookkeeping (conductor^2 into the level, nu^2 into the
/// nebentype).
QExpansion twist_form(const QExpansion& f, const DirichletCharacter& nu);

/// Complex conjugation of all coefficients.
QExpansion conj_form(const QExpansion& f);

/// Eigenform certification: multiplicativity over coprime indices and the
/// prime-power recursion with the recorded weight and nebentype.
SuiteReport hecke_check(const QExpansion& f);

/// The depleted-theta duality chain: the twisted depletion attached to the
/// dual character equals the conjugated twisted depletion of the original,
/// including the re-indexing middle step (conjugation bijection on ideals)
/// and the identification mu_dual = mu^(-1).
SuiteReport verify_duality(const HeckeCharacter& xi, long B);

/// Demi-crystalline twisted duality: newform-level and stabilized-level
/// comparisons against the inverse-nebentype twist (coefficients compared
/// away from the level and away from p as appropriate), plus the three-step
/// U_p eigenvalue chain checked step by step.
SuiteReport verify_twisted_duality(const HeckeCharacter& xi, long B);

/// a_n(theta_ord) = a_n(theta) - xi(pfrak) a_{n/p}(theta), exactly.
CheckResult verify_stabilization(const HeckeCharacter& xi, long B);

/// TSV export, one line per coefficient: "n<TAB>coefficient".
std::string qexpansion_tsv(const QExpansion& f);

}  // namespace padicfe
