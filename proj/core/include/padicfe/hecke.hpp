#pragma once

#include "padicfe/dirichlet.hpp"
#include "padicfe/quadfield.hpp"

namespace padicfe {

/// Element of K(zeta_m): polynomial in zeta_m with coefficients r + s*omega,
/// r, s exact rationals, reduced mod Phi_m.  Hosts theta-series coefficients
/// and Hecke-character values.
class KCyc {
  public:
    KCyc(const ImagQuadField* K, long m);
    KCyc(const ImagQuadField* K, long m, std::vector<std::pair<mpq_class, mpq_class>> poly);
    static KCyc rational(const ImagQuadField* K, const mpq_class& r);
    static KCyc from_k(const ImagQuadField* K, const mpq_class& r, const mpq_class& s);
    static KCyc root_of_unity(const ImagQuadField* K, long m, long expo);

    const ImagQuadField* field() const { return K_; }
    long order() const { return m_; }
    bool is_zero() const;
    const std::vector<std::pair<mpq_class, mpq_class>>& coeffs() const { return c_; }

    KCyc lift_to(long mm) const;
    friend KCyc operator+(const KCyc& x, const KCyc& y);
    friend KCyc operator-(const KCyc& x, const KCyc& y);
    friend KCyc operator*(const KCyc& x, const KCyc& y);
    KCyc operator-() const;
    /// full complex conjugation: zeta -> zeta^(-1) and omega -> conj(omega)
    KCyc conj() const;
    KCyc inverse() const;
    KCyc pow(long e) const;
    friend bool operator==(const KCyc& x, const KCyc& y);
    friend bool operator!=(const KCyc& x, const KCyc& y) { return !(x == y); }

    std::string str() const;

  private:
    const ImagQuadField* K_;
    long m_;
    std::vector<std::pair<mpq_class, mpq_class>> c_;
    void reduce(std::vector<std::pair<mpq_class, mpq_class>> poly);
};

KCyc kcyc_from_cyc(const ImagQuadField* K, const CycExact& x);
KCyc kcyc_from_kelem(const ImagQuadField* K, const KElem& z);

/// Hecke character of K with infinity-type (a, b) under the convention
///   value((alpha)) = eps(alpha) * alpha^(-a) * conj(alpha)^(-b),
/// finite part eps(alpha) = nu(N alpha) * eta1(alpha mod pfrak^*) *
/// eta2(alpha mod conj(pfrak)^*), where nu is a Dirichlet character and
/// eta1/eta2 are Dirichlet characters of p-power modulus read through the
/// canonical identifications of the local units at the two primes above p.
/// The convention makes infinity-type (-u, 0) give a weight u+1 theta
/// series (validated by the Hecke-recursion weight check downstream).
class HeckeCharacter {
  public:
    HeckeCharacter(const ImagQuadField* K, long a, long b, DirichletCharacter nu,
                   DirichletCharacter eta1, DirichletCharacter eta2);
    static HeckeCharacter unramified(const ImagQuadField* K, long u);  // type (-u, 0)
    static HeckeCharacter trivial(const ImagQuadField* K);

    const ImagQuadField* field() const { return K_; }
    long type_a() const { return a_; }
    long type_b() const { return b_; }
    const DirichletCharacter& nu() const { return nu_; }
    const DirichletCharacter& eta1() const { return eta1_; }
    const DirichletCharacter& eta2() const { return eta2_; }

    /// finite part on a generator (root of unity in K(zeta))
    KCyc eps(const KElem& alpha) const;
    /// value on the principal ideal generated by alpha (generator-independent)
    KCyc value(const KElem& alpha) const;
    /// rational modulus whose ideal (m0) is divisible by the conductor
    long finite_modulus() const;
    /// true when the ideal (alpha) meets the support of the finite part
    bool shares_conductor(const KElem& alpha) const;

    HeckeCharacter mul(const HeckeCharacter& o) const;
    HeckeCharacter inverse() const;

    friend bool operator==(const HeckeCharacter& x, const HeckeCharacter& y);

  private:
    const ImagQuadField* K_;
    long a_, b_;
    DirichletCharacter nu_, eta1_, eta2_;
};

struct factorization_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// The canonical factorization Xi = rho(Xi) |.|^b (mu o Norm) with rho
/// unramified at conj(pfrak) and of type (a-b, 0).
struct CharFactorization {
    HeckeCharacter rho;
    long b;
    DirichletCharacter mu;
};
CharFactorization factor_character(const HeckeCharacter& xi);

/// Dual character: value(ideal) = xi(conj ideal)^(-1); type (a,b) -> (-b,-a).
HeckeCharacter dual(const HeckeCharacter& xi);

/// The two-sided pro-p rigidity conditions evaluated on the tame generators:
/// (A) at pfrak with exponent a, (B) at conj(pfrak) with exponent b; both
/// reduce to the tame part of the local avatar component being trivial.
struct Sigma1Check {
    bool cond_a;
    bool cond_b;
    bool in_admissible_class;  // eta components of p-power order
    bool equivalent;           // cond_a == cond_b
};
Sigma1Check check_sigma1(const HeckeCharacter& xi);

/// eta_Xi, N_Xi, theta_Xi from the unramified-at-conj(pfrak) component.
struct EtaLevel {
    DirichletCharacter eta;    // eta_Xi(n) = rho((n)) n^(a-b)
    long level;                // |disc| * Norm of the conductor of rho
    DirichletCharacter theta;  // eta_Xi * eps_K
};
EtaLevel eta_and_level(const HeckeCharacter& xi_rho);

/// Quadratic Dirichlet character attached to K (Kronecker symbol of disc).
DirichletCharacter eps_K_char(const ImagQuadField& K);

/// Interlacing approximants: given p-adic (a, b) and level n, integer
/// representatives a_n, b_n produce (a_n - p^(r_n), b_n + p^(r_n)) with
/// r_n = n(|a_n - b_n| + 1); the gap is positive and both ends converge.
struct DenseApprox {
    mpz_class lo, hi;
    long r_n;
};
DenseApprox dense_approx(const Padic& a, const Padic& b, int n);

/// Corollary-style avatar decomposition (eta, a, b, nu); when the character
/// factors through the product of the two pro-p ray class groups the
/// alternative two-sided form (eta1, eta2, a, b) is also populated.
struct AvatarForm {
    DirichletCharacter eta;  // pfrak-power conductor component
    long a, b;
    DirichletCharacter nu;  // Dirichlet component
    bool two_sided;
    DirichletCharacter eta1, eta2;
};
AvatarForm avatar_form(const HeckeCharacter& xi);

}  // namespace padicfe
