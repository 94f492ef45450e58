#pragma once

#include "padicfe/cyclotomic.hpp"

#include <vector>

namespace padicfe {

struct imprimitive_character : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Dirichlet character mod q with values in roots of unity of order n:
/// chi(a) = zeta_n^{expo[a]} on units, 0 elsewhere.  Exact throughout.
class DirichletCharacter {
  public:
    static DirichletCharacter trivial(long q = 1);
    /// Build from exponent table (expo[a] for units a, -1 for non-units).
    DirichletCharacter(long q, long order, std::vector<long> expo);

    long modulus() const { return q_; }
    long order() const { return n_; }

    bool is_unit_arg(long a) const;
    CycExact value(const mpz_class& a) const;       // in Q(zeta_n)
    long expo_at(const mpz_class& a) const;         // exponent of zeta_n; throws on non-unit
    bool is_trivial() const;
    long parity() const;                            // chi(-1) as +1 / -1

    long conductor() const;
    bool is_primitive() const { return conductor() == q_; }
    DirichletCharacter primitive_part() const;
    DirichletCharacter induced_mod(long qq) const;  // q | qq

    DirichletCharacter operator*(const DirichletCharacter& other) const;
    DirichletCharacter inverse() const;
    DirichletCharacter conj() const { return inverse(); }
    DirichletCharacter pow(long e) const;

    friend bool operator==(const DirichletCharacter& a, const DirichletCharacter& b);

    /// All characters mod q, deterministic order.
    static std::vector<DirichletCharacter> all_mod(long q);
    /// All primitive characters of conductor exactly q.
    static std::vector<DirichletCharacter> primitive_mod(long q);

  private:
    long q_;
    long n_;                  // order of the value group actually used
    std::vector<long> expo_;  // size q; exponent of zeta_n or -1
    void normalize_order();
};

/// Gauss sum  G(mu) = sum_{a mod q} mu(a) zeta_q^a  of a primitive character,
/// exact in Q(zeta_{lcm(q, ord mu)}).  Throws imprimitive_character otherwise.
CycExact gauss_sum(const DirichletCharacter& mu);

}  // namespace padicfe
