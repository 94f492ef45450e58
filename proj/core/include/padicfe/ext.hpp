#pragma once

#include "padicfe/padic.hpp"

#include <vector>

namespace padicfe {

/// Finite quotient-ring extensions of Z/p^N used as coefficient rings:
///   - Quadratic:   (Z/p^N)[x] / (x^2 - c)
///   - CycloPPower: (Z/p^N)[x] / Phi_{p^r}(x),  Phi the p^r-th cyclotomic
///     polynomial, written as sum_{i<p} x^{i p^(r-1)}.
/// Valuations are normalized by v(p) = 1 and read off Newton-polygon style
/// in a uniformizer basis; they live in (1/e)Z for the ramification index e.
class ExtRing : public std::enable_shared_from_this<ExtRing> {
  public:
    enum class Kind { Quadratic, CycloPPower };

    static std::shared_ptr<const ExtRing> quadratic(ZpRingPtr base, const mpz_class& c);
    static std::shared_ptr<const ExtRing> cyclo_p_power(ZpRingPtr base, int r);

    const ZpRingPtr& base() const { return base_; }
    Kind kind() const { return kind_; }
    int degree() const { return d_; }
    int ram_index() const { return e_; }
    int cyclo_level() const { return r_; }
    const mpz_class& quad_c() const { return c_; }
    /// False when x^2 - c splits over Q_p; valuation() is then undefined.
    bool irreducible() const { return irreducible_; }

    /// Monic modulus polynomial, degree d, coefficient of x^i at index i.
    std::vector<mpz_class> modulus() const;

    std::vector<mpz_class> reduce(std::vector<mpz_class> poly) const;

  private:
    ExtRing() = default;
    ZpRingPtr base_;
    Kind kind_{};
    int d_ = 1;
    int e_ = 1;
    int r_ = 0;
    mpz_class c_;
    bool irreducible_ = true;
};

using ExtRingPtr = std::shared_ptr<const ExtRing>;

/// Element of an ExtRing, coefficients in the x-power basis.
class ExtElem {
  public:
    ExtElem(ExtRingPtr ring, std::vector<mpz_class> coeffs);
    static ExtElem from_base(ExtRingPtr ring, const mpz_class& a);
    static ExtElem gen(ExtRingPtr ring);  // the class of x
    static ExtElem zero(ExtRingPtr ring) { return from_base(std::move(ring), 0); }
    static ExtElem one(ExtRingPtr ring) { return from_base(std::move(ring), 1); }

    const ExtRingPtr& ring() const { return ring_; }
    const std::vector<mpz_class>& coeffs() const { return c_; }
    bool is_zero() const;

    friend ExtElem operator+(const ExtElem& a, const ExtElem& b);
    friend ExtElem operator-(const ExtElem& a, const ExtElem& b);
    friend ExtElem operator*(const ExtElem& a, const ExtElem& b);
    ExtElem operator-() const;
    ExtElem inverse() const;
    ExtElem pow(const mpz_class& e) const;
    ExtElem scale(const mpz_class& s) const;

    friend bool operator==(const ExtElem& a, const ExtElem& b);
    friend bool operator!=(const ExtElem& a, const ExtElem& b) { return !(a == b); }

    /// v_p normalized by v_p(p)=1, exact when below the precision cap,
    /// flagged at_least otherwise.  Throws domain_error("valuation undefined")
    /// when the modulus is reducible over Q_p.
    Val valuation() const;

    /// Trace to the base ring (CycloPPower rings).
    mpz_class trace() const;

    std::string str() const;

  private:
    ExtRingPtr ring_;
    std::vector<mpz_class> c_;
};

}  // namespace padicfe
