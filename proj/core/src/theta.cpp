#include "padicfe/theta.hpp"

#include <numeric>
#include <sstream>

namespace padicfe {

std::vector<std::pair<KElem, long>> enumerate_ideals(const ImagQuadField& K, long B) {
    return K.ideals_up_to(B);
}

namespace {

QExpansion theta_impl(const HeckeCharacter& xi, long B, bool coprime_pfrak) {
    const auto* K = xi.field();
    if (xi.type_b() != 0 || xi.type_a() > 0)
        throw domain_error(
            "theta series needs type (-u, 0); factor and route through the unramified component "
            "first");
    QExpansion f;
    f.K = K;
    f.B = B;
    f.a.assign(size_t(B) + 1, KCyc(K, 1));
    KElem pf = K->pfrak_gen();
    for (const auto& [gen, n] : K->ideals_up_to(B)) {
        if (xi.shares_conductor(gen)) continue;
        if (coprime_pfrak && K->divides(pf, gen)) continue;
        f.a[size_t(n)] = f.a[size_t(n)] + xi.value(gen);
    }
    long u = -xi.type_a();
    f.weight = u + 1;
    auto el = eta_and_level(xi);
    f.level = el.level;
    f.nebentype = el.theta;
    return f;
}

}  // namespace

QExpansion theta(const HeckeCharacter& xi, long B) { return theta_impl(xi, B, false); }

QExpansion theta_ord(const HeckeCharacter& xi, long B) {
    auto fac = factor_character(xi);
    return theta_impl(fac.rho, B, true);
}

QExpansion p_deplete(const QExpansion& f) {
    QExpansion g = f;
    long p = long(f.K->p());
    for (long n = p; n <= f.B; n += p) g.a[size_t(n)] = KCyc(f.K, 1);
    return g;
}

QExpansion twist_form(const QExpansion& f, const DirichletCharacter& nu) {
    QExpansion g = f;
    for (long n = 1; n <= f.B; ++n) {
        if (nu.is_unit_arg(n)) {
            g.a[size_t(n)] = g.a[size_t(n)] * kcyc_from_cyc(f.K, nu.value(mpz_class(n)));
        } else if (nu.modulus() > 1) {
            g.a[size_t(n)] = KCyc(f.K, 1);
        }
    }
    long c = nu.conductor();
    g.level = f.level * c * c;
    g.nebentype = (f.nebentype * nu * nu).primitive_part();
    return g;
}

QExpansion conj_form(const QExpansion& f) {
    QExpansion g = f;
    for (long n = 1; n <= f.B; ++n) g.a[size_t(n)] = g.a[size_t(n)].conj();
    g.nebentype = f.nebentype.inverse();
    return g;
}

SuiteReport hecke_check(const QExpansion& f) {
    SuiteReport rep;
    rep.suite = "hecke-eigenform-certification";
    const auto* K = f.K;

    CheckResult norm;
    norm.name = "normalized";
    norm.anchor = "eigenform-first-coefficient";
    norm.pass = f.coeff(1) == KCyc::rational(K, 1);
    norm.effective_precision = -1;
    rep.add(norm);

    CheckResult mult;
    mult.name = "coprime-multiplicativity";
    mult.anchor = "eigenform-multiplicativity";
    mult.pass = true;
    for (long m = 2; m <= f.B && mult.pass; ++m) {
        for (long n = 2; m * n <= f.B && mult.pass; ++n) {
            if (std::gcd(m, n) != 1) continue;
            if (!(f.coeff(m * n) == f.coeff(m) * f.coeff(n))) {
                mult.pass = false;
                std::ostringstream os;
                os << "a_" << m * n << " != a_" << m << " a_" << n;
                mult.witness = os.str();
            }
        }
    }
    rep.add(mult);

    CheckResult rec;
    rec.name = "prime-power-recursion";
    rec.anchor = "eigenform-euler-factor";
    rec.pass = true;
    for (long l = 2; l <= f.B && rec.pass; ++l) {
        bool isprime = true;
        for (long d = 2; d * d <= l; ++d)
            if (l % d == 0) isprime = false;
        if (!isprime) continue;
        for (long lr = l; lr * l <= f.B; lr *= l) {
            KCyc rhs = f.coeff(l) * f.coeff(lr);
            if (f.level % l != 0) {
                KCyc thl = kcyc_from_cyc(K, f.nebentype.value(mpz_class(l)));
                mpz_class lw;
                mpz_ui_pow_ui(lw.get_mpz_t(), (unsigned long)l, (unsigned long)(f.weight - 1));
                rhs = rhs - thl * KCyc::rational(K, mpq_class(lw)) * f.coeff(lr / l);
            }
            if (!(f.coeff(lr * l) == rhs)) {
                rec.pass = false;
                std::ostringstream os;
                os << "recursion fails at index " << lr * l;
                rec.witness = os.str();
                break;
            }
        }
    }
    rep.add(rec);
    return rep;
}

SuiteReport verify_duality(const HeckeCharacter& xi, long B) {
    SuiteReport rep;
    rep.suite = "depleted-theta-duality";
    const auto* K = xi.field();
    auto fac = factor_character(xi);
    auto xid = dual(xi);
    auto facd = factor_character(xid);

    CheckResult mu_dual;
    mu_dual.name = "dual-dirichlet-component";
    mu_dual.anchor = "dual-character-mu-inversion";
    mu_dual.pass = facd.mu == fac.mu.inverse().primitive_part();
    rep.add(mu_dual);

    // first line: twisted depletion of the dual unramified component
    QExpansion lhs = twist_form(p_deplete(theta(facd.rho, B)), facd.mu);
    // last line: conjugate of the mu-twisted depletion of the original
    QExpansion rhs = conj_form(twist_form(p_deplete(theta(fac.rho, B)), fac.mu));

    CheckResult ends;
    ends.name = "dual-twisted-depletion-comparison";
    ends.anchor = "conjugate-depleted-theta-identity";
    ends.pass = true;
    for (long n = 1; n <= B; ++n) {
        if (!(lhs.coeff(n) == rhs.coeff(n))) {
            ends.pass = false;
            std::ostringstream os;
            os << "coefficient " << n << ": " << lhs.coeff(n).str() << " vs " << rhs.coeff(n).str();
            ends.witness = os.str();
            break;
        }
    }
    rep.add(ends);

    // middle step: conjugation re-indexes the ideal sum, norms preserved
    CheckResult mid;
    mid.name = "conjugation-reindexing";
    mid.anchor = "ideal-conjugation-bijection";
    mid.pass = true;
    long a_type = xi.type_a();
    long Bmid = std::min<long>(B, 60);
    auto ideals = K->ideals_up_to(Bmid);
    for (long n = 1; n <= Bmid && mid.pass; ++n) {
        if (n % long(K->p()) == 0) continue;
        KCyc s1(K, 1), s2(K, 1), s3(K, 1);
        mpq_class npow(1);
        {
            mpz_class powz, nz(n);
            long e = -a_type;
            mpz_pow_ui(powz.get_mpz_t(), nz.get_mpz_t(), (unsigned long)std::labs(e));
            npow = e >= 0 ? mpq_class(powz) : mpq_class(1) / mpq_class(powz);
        }
        for (const auto& [gen, nn] : ideals) {
            if (nn != n || xi.shares_conductor(gen)) continue;
            s1 = s1 + xid.value(gen) * KCyc::rational(K, npow);
            KElem cg = K->canonical(K->conj(gen));
            s2 = s2 + xi.value(cg).inverse() * KCyc::rational(K, npow);
            s3 = s3 + xi.value(gen).inverse() * KCyc::rational(K, npow);
        }
        // dual definition at each ideal, then the norm-preserving bijection
        // re-indexing the sum over conjugates
        if (!(s1 == s2) || !(s2 == s3)) {
            mid.pass = false;
            std::ostringstream os;
            os << "re-indexed sums differ at norm " << n;
            mid.witness = os.str();
        }
    }
    rep.add(mid);
    return rep;
}

SuiteReport verify_twisted_duality(const HeckeCharacter& xi, long B) {
    SuiteReport rep;
    rep.suite = "twisted-duality-demi-crystalline";
    const auto* K = xi.field();
    auto fac = factor_character(xi);
    auto xid = dual(xi);
    auto facd = factor_character(xid);

    // demi-crystalline hypothesis: the unramified component has trivial
    // conductor
    CheckResult hyp;
    hyp.name = "demi-crystalline-hypothesis";
    hyp.anchor = "trivial-conductor-component";
    hyp.pass = fac.rho.finite_modulus() == 1;
    rep.add(hyp);
    if (!hyp.pass) return rep;

    auto el = eta_and_level(fac.rho);
    long N0 = el.level;  // prime to p for demi-crystalline characters
    DirichletCharacter theta_N0 = el.theta;

    QExpansion g0 = theta(fac.rho, B);
    QExpansion g0d = theta(facd.rho, B);
    QExpansion g0bar = conj_form(g0);
    QExpansion g0tw = twist_form(g0, theta_N0.inverse());

    CheckResult c1;
    c1.name = "newform-duality-conjugate";
    c1.anchor = "dual-newform-equals-conjugate";
    c1.pass = true;
    for (long n = 1; n <= B; ++n)
        if (!(g0d.coeff(n) == g0bar.coeff(n))) {
            c1.pass = false;
            std::ostringstream os;
            os << "coefficient " << n;
            c1.witness = os.str();
            break;
        }
    rep.add(c1);

    CheckResult c2;
    c2.name = "newform-duality-twist";
    c2.anchor = "conjugate-equals-inverse-nebentype-twist";
    c2.pass = true;
    long informational = 0;
    for (long n = 1; n <= B; ++n) {
        if (std::gcd(n, N0) != 1) {
            ++informational;
            continue;
        }
        if (!(g0bar.coeff(n) == g0tw.coeff(n))) {
            c2.pass = false;
            std::ostringstream os;
            os << "coefficient " << n;
            c2.witness = os.str();
            break;
        }
    }
    {
        std::ostringstream os;
        os << "coefficients sharing a factor with the level: " << informational
           << " (compared informationally only)";
        c2.params = os.str();
    }
    rep.add(c2);

    QExpansion g = theta_ord(xi, B);
    QExpansion gd = theta_ord(xid, B);
    QExpansion gtw = twist_form(g, theta_N0.inverse());

    CheckResult c3;
    c3.name = "stabilized-duality-twist";
    c3.anchor = "stabilized-dual-equals-twist";
    c3.pass = true;
    for (long n = 1; n <= B; ++n) {
        if (std::gcd(n, N0 * long(K->p())) != 1) continue;
        if (!(gd.coeff(n) == gtw.coeff(n))) {
            c3.pass = false;
            std::ostringstream os;
            os << "coefficient " << n;
            c3.witness = os.str();
            break;
        }
    }
    rep.add(c3);

    // U_p chain, step by step (chi trivial; exponents in the value
    // convention value((alpha)) = eps alpha^(-a) conj(alpha)^(-b))
    KElem pi = K->pfrak_gen();
    KElem pibar = K->pfrak_bar_gen();
    long u = xi.type_b() - xi.type_a();
    mpz_class pu;
    mpz_ui_pow_ui(pu.get_mpz_t(), K->p(), (unsigned long)u);
    KCyc pupow = KCyc::rational(K, mpq_class(pu));

    KCyc lhs1 = facd.rho.value(pibar);
    KCyc rhs1 = fac.rho.value(pi).inverse() * pupow;
    CheckResult s1;
    s1.name = "up-chain-step-1";
    s1.anchor = "dual-component-at-conjugate-prime";
    s1.pass = lhs1 == rhs1;
    if (!s1.pass) s1.witness = lhs1.str() + " vs " + rhs1.str();
    rep.add(s1);

    KElem pfull = K->mul(pi, pibar);  // generates (p) up to units
    KCyc rhs2 = fac.rho.value(pibar) * fac.rho.value(K->canonical(pfull)).inverse() * pupow;
    CheckResult s2;
    s2.name = "up-chain-step-2";
    s2.anchor = "split-prime-multiplicativity";
    s2.pass = rhs1 == rhs2;
    rep.add(s2);

    KCyc theta_p = kcyc_from_cyc(K, theta_N0.inverse().value(mpz_class(K->p())));
    KCyc rhs3 = fac.rho.value(pibar) * theta_p;
    CheckResult s3;
    s3.name = "up-chain-step-3";
    s3.anchor = "nebentype-absorbs-norm-power";
    s3.pass = rhs2 == rhs3;
    if (!s3.pass) s3.witness = rhs2.str() + " vs " + rhs3.str();
    rep.add(s3);

    // endpoint read off the q-expansions directly
    CheckResult s4;
    s4.name = "up-chain-endpoint-on-expansions";
    s4.anchor = "up-eigenvalue-comparison";
    s4.pass = gd.coeff(long(K->p())) == g.coeff(long(K->p())) * theta_p;
    rep.add(s4);
    return rep;
}

CheckResult verify_stabilization(const HeckeCharacter& xi, long B) {
    CheckResult r;
    r.name = "ordinary-stabilization-identity";
    r.anchor = "single-euler-factor-deletion";
    const auto* K = xi.field();
    auto fac = factor_character(xi);
    QExpansion full = theta(fac.rho, B);
    QExpansion ord = theta_ord(xi, B);
    KCyc xip = fac.rho.value(K->pfrak_gen());
    long p = long(K->p());
    r.pass = true;
    for (long n = 1; n <= B; ++n) {
        KCyc expect = full.coeff(n);
        if (n % p == 0) expect = expect - xip * full.coeff(n / p);
        if (!(ord.coeff(n) == expect)) {
            r.pass = false;
            std::ostringstream os;
            os << "coefficient " << n;
            r.witness = os.str();
            break;
        }
    }
    return r;
}

std::string qexpansion_tsv(const QExpansion& f) {
    std::ostringstream os;
    for (long n = 1; n <= f.B; ++n) os << n << "\t" << f.coeff(n).str() << "\n";
    return os.str();
}

}  // namespace padicfe
