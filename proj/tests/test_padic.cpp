#include "doctest.h"

#include "padicfe/cyclotomic.hpp"
#include "padicfe/dirichlet.hpp"
#include "padicfe/ext.hpp"
#include "padicfe/padic.hpp"

#include <random>

using namespace padicfe;

TEST_CASE("ZpRing basics and valuation cap") {
    auto R = make_zp_ring(5, 8);
    Padic x(R, mpz_class(5));
    CHECK(x.valuation() == Val::exact(1));
    Padic z(R, mpz_class(0));
    CHECK(z.valuation().at_least);
    CHECK(z.valuation().num == 8);
    Padic a(R, mpz_class(7)), b(R, mpz_class(3));
    CHECK((a * b).residue() == 21);
    CHECK_THROWS_AS(Padic(R, mpz_class(10)).inverse(), not_invertible);

    auto R2 = make_zp_ring(5, 9);
    CHECK_THROWS_AS(Padic(R, mpz_class(1)) + Padic(R2, mpz_class(1)), ring_mismatch);
}

TEST_CASE("random unit inverse against extended-Euclid oracle, p=5 N=8") {
    auto R = make_zp_ring(5, 8);
    std::mt19937_64 rng(12345);
    for (int t = 0; t < 50; ++t) {
        mpz_class a = R->reduce(mpz_class((unsigned long)rng()));
        if (R->val(a) != 0) continue;
        // oracle: gmp mpz_invert is the extended Euclid over Z/5^8
        mpz_class oracle;
        mpz_invert(oracle.get_mpz_t(), a.get_mpz_t(), R->modulus().get_mpz_t());
        CHECK(R->inv(a) == oracle);
        CHECK(R->mul(a, R->inv(a)) == 1);
    }
}

TEST_CASE("Teichmuller lift: torsion and congruence") {
    auto R = make_zp_ring(5, 12);
    for (long seed = 1; seed <= 4; ++seed) {
        mpz_class t = R->teichmuller(seed);
        CHECK(R->pow(t, 4) == 1);
        CHECK((t - seed) % 5 == 0);
    }
}

TEST_CASE("quadratic extension: defining relation and ramified valuation") {
    auto R = make_zp_ring(5, 8);
    auto E = ExtRing::quadratic(R, mpz_class(5));  // x^2 = 5
    auto alpha = ExtElem::gen(E);
    CHECK(alpha * alpha == ExtElem::from_base(E, 5));
    CHECK(alpha.valuation() == Val::exact(1, 2));
    CHECK(ExtElem::from_base(E, 5).valuation() == Val::exact(1));
    auto one = ExtElem::one(E);
    CHECK(one.valuation() == Val::exact(0));
    // x = 1 + alpha is a unit; inverse closed-form
    auto x = one + alpha;
    CHECK(x * x.inverse() == one);
    CHECK_THROWS_AS(alpha.inverse(), not_invertible);
}

TEST_CASE("quadratic extension: reducible modulus rejects valuation") {
    auto R = make_zp_ring(5, 8);
    auto E = ExtRing::quadratic(R, mpz_class(4));  // x^2-4 splits
    CHECK_FALSE(E->irreducible());
    CHECK_THROWS_AS(ExtElem::gen(E).valuation(), domain_error);
}

TEST_CASE("cyclotomic extension: v(zeta_25 - 1) = 1/20") {
    auto R = make_zp_ring(5, 8);
    auto E = ExtRing::cyclo_p_power(R, 2);
    CHECK(E->degree() == 20);
    auto z = ExtElem::gen(E);
    auto v = (z - ExtElem::one(E)).valuation();
    CHECK(v == Val::exact(1, 20));
    // norm sanity via power: (zeta-1)^20 should have valuation 1
    CHECK((z - ExtElem::one(E)).pow(20).valuation() == Val::exact(1));
}

TEST_CASE("ring axioms under randomized testing, p in {5,7}") {
    std::mt19937_64 rng(99);
    for (unsigned long p : {5ul, 7ul}) {
        auto R = make_zp_ring(p, 20);
        auto E = ExtRing::quadratic(R, mpz_class(-mpz_class(p)));
        auto rnd = [&] {
            std::vector<mpz_class> c{R->reduce(mpz_class((unsigned long)rng())),
                                     R->reduce(mpz_class((unsigned long)rng()))};
            return ExtElem(E, c);
        };
        for (int t = 0; t < 40; ++t) {
            auto a = rnd(), b = rnd(), c = rnd();
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            CHECK(a + b == b + a);
        }
    }
}

TEST_CASE("valuation additivity below the cap") {
    auto R = make_zp_ring(5, 12);
    auto E = ExtRing::cyclo_p_power(R, 1);
    std::mt19937_64 rng(7);
    auto rnd = [&] {
        std::vector<mpz_class> c;
        for (int i = 0; i < E->degree(); ++i) c.push_back(R->reduce(mpz_class((unsigned long)rng())));
        return ExtElem(E, c);
    };
    int checked = 0;
    for (int t = 0; t < 30; ++t) {
        auto a = rnd(), b = rnd();
        auto va = a.valuation(), vb = b.valuation(), vab = (a * b).valuation();
        if (va.at_least || vb.at_least || vab.at_least) continue;
        if (va.approx() + vb.approx() > 6) continue;  // stay below the cap
        CHECK(vab.num * va.den * vb.den == (va.num * vb.den + vb.num * va.den) * vab.den);
        ++checked;
    }
    CHECK(checked > 10);
}
