#include "doctest.h"

#include "padicfe/theta.hpp"

using namespace padicfe;

TEST_CASE("trivial character on Q(i): coefficients count ideals") {
    ImagQuadField K(1, 5, 8);
    auto xi = HeckeCharacter::trivial(&K);
    auto f = theta(xi, 30);
    CHECK(f.coeff(1) == KCyc::rational(&K, 1));
    CHECK(f.coeff(2) == KCyc::rational(&K, 1));
    CHECK(f.coeff(5) == KCyc::rational(&K, 2));
    CHECK(f.coeff(3).is_zero());
}

TEST_CASE("theta metadata and eigenform certification") {
    ImagQuadField K(11, 5, 10);
    auto xi = HeckeCharacter::unramified(&K, 4);
    auto f = theta(xi, 200);
    CHECK(f.weight == 5);
    CHECK(f.level == 11);
    auto rep = hecke_check(f);
    CHECK(rep.all_pass());

    // split prime: a_l = value at both primes above l
    // inert l: a_l = 0, a_{l^2} = -theta(l) l^u = l^u
    for (long l : {2L, 7L, 13L}) {
        if (kronecker_symbol(-11, l) == -1) {
            CHECK(f.coeff(l).is_zero());
            mpz_class lu;
            mpz_ui_pow_ui(lu.get_mpz_t(), (unsigned long)l, 4);
            if (l * l <= f.B) CHECK(f.coeff(l * l) == KCyc::rational(&K, mpq_class(lu)));
        }
    }
}

TEST_CASE("theta rejects characters of the wrong shape") {
    ImagQuadField K(11, 5, 10);
    HeckeCharacter bad(&K, -2, 2, DirichletCharacter::trivial(1), DirichletCharacter::trivial(1),
                       DirichletCharacter::trivial(1));
    CHECK_THROWS_AS(theta(bad, 20), domain_error);
}

TEST_CASE("stabilization identity, exact") {
    for (long D : {11L, 19L}) {
        ImagQuadField K(D, 5, 10);
        for (long u : {2L, 4L}) {
            auto xi = HeckeCharacter::unramified(&K, u);
            auto r = verify_stabilization(xi, 150);
            CHECK(r.pass);
        }
    }
}

TEST_CASE("depletion commutes with stabilization away from the bad prime") {
    ImagQuadField K(11, 5, 10);
    auto xi = HeckeCharacter::unramified(&K, 2);
    auto a = p_deplete(theta_ord(xi, 120));
    auto b = p_deplete(theta(xi, 120));
    for (long n = 1; n <= 120; ++n) CHECK(a.coeff(n) == b.coeff(n));
}

TEST_CASE("duality of depleted twisted theta series") {
    ImagQuadField K(11, 5, 10);
    // trivial character: both sides the depleted trivial theta
    auto rep0 = verify_duality(HeckeCharacter::trivial(&K), 60);
    CHECK(rep0.all_pass());
    // unramified type (-4, 0), mu trivial
    auto rep = verify_duality(HeckeCharacter::unramified(&K, 4), 300);
    CHECK(rep.all_pass());
    // nontrivial mu of conductor p through the norm
    auto nus = DirichletCharacter::primitive_mod(5);
    for (const auto& nu : nus) {
        if (nu.order() != 2) continue;
        HeckeCharacter xin(&K, -2, 0, nu, DirichletCharacter::trivial(1),
                           DirichletCharacter::trivial(1));
        auto rep2 = verify_duality(xin, 80);
        CHECK(rep2.all_pass());
    }
}

TEST_CASE("twisted duality for demi-crystalline characters") {
    // trivial character: relations degenerate to conjugation invariance
    {
        ImagQuadField K(11, 5, 10);
        auto rep = verify_twisted_duality(HeckeCharacter::trivial(&K), 80);
        CHECK(rep.all_pass());
    }
    // the example matrix case
    ImagQuadField K(11, 5, 10);
    auto rep = verify_twisted_duality(HeckeCharacter::unramified(&K, 4), 300);
    for (const auto& c : rep.checks) {
        INFO(c.name, " ", c.witness);
        CHECK(c.pass);
    }
}

TEST_CASE("tsv export shape") {
    ImagQuadField K(11, 5, 8);
    auto f = theta(HeckeCharacter::unramified(&K, 2), 5);
    auto tsv = qexpansion_tsv(f);
    CHECK(tsv.find("1\t") == 0);
    CHECK(tsv.find('\n') != std::string::npos);
}
