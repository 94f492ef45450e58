#include "doctest.h"

#include "padicfe/feq.hpp"

using namespace padicfe;

namespace {

// synthetic parameter tuples with a consistent nebentype parity
RankinParams make_params(unsigned long p, int r, long k, long kappa, long a, long b,
                         long mu_index = 0) {
    RankinParams P;
    P.p = p;
    P.r = r;
    P.k = k;
    P.kappa = kappa;
    P.a = a;
    P.b = b;
    P.Nf = 7 * (p == 7 ? 2 : 1) + (p == 7 ? -1 : 0);  // 7 for p=5, 13 handled below
    if (p == 7) P.Nf = 13;
    P.zp = make_zp_ring(p, 14);
    // wild character of conductor p^r
    long q = 1;
    for (int i = 0; i < r; ++i) q *= long(p);
    auto prims = DirichletCharacter::primitive_mod(q);
    REQUIRE(!prims.empty());
    P.mu = prims[size_t(mu_index) % prims.size()];
    // nebentype with parity (-1)^(b-a+1): odd quadratic for even b-a,
    // trivial for odd b-a
    if ((b - a) % 2 == 0) {
        // Kronecker character of the discriminant -11 (odd, conductor 11)
        std::vector<long> expo(11, -1);
        for (long t = 1; t < 11; ++t) expo[size_t(t)] = kronecker_symbol(-11, t) == 1 ? 0 : 1;
        P.theta_chi_psi = DirichletCharacter(11, 2, std::move(expo));
        P.Nchi = 11;
    } else {
        // even quadratic character of conductor 13
        std::vector<long> expo(13, -1);
        for (long t = 1; t < 13; ++t) expo[size_t(t)] = kronecker_symbol(13, t) == 1 ? 0 : 1;
        P.theta_chi_psi = DirichletCharacter(13, 2, std::move(expo));
        P.Nchi = 13;
    }
    if (P.Nf % P.Nchi == 0) P.Nf = P.Nchi == 11 ? 7 : 7;
    P.alpha = P.zp->teichmuller(mpz_class(2)) + P.zp->p();  // ordinary synthetic unit
    P.alpha = P.zp->reduce(P.alpha);
    return P;
}

}  // namespace

TEST_CASE("root number: center value and exponent telescoping") {
    auto P = make_params(5, 1, 2, 6, 0, 1);
    // at the center the level power is 1
    mpq_class center(P.kappa + P.b - P.a, 2);
    auto W = root_number_W(P, center);
    CHECK(W.p_exponent() == 0);
    CHECK(W.rational_part() == 1 * (W.rational_part() > 0 ? 1 : -1) * abs(W.rational_part()));
    // the level-power exponents at the two exchanged points cancel
    auto W1 = root_number_W(P, mpq_class(P.b + P.k / 2));
    auto W2 = root_number_W(P, mpq_class(P.kappa - P.k / 2 - P.a));
    auto prod = W1 * W2;
    // rational parts multiply to (NfN)^0 = 1 once the nebentype squares drop
    CHECK(prod.p_exponent() == 0);
    CHECK(prod.marker_exponent("lambda_h_sq") == 2);

    // common level factor is rejected
    auto bad = P;
    bad.Nf = 11 * 7;
    CHECK_THROWS_AS(root_number_W(bad, center), domain_error);
}

TEST_CASE("ratio identity: symmetric point and factorial bookkeeping") {
    // kappa = k, a = b = 0: only the unit part remains
    auto P = make_params(5, 1, 4, 4, 0, 0);
    auto r = ratio_rhs(P);
    CHECK(r.rational_part() == 1 || r.rational_part() == -1);  // theta(-1) sign
    CHECK(r.marker_exponent("two-pi") == 0);
    CHECK(r.p_exponent() == 0);

    // a = b: the two factorial products are symmetric under a <-> b
    auto P2 = make_params(5, 1, 2, 6, 1, 1);
    auto r2 = ratio_rhs(P2);
    auto P2s = P2;  // swapping a and b changes nothing when a = b
    CHECK(ratio_rhs(P2s).rational_part() == r2.rational_part());

    // factorial bookkeeping against a direct Gamma-quotient at (6,2,0,1)
    auto P3 = make_params(5, 1, 2, 6, 0, 1);
    auto r3 = ratio_rhs(P3);
    // (kappa-k/2-a-1)! (kappa-k/2-b-1)! / ((a+k/2-1)! (b+k/2-1)!) = 4! 3! / (0! 1!)
    mpq_class expected = mpq_class(24 * 6);
    mpq_class got = r3.rational_part() /
                    (mpq_class(-(P3.Nf * P3.Nchi)) * mpq_class(-(P3.Nf * P3.Nchi)) *
                     mpq_class(-(P3.Nf * P3.Nchi)) / mpq_class(1));
    // isolate: rational part = (-NfN)^(kappa-k-a-b) * theta-sign * facts;
    // exponent = 6-2-0-1 = 3
    mpq_class lvl = mpq_class(-(P3.Nf * P3.Nchi));
    mpq_class lvl3 = lvl * lvl * lvl;
    mpq_class fact_part = r3.rational_part() / lvl3;
    CHECK((fact_part == expected || fact_part == -expected));
    (void)got;

    // negative factorial arguments are outside the critical range
    auto bad = make_params(5, 1, 2, 2, 0, 0);
    bad.b = 1;  // b > kappa - k/2 - 1
    CHECK_THROWS_AS(ratio_rhs(bad), domain_error);
}

TEST_CASE("epsilon factors: reduction at the balanced exponent and valuations") {
    auto P = make_params(5, 1, 2, 2, 0, 0);
    P.a = 0;
    P.b = 0;
    // a+b = 2-k makes the direct exponent vanish
    P.a = 1 - P.k / 2;
    P.b = (2 - P.k) - P.a;
    REQUIRE(P.a + P.b == 2 - P.k);
    auto ring = ExtRing::cyclo_p_power(P.zp, 1);
    auto eps = epsilon_factors(P, ring);
    CHECK(eps.vp_direct_num == 0);  // exponent r(a+b+k-2) = 0
    // v_p audit at (p,r,k,a,b,kappa) = (5,1,2,0,0,2), ordinary alpha
    auto P2 = make_params(5, 1, 2, 2, 0, 0);
    auto eps2 = epsilon_factors(P2, ring);
    // v_p(E) = v_p(G(mu)^2) + r(a+b+k-2) - 0 = 1 + 0
    auto v = eps2.direct.valuation();
    CHECK(v == Val::exact(1));
    auto vd = eps2.dual.valuation();
    CHECK(vd == Val::exact(1));  // 2 kappa - k - a - b - 2 = 0, plus G(conj mu)^2

    // symbolic ratio against the embedded quotient (two routes)
    auto sym = epsilon_ratio_symbolic(P2);
    CHECK(sym.p_exponent() == 0);  // 2(a+b) + 2k - 2kappa = 0 here
    auto emb = sym.embed(ring);
    CHECK(eps2.direct == eps2.dual * emb);
}

TEST_CASE("gf value: unit valuation and anticyclotomic degeneration") {
    // anticyclotomic tuples have b = -a and the level power degenerates
    auto P = make_params(5, 1, 4, 4, -1, 1);
    auto g = gf_value(P);
    CHECK(g.p_exponent() == 0);
    CHECK(abs(g.rational_part()) == 1);  // (-Nf Nchi)^0
    // p-adic valuation is 0 on every admissible tuple
    for (auto [kk, kap, aa, bb] : {std::tuple<long, long, long, long>{2, 6, 0, 1},
                                   {2, 6, -0, 2}, {4, 8, -1, 3}, {2, 2, 0, 0}}) {
        auto Q = make_params(5, 1, kk, kap, aa, bb);
        auto gg = gf_value(Q);
        CHECK(gg.p_exponent() == 0);
        auto ring = ExtRing::cyclo_p_power(Q.zp, 1);
        auto clean = gg.resolve("lambda_f_sq", SymbolicUnit()).resolve("lambda_g_sq", SymbolicUnit());
        auto e = clean.embed(ring);
        CHECK(e.valuation() == Val::exact(0));
    }
}

TEST_CASE("gf product with the dual tuple is a root of unity at anticyclotomic points") {
    for (long aa : {-1L, -2L}) {
        auto P = make_params(5, 1, 4, 4, aa, -aa);
        auto r = gf_product_duality(P);
        INFO(r.witness);
        CHECK(r.pass);
    }
}

TEST_CASE("interpolation chain closes on a matrix of tuples") {
    int count = 0;
    for (unsigned long p : {5ul, 7ul}) {
        for (long dk : {0L, long(p - 1), 2 * long(p - 1)}) {
            for (auto [k0, a0, b0] : {std::tuple<long, long, long>{2, 0, 0}, {2, 0, 1}, {4, -1, 1}}) {
                long kappa = k0 + dk;
                if (!(a0 <= b0 && b0 <= kappa - k0 / 2 - 1)) continue;
                for (int mu_i : {0, 1}) {
                    auto P = make_params(p, 1, k0, kappa, a0, b0, mu_i);
                    auto rep = verify_interpolation_chain(P);
                    for (const auto& c : rep.checks) {
                        INFO(c.name, " ", c.params, " ", c.witness);
                        CHECK(c.pass);
                    }
                    ++count;
                }
            }
        }
    }
    CHECK(count >= 20);
    // kappa = k anticyclotomic: the chain reduces to the constant alone
    auto P = make_params(5, 2, 4, 4, -1, 1);
    auto rep = verify_interpolation_chain(P);
    CHECK(rep.all_pass());
}

TEST_CASE("evaluation-point bookkeeping") {
    auto P = make_params(5, 1, 2, 6, 0, 1);
    auto rep = center_shift_check(P);
    CHECK(rep.all_pass());
    // explicit: s = b + k/2 maps to kappa - k/2 - a
    CHECK(mpq_class(P.kappa + P.b - P.a) - (P.b + P.k / 2) == P.kappa - P.k / 2 - P.a);
}
