#include "doctest.h"

#include "padicfe/brig.hpp"

#include <random>

using namespace padicfe;

namespace {

BrigSeries random_poly(const ZpRingPtr& R, int Mpi, int deg, std::mt19937_64& rng) {
    std::vector<mpz_class> c(size_t(Mpi), 0);
    for (int i = 0; i <= deg; ++i) c[size_t(i)] = R->reduce(mpz_class((unsigned long)rng()));
    return BrigSeries(R, Mpi, 0, std::move(c));
}

}  // namespace

TEST_CASE("frobenius and gamma action basics") {
    auto R = make_zp_ring(3, 12);
    const int Mpi = 64;
    auto piv = BrigSeries::pi(R, Mpi);
    auto fr = frobenius(piv);  // (1+pi)^3 - 1 = 3pi + 3pi^2 + pi^3
    CHECK(fr.coeff(0) == 0);
    CHECK(fr.coeff(1) == 3);
    CHECK(fr.coeff(2) == 3);
    CHECK(fr.coeff(3) == 1);
    CHECK(fr.coeff(4) == 0);

    CHECK(gamma_action(piv, 1) == piv);
    // gamma_action(1+pi, c) = (1+pi)^c via binomials
    std::mt19937_64 rng(5);
    auto onep = BrigSeries::one(R, Mpi) + piv;
    for (long c : {2L, 7L, -4L}) {
        auto lhs = gamma_action(onep, c);
        auto rhs = BrigSeries::one_plus_pi_pow(R, Mpi, c);
        CHECK(lhs == rhs);
    }
    // multiplicativity in c on polynomial inputs
    auto f = random_poly(R, Mpi, 10, rng);
    CHECK(gamma_action(gamma_action(f, 4), 7) == gamma_action(f, 28));
}

TEST_CASE("q and delta: division shapes and the exact unit identity") {
    for (unsigned long p : {3ul, 5ul, 7ul}) {
        auto R = make_zp_ring(p, 14);
        const int Mpi = 200;
        auto [q, delta] = q_delta(R, Mpi);
        if (p == 3) {
            CHECK(q.coeff(0) == 3);
            CHECK(q.coeff(1) == 3);
            CHECK(q.coeff(2) == 1);
        }
        CHECK(q.coeff(0) == mpz_class(p));
        // delta * (q - pi^(p-1)) = p exactly
        std::vector<mpz_class> mo(size_t(Mpi), 0);
        mo[size_t(p - 1)] = 1;
        auto qm = q - BrigSeries(R, Mpi, 0, std::move(mo));
        auto prod = delta * qm;
        CHECK(prod == BrigSeries::one(R, Mpi).scale(mpz_class(p)));
    }
}

TEST_CASE("psi is a left inverse of phi and satisfies the selector rule") {
    std::mt19937_64 rng(17);
    for (unsigned long p : {3ul, 5ul, 7ul}) {
        auto R = make_zp_ring(p, 10);
        const int Mpi = 200;
        // psi(phi(f)) = f for truncated inputs with p*deg < Mpi
        for (int t = 0; t < 3; ++t) {
            auto f = random_poly(R, Mpi, int(Mpi / p) - 1, rng);
            CHECK(psi(frobenius(f)) == f);
        }
        // psi((1+pi)^j) = (1+pi)^(j/p) if p | j else 0
        for (long j : {0L, 1L, long(p), long(3 * p), long(p * p), 7L, long(p) + 1, -long(p),
                       -long(2 * p), -3L}) {
            auto inp = BrigSeries::one_plus_pi_pow(R, Mpi, j);
            auto out = psi(inp);
            // truncated tails perturb coefficient s at valuation
            // (Mpi - p s)/(p-1); stay inside the full-precision window
            int good = int((Mpi - long(p - 1) * (R->precision() + 2)) / long(p));
            if (j % long(p) == 0) {
                auto expect = BrigSeries::one_plus_pi_pow(R, Mpi, j / long(p));
                for (int s = 0; s < good; ++s) CHECK(out.coeff(s) == expect.coeff(s));
            } else {
                for (int s = 0; s < good; ++s) CHECK(out.coeff(s) == 0);
            }
        }
        CHECK(psi(frobenius(BrigSeries::one(R, Mpi) + BrigSeries::pi(R, Mpi))) ==
              BrigSeries::one(R, Mpi) + BrigSeries::pi(R, Mpi));
    }
}

TEST_CASE("mellin transform: normalization, group-likes, gamma intertwining") {
    auto R = make_zp_ring(5, 16);
    const int M = 8, Mpi = 120;
    auto one = IwaSeries::one(R, M);
    auto F1 = mellin(one, Mpi);
    CHECK(F1 == BrigSeries::one(R, Mpi) + BrigSeries::pi(R, Mpi));

    // group-like: gamma0 -> (1+pi)^u, u = 1 + p
    auto Fg = mellin(group_element(R, M, 1), Mpi);
    CHECK(Fg == BrigSeries::one_plus_pi_pow(R, Mpi, 6));

    // intertwining of the Lambda-action; the top coefficient is kept zero
    // so that multiplying by gamma0 stays inside the T-truncation
    std::mt19937_64 rng(23);
    std::vector<mpz_class> c;
    for (int i = 0; i + 1 < M; ++i) c.push_back(R->reduce(mpz_class((unsigned long)rng())));
    IwaSeries f(R, M, 0, std::move(c));
    auto lhs = mellin(group_element(R, M, 1) * f, Mpi);
    auto rhs = gamma_action(mellin(f, Mpi), cyc_u(*R));
    CHECK(lhs == rhs);
}

TEST_CASE("mellin round trip at the frozen example parameters") {
    auto R = make_zp_ring(5, 40);
    const int M = 8, Mpi = 120;
    std::mt19937_64 rng(29);
    std::vector<mpz_class> c;
    for (int i = 0; i < M; ++i) c.push_back(R->reduce(mpz_class((unsigned long)rng())));
    IwaSeries f(R, M, 0, std::move(c));
    auto inv = mellin_inverse(mellin(f, Mpi), M, /*exact_image=*/true);
    CHECK(inv.delta_bound == 28);  // M(M-1)/2
    CHECK(inv.delta_audit <= 28);
    // equality mod p^(N - Delta(M)) = p^12 as guaranteed
    mpz_class p12;
    mpz_ui_pow_ui(p12.get_mpz_t(), 5, 12);
    for (int i = 0; i < M; ++i) {
        mpz_class d = (inv.series.coeff(i) - f.coeff(i)) % p12;
        CHECK(d == 0);
    }
}

TEST_CASE("mellin_inverse rejects series outside the image") {
    auto R = make_zp_ring(5, 20);
    const int Mpi = 120;
    auto F = BrigSeries::pi(R, Mpi);  // pi alone is not a transform
    CHECK_THROWS_AS(mellin_inverse(F, 6, /*exact_image=*/true), mellin_image_error);
}

TEST_CASE("log_tilde: empty product and vanishing at matched characters") {
    auto R = make_zp_ring(5, 12);
    const int M = 24;
    auto lt0 = log_tilde(R, M, Sign::Plus, 2, 0);
    CHECK(lt0.series.shift() == 1);
    CHECK(series_equal(lt0.series, IwaSeries::one(R, M).with_shift(1)).equal);

    // shared vanishing locus with the signed log: gamma0 -> zeta of order p^2
    auto lt = log_tilde(R, M, Sign::Plus, 2, 1);
    CHECK(lt.series.shift() == 2);
    auto E2 = ExtRing::cyclo_p_power(R, 2);
    auto lg = pollack_log(R, M, Sign::Plus, 2, 1);
    CHECK(eval_character(lg, E2, 0).num.is_zero());  // oracle locus, exact
    auto ev = eval_character(lt.series, E2, 0);
    auto v = ev.num.valuation();
    CHECK((v.at_least || v.approx() >= 2.0));
    // refining the truncation does not destroy the vanishing
    auto lt2 = log_tilde(R, M + 8, Sign::Plus, 2, 1);
    auto ev2 = eval_character(lt2.series, ExtRing::cyclo_p_power(R, 2), 0);
    auto v2 = ev2.num.valuation();
    CHECK((v2.at_least || v2.approx() >= 2.0));
}

TEST_CASE("tilde units: membership and the tau functional equation") {
    auto R = make_zp_ring(5, 12);
    const int M = 16;
    for (auto sign : {Sign::Plus, Sign::Minus}) {
        for (int k : {2, 4}) {
            for (int n_max : {1, 2}) {
                auto tu = tilde_units(R, M, sign, k, n_max);
                CHECK(tu.membership.pass);
                CHECK(tu.fe_cross.pass);
                CHECK(R->val(R->reduce(tu.u_tilde.coeff(0) - 1)) >= 1);
            }
        }
    }
    // n_max = 0 degenerates to 1
    auto tu0 = tilde_units(R, M, Sign::Plus, 2, 0);
    CHECK(series_equal(tu0.u_tilde, IwaSeries::one(R, M)).equal);
    CHECK(tu0.membership.pass);
}
