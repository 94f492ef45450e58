#include "padicfe/brig.hpp"

#include <algorithm>
#include <sstream>

namespace padicfe {

long vp_factorial(unsigned long n, unsigned long p) {
    long v = 0;
    while (n) {
        n /= p;
        v += long(n);
    }
    return v;
}

BrigSeries::BrigSeries(ZpRingPtr ring, int Mpi, long shift, std::vector<mpz_class> coeffs)
    : ring_(std::move(ring)), Mpi_(Mpi), shift_(shift), c_(std::move(coeffs)) {
    if (Mpi_ < 2) throw domain_error("pi-truncation must be >= 2");
    c_.resize(size_t(Mpi_));
    for (auto& x : c_) x = ring_->reduce(x);
}

BrigSeries BrigSeries::zero(ZpRingPtr ring, int Mpi) { return BrigSeries(std::move(ring), Mpi, 0, {}); }

BrigSeries BrigSeries::one(ZpRingPtr ring, int Mpi) {
    std::vector<mpz_class> c{1};
    return BrigSeries(std::move(ring), Mpi, 0, std::move(c));
}

BrigSeries BrigSeries::pi(ZpRingPtr ring, int Mpi) {
    std::vector<mpz_class> c{0, 1};
    return BrigSeries(std::move(ring), Mpi, 0, std::move(c));
}

BrigSeries BrigSeries::one_plus_pi_pow(ZpRingPtr ring, int Mpi, const mpz_class& c) {
    std::vector<mpz_class> out(static_cast<size_t>(Mpi));
    mpz_class run = 1;
    for (int i = 0; i < Mpi; ++i) {
        out[size_t(i)] = ring->reduce(run);
        run *= (c - i);
        mpz_divexact_ui(run.get_mpz_t(), run.get_mpz_t(), (unsigned long)(i + 1));
    }
    return BrigSeries(std::move(ring), Mpi, 0, std::move(out));
}

bool BrigSeries::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const mpz_class& x) { return x == 0; });
}

static void check_brig_compat(const BrigSeries& a, const BrigSeries& b, const char* where) {
    check_same_ring(*a.ring(), *b.ring(), where);
    if (a.trunc() != b.trunc())
        throw ring_mismatch(std::string(where) + ": different pi-truncations");
}

BrigSeries operator+(const BrigSeries& a, const BrigSeries& b) {
    check_brig_compat(a, b, "BrigSeries+");
    long e = std::max(a.shift(), b.shift());
    mpz_class sa, sb;
    mpz_ui_pow_ui(sa.get_mpz_t(), a.ring()->p(), (unsigned long)(e - a.shift()));
    mpz_ui_pow_ui(sb.get_mpz_t(), b.ring()->p(), (unsigned long)(e - b.shift()));
    std::vector<mpz_class> c(size_t(a.trunc()));
    for (size_t i = 0; i < c.size(); ++i)
        c[i] = a.ring()->reduce(a.coeffs()[i] * sa + b.coeffs()[i] * sb);
    return BrigSeries(a.ring(), a.trunc(), e, std::move(c));
}

BrigSeries BrigSeries::operator-() const {
    std::vector<mpz_class> c(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) c[i] = ring_->reduce(-c_[i]);
    return BrigSeries(ring_, Mpi_, shift_, std::move(c));
}

BrigSeries operator-(const BrigSeries& a, const BrigSeries& b) { return a + (-b); }

BrigSeries operator*(const BrigSeries& a, const BrigSeries& b) {
    check_brig_compat(a, b, "BrigSeries*");
    std::vector<mpz_class> c(size_t(a.trunc()), 0);
    for (int i = 0; i < a.trunc(); ++i) {
        if (a.coeffs()[size_t(i)] == 0) continue;
        for (int j = 0; i + j < a.trunc(); ++j)
            if (b.coeffs()[size_t(j)] != 0)
                c[size_t(i + j)] += a.coeffs()[size_t(i)] * b.coeffs()[size_t(j)];
    }
    return BrigSeries(a.ring(), a.trunc(), a.shift() + b.shift(), std::move(c));
}

BrigSeries BrigSeries::scale(const mpz_class& s) const {
    std::vector<mpz_class> c(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) c[i] = ring_->mul(c_[i], s);
    return BrigSeries(ring_, Mpi_, shift_, std::move(c));
}

BrigSeries BrigSeries::with_shift(long e) const { return BrigSeries(ring_, Mpi_, e, c_); }

BrigSeries BrigSeries::invert_unit() const {
    if (ring_->val(c_[0]) != 0) throw not_invertible("not invertible at this precision");
    mpz_class i0 = ring_->inv(c_[0]);
    std::vector<mpz_class> w(c_.size(), 0);
    w[0] = i0;
    for (size_t t = 1; t < c_.size(); ++t) {
        mpz_class s = 0;
        for (size_t r = 0; r < t; ++r)
            if (w[r] != 0 && c_[t - r] != 0) s += w[r] * c_[t - r];
        w[t] = ring_->reduce(-s * i0);
    }
    return BrigSeries(ring_, Mpi_, -shift_, std::move(w));
}

bool operator==(const BrigSeries& a, const BrigSeries& b) {
    check_brig_compat(a, b, "BrigSeries==");
    long e = std::max(a.shift(), b.shift());
    mpz_class sa, sb;
    mpz_ui_pow_ui(sa.get_mpz_t(), a.ring()->p(), (unsigned long)(e - a.shift()));
    mpz_ui_pow_ui(sb.get_mpz_t(), b.ring()->p(), (unsigned long)(e - b.shift()));
    for (int i = 0; i < a.trunc(); ++i)
        if (a.ring()->reduce(a.coeffs()[size_t(i)] * sa) !=
            a.ring()->reduce(b.coeffs()[size_t(i)] * sb))
            return false;
    return true;
}

namespace {

// compose f with g, ord_pi(g) >= 1; exact in every degree < Mpi
BrigSeries compose(const BrigSeries& f, const BrigSeries& g) {
    check_brig_compat(f, g, "compose");
    if (g.coeff(0) != 0) throw domain_error("composition needs ord_pi >= 1");
    auto ring = f.ring();
    BrigSeries acc = BrigSeries::zero(ring, f.trunc());
    BrigSeries cur = BrigSeries::one(ring, f.trunc());
    for (int i = 0; i < f.trunc(); ++i) {
        if (f.coeffs()[size_t(i)] != 0) acc = acc + cur.scale(f.coeffs()[size_t(i)]);
        if (i + 1 < f.trunc()) cur = cur * g;
    }
    return acc.with_shift(acc.shift() + f.shift());
}

BrigSeries phi_pi(const ZpRingPtr& ring, int Mpi, int iterates = 1) {
    mpz_class e;
    mpz_ui_pow_ui(e.get_mpz_t(), ring->p(), (unsigned long)iterates);
    return BrigSeries::one_plus_pi_pow(ring, Mpi, e) - BrigSeries::one(ring, Mpi);
}

}  // namespace

BrigSeries frobenius(const BrigSeries& f) { return compose(f, phi_pi(f.ring(), f.trunc())); }

BrigSeries gamma_action(const BrigSeries& f, const mpz_class& c) {
    auto g =
        BrigSeries::one_plus_pi_pow(f.ring(), f.trunc(), c) - BrigSeries::one(f.ring(), f.trunc());
    return compose(f, g);
}

BrigSeries dee(const BrigSeries& f) {
    std::vector<mpz_class> c(size_t(f.trunc()), 0);
    for (int s = 0; s < f.trunc(); ++s) {
        mpz_class t = 0;
        if (s + 1 < f.trunc()) t += mpz_class(s + 1) * f.coeff(s + 1);
        t += mpz_class(s) * f.coeff(s);
        c[size_t(s)] = f.ring()->reduce(t);
    }
    return BrigSeries(f.ring(), f.trunc(), f.shift(), std::move(c));
}

std::pair<BrigSeries, BrigSeries> q_delta(const ZpRingPtr& ring, int Mpi) {
    unsigned long p = ring->p();
    std::vector<mpz_class> qc(size_t(Mpi), 0);
    for (unsigned long s = 0; s < p && long(s) < Mpi; ++s) qc[s] = binom_exact(mpz_class(p), s + 1);
    BrigSeries q(ring, Mpi, 0, std::move(qc));
    std::vector<mpz_class> dc(size_t(Mpi), 0);
    for (unsigned long s = 0; s + 1 < p && long(s) < Mpi; ++s) {
        mpz_class b = binom_exact(mpz_class(p), s + 1);
        mpz_divexact_ui(b.get_mpz_t(), b.get_mpz_t(), p);
        dc[s] = b;
    }
    BrigSeries dinv(ring, Mpi, 0, std::move(dc));  // (q - pi^(p-1))/p, a unit
    return {q, dinv.invert_unit()};
}

BrigSeries psi(const BrigSeries& f) {
    auto ring = f.ring();
    const int Mpi = f.trunc();
    // internal precision +1 absorbs the single exact division by p
    auto ring1 = make_zp_ring(ring->p(), ring->precision() + 1);
    auto E = ExtRing::cyclo_p_power(ring1, 1);

    // compose f with zeta(1+pi) - 1 over the zeta_p ring, trace down
    std::vector<ExtElem> acc(size_t(Mpi), ExtElem::zero(E));
    {
        ExtElem t0 = ExtElem::gen(E) - ExtElem::one(E);
        ExtElem t1 = ExtElem::gen(E);
        std::vector<ExtElem> cur(size_t(Mpi), ExtElem::zero(E));
        cur[0] = ExtElem::one(E);
        for (int i = 0; i < Mpi; ++i) {
            const mpz_class& fi = f.coeffs()[size_t(i)];
            if (fi != 0)
                for (int s = 0; s <= i && s < Mpi; ++s)
                    if (!cur[size_t(s)].is_zero())
                        acc[size_t(s)] = acc[size_t(s)] + cur[size_t(s)].scale(fi);
            if (i + 1 < Mpi) {
                std::vector<ExtElem> nxt(size_t(Mpi), ExtElem::zero(E));
                for (int s = 0; s <= i && s < Mpi; ++s) {
                    if (cur[size_t(s)].is_zero()) continue;
                    nxt[size_t(s)] = nxt[size_t(s)] + cur[size_t(s)] * t0;
                    if (s + 1 < Mpi) nxt[size_t(s + 1)] = nxt[size_t(s + 1)] + cur[size_t(s)] * t1;
                }
                cur = std::move(nxt);
            }
        }
    }
    // S = f(pi) + Tr f(zeta(1+pi)-1) = p * (psi(f) o phi)
    std::vector<mpz_class> D(static_cast<size_t>(Mpi));
    for (int s = 0; s < Mpi; ++s) {
        mpz_class total = ring1->add(acc[size_t(s)].trace(), ring1->reduce(f.coeffs()[size_t(s)]));
        if (!mpz_divisible_ui_p(total.get_mpz_t(), ring->p()))
            throw domain_error("non-integral descent: internal inconsistency in psi");
        mpz_divexact_ui(total.get_mpz_t(), total.get_mpz_t(), ring->p());
        D[size_t(s)] = ring->reduce(total);
    }
    // descent along phi through the (1+pi)^j basis: only p | j survives.
    // Pascal inverse: a_j = sum_{t>=j} (-1)^(t-j) binom(t,j) D_t
    std::vector<mpz_class> a(size_t(Mpi), 0);
    for (int j = 0; j < Mpi; ++j) {
        mpz_class s = 0;
        for (int t = j; t < Mpi; ++t) {
            if (D[size_t(t)] == 0) continue;
            mpz_class b = binom_exact(mpz_class(t), (unsigned long)j);
            if ((t - j) % 2) b = -b;
            s += b * D[size_t(t)];
        }
        a[size_t(j)] = ring->reduce(s);
        if (a[size_t(j)] != 0 && j % long(ring->p()) != 0)
            throw domain_error("non-integral descent: image not in the phi-span");
    }
    std::vector<mpz_class> out(size_t(Mpi), 0);
    for (int j = 0; j * long(ring->p()) < Mpi; ++j) {
        const mpz_class& aj = a[size_t(j * long(ring->p()))];
        if (aj == 0) continue;
        mpz_class run = 1;  // binom(j, s)
        for (int s = 0; s <= j && s < Mpi; ++s) {
            out[size_t(s)] += aj * run;
            run *= (j - s);
            mpz_divexact_ui(run.get_mpz_t(), run.get_mpz_t(), (unsigned long)(s + 1));
        }
    }
    return BrigSeries(ring, Mpi, f.shift(), std::move(out));
}

BrigSeries mellin(const IwaSeries& f, int Mpi) {
    auto ring = f.ring();
    const int M = f.trunc();
    // group basis: f = sum_j a_j gamma0^j; Pascal inverse
    // a_j = sum_{t>=j} (-1)^(t-j) binom(t,j) c_t
    std::vector<mpz_class> a(size_t(M), 0);
    for (int j = 0; j < M; ++j) {
        mpz_class s = 0;
        for (int t = j; t < M; ++t) {
            if (f.coeffs()[size_t(t)] == 0) continue;
            mpz_class b = binom_exact(mpz_class(t), (unsigned long)j);
            if ((t - j) % 2) b = -b;
            s += b * f.coeffs()[size_t(t)];
        }
        a[size_t(j)] = ring->reduce(s);
    }
    std::vector<mpz_class> out(size_t(Mpi), 0);
    mpz_class ujq = 1;  // exact u^j
    const mpz_class uexact = mpz_class(ring->p() + 1);
    for (int j = 0; j < M; ++j) {
        if (a[size_t(j)] != 0) {
            mpz_class run = 1;  // exact binom(u^j, s)
            for (int s = 0; s < Mpi; ++s) {
                out[size_t(s)] += a[size_t(j)] * ring->reduce(run);
                run *= (ujq - s);
                mpz_divexact_ui(run.get_mpz_t(), run.get_mpz_t(), (unsigned long)(s + 1));
            }
        }
        ujq *= uexact;
    }
    return BrigSeries(ring, Mpi, f.shift(), std::move(out));
}

MellinInverse mellin_inverse(const BrigSeries& F, int M, bool exact_image) {
    auto ring = F.ring();
    const int N = ring->precision();
    const unsigned long p = ring->p();
    if (M < 1 || M > F.trunc()) throw domain_error("mellin_inverse: need 1 <= M <= Mpi");

    // moments G_m = sum_s S2(m,s) s! F_s
    std::vector<std::vector<mpz_class>> S2(size_t(M), std::vector<mpz_class>(size_t(M), 0));
    S2[0][0] = 1;
    for (int m = 1; m < M; ++m)
        for (int s = 1; s <= m; ++s)
            S2[size_t(m)][size_t(s)] =
                S2[size_t(m - 1)][size_t(s - 1)] + mpz_class(s) * S2[size_t(m - 1)][size_t(s)];
    std::vector<mpz_class> G(size_t(M), 0);
    for (int m = 0; m < M; ++m) {
        mpz_class t = 0;
        for (int s = 0; s <= m; ++s)
            if (F.coeff(s) != 0 && S2[size_t(m)][size_t(s)] != 0)
                t += S2[size_t(m)][size_t(s)] * factorial_exact((unsigned long)s) * F.coeff(s);
        G[size_t(m)] = ring->reduce(t);
    }

    std::vector<mpz_class> xi(static_cast<size_t>(M));
    {
        mpz_class u = mpz_class(p + 1), run = 1;
        for (int j = 0; j < M; ++j) {
            xi[size_t(j)] = run;
            run *= u;
        }
    }
    std::vector<mpz_class> P(size_t(M) + 1, 0);
    P[0] = 1;
    for (int t = 0; t < M; ++t)
        for (int i = t + 1; i >= 0; --i) {
            mpz_class v = (i > 0) ? P[size_t(i - 1)] : mpz_class(0);
            P[size_t(i)] = ring->reduce(v - xi[size_t(t)] * P[size_t(i)]);
        }

    std::vector<mpz_class> a(size_t(M), 0);
    long delta_audit = 0;
    for (int j = 0; j < M; ++j) {
        std::vector<mpz_class> lj(size_t(M), 0);
        mpz_class carry = P[size_t(M)];
        for (int i = M - 1; i >= 0; --i) {
            lj[size_t(i)] = carry;
            carry = ring->reduce(P[size_t(i)] + xi[size_t(j)] * carry);
        }
        long vD = 0;
        mpz_class unitD = 1;
        for (int t = 0; t < M; ++t) {
            if (t == j) continue;
            mpz_class d = xi[size_t(j)] - xi[size_t(t)];  // exact integer
            long v = vp_long(d, p);
            vD += v;
            mpz_class pv;
            mpz_ui_pow_ui(pv.get_mpz_t(), p, (unsigned long)v);
            mpz_divexact(d.get_mpz_t(), d.get_mpz_t(), pv.get_mpz_t());
            unitD = ring->mul(unitD, d);
        }
        mpz_class num = 0;
        for (int m = 0; m < M; ++m)
            if (G[size_t(m)] != 0 && lj[size_t(m)] != 0) num += lj[size_t(m)] * G[size_t(m)];
        num = ring->reduce(num);
        if (num != 0 && ring->val(num) < int(vD))
            throw mellin_image_error("not in Mellin image at this precision");
        a[size_t(j)] = ring->mul(ring->divexact_p(num, int(vD)), ring->inv(unitD));
        delta_audit = std::max(delta_audit, vD);
    }

    std::vector<mpz_class> c(size_t(M), 0);
    for (int i = 0; i < M; ++i) {
        mpz_class s = 0;
        for (int j = i; j < M; ++j)
            if (a[size_t(j)] != 0) s += binom_exact(mpz_class(j), (unsigned long)i) * a[size_t(j)];
        c[size_t(i)] = ring->reduce(s);
    }
    IwaSeries out(ring, M, F.shift(), std::move(c));

    // residual audit past the solved degrees
    int window = std::min(F.trunc(), 2 * M + 16);
    std::vector<mpz_class> R(size_t(window), 0);
    for (int s = 0; s < window; ++s) R[size_t(s)] = F.coeff(s);
    for (int j = 0; j < M; ++j) {
        if (a[size_t(j)] == 0) continue;
        mpz_class run = 1;
        for (int s = 0; s < window; ++s) {
            R[size_t(s)] -= a[size_t(j)] * ring->reduce(run);
            run *= (xi[size_t(j)] - s);
            mpz_divexact_ui(run.get_mpz_t(), run.get_mpz_t(), (unsigned long)(s + 1));
        }
    }
    int floor_enforced = N;
    for (int s = 0; s < window; ++s) {
        mpz_class r = ring->reduce(R[size_t(s)]);
        if (r == 0) continue;
        long tol;
        if (exact_image) {
            tol = std::max<long>(0, N - delta_audit);
        } else {
            // group-basis tails pollute degree s with valuation >= M - v_p(s!)
            tol = std::max<long>(
                0, std::min<long>(N - delta_audit, M - vp_factorial((unsigned long)s, p)));
        }
        floor_enforced = std::min<int>(floor_enforced, int(tol));
        if (ring->val(r) < int(tol))
            throw mellin_image_error("not in Mellin image at this precision");
    }

    return MellinInverse{out, delta_audit, long(M) * (M - 1) / 2, floor_enforced};
}

LogTilde log_tilde(const ZpRingPtr& ring, int M, Sign sign, int k, int n_max, bool tw) {
    if (k < 2 || k % 2 != 0) throw domain_error("weight must be even and >= 2");
    if (n_max < 0) throw domain_error("n_max must be >= 0");
    const unsigned long p = ring->p();
    const int N = ring->precision();
    long pad = (M - 1) + vp_factorial((unsigned long)(M - 1), p) + 8;
    auto work = make_zp_ring(p, N + int(pad));
    const int Mpi = 2 * M + 24;

    std::vector<mpz_class> qpoly(p), dinvpoly(p - 1);
    for (unsigned long s = 0; s < p; ++s) qpoly[s] = binom_exact(mpz_class(p), s + 1);
    for (unsigned long s = 0; s + 1 < p; ++s) {
        mpz_class b = binom_exact(mpz_class(p), s + 1);
        mpz_divexact_ui(b.get_mpz_t(), b.get_mpz_t(), p);
        dinvpoly[s] = b;
    }
    auto compose_poly = [&](const std::vector<mpz_class>& poly, int phi_iter) {
        mpz_class e;
        mpz_ui_pow_ui(e.get_mpz_t(), p, (unsigned long)phi_iter);
        BrigSeries g = BrigSeries::one_plus_pi_pow(work, Mpi, e) - BrigSeries::one(work, Mpi);
        BrigSeries acc = BrigSeries::zero(work, Mpi);
        BrigSeries cur = BrigSeries::one(work, Mpi);
        for (size_t t = 0; t < poly.size(); ++t) {
            if (poly[t] != 0) acc = acc + cur.scale(poly[t]);
            if (t + 1 < poly.size()) cur = cur * g;
        }
        return acc;
    };

    BrigSeries bracket = BrigSeries::one(work, Mpi);
    for (int n = 1; n <= n_max; ++n) {
        // phi-levels pair as (q, delta) = (2n, 2n+1) for + and (2n-1, 2n)
        // for -, so the zero sets match the signed logarithms level by level
        int aq = sign == Sign::Plus ? 2 * n : 2 * n - 1;
        int ad = sign == Sign::Plus ? 2 * n + 1 : 2 * n;
        bracket = bracket * compose_poly(qpoly, aq);
        bracket = bracket * compose_poly(dinvpoly, ad);
    }
    BrigSeries powed = BrigSeries::one(work, Mpi);
    for (int t = 0; t < k - 1; ++t) powed = powed * bracket;
    BrigSeries F = powed * (BrigSeries::one(work, Mpi) + BrigSeries::pi(work, Mpi));
    if (tw)
        for (int t = 0; t < k / 2 - 1; ++t) F = dee(F);

    auto inv = mellin_inverse(F, M, false);
    IwaSeries series = inv.series.lower_precision(make_zp_ring(p, N));
    return LogTilde{series.with_shift(long(k - 1) * (n_max + 1)), inv.delta_audit};
}

namespace {

// the pi-side polynomial F = (1+pi) * bracket^(k-1) with the weight twist
// applied upstairs as dee^(k/2-1)
BrigSeries halflog_transform(const ZpRingPtr& work, int Mpi, Sign sign, int k, int n_max,
                             bool tw) {
    const unsigned long p = work->p();
    std::vector<mpz_class> qpoly(p), dinvpoly(p - 1);
    for (unsigned long s = 0; s < p; ++s) qpoly[s] = binom_exact(mpz_class(p), s + 1);
    for (unsigned long s = 0; s + 1 < p; ++s) {
        mpz_class b = binom_exact(mpz_class(p), s + 1);
        mpz_divexact_ui(b.get_mpz_t(), b.get_mpz_t(), p);
        dinvpoly[s] = b;
    }
    auto compose_poly = [&](const std::vector<mpz_class>& poly, int phi_iter) {
        mpz_class e;
        mpz_ui_pow_ui(e.get_mpz_t(), p, (unsigned long)phi_iter);
        BrigSeries g = BrigSeries::one_plus_pi_pow(work, Mpi, e) - BrigSeries::one(work, Mpi);
        BrigSeries acc = BrigSeries::zero(work, Mpi);
        BrigSeries cur = BrigSeries::one(work, Mpi);
        for (size_t t = 0; t < poly.size(); ++t) {
            if (poly[t] != 0) acc = acc + cur.scale(poly[t]);
            if (t + 1 < poly.size()) cur = cur * g;
        }
        return acc;
    };
    BrigSeries bracket = BrigSeries::one(work, Mpi);
    for (int n = 1; n <= n_max; ++n) {
        int aq = sign == Sign::Plus ? 2 * n : 2 * n - 1;
        int ad = sign == Sign::Plus ? 2 * n + 1 : 2 * n;
        bracket = bracket * compose_poly(qpoly, aq);
        bracket = bracket * compose_poly(dinvpoly, ad);
    }
    BrigSeries powed = BrigSeries::one(work, Mpi);
    for (int t = 0; t < k - 1; ++t) powed = powed * bracket;
    BrigSeries F = powed * (BrigSeries::one(work, Mpi) + BrigSeries::pi(work, Mpi));
    if (tw)
        for (int t = 0; t < k / 2 - 1; ++t) F = dee(F);
    return F;
}

// Solve sum_j a_j * gamma_action(G, u^j) = F on pi-degrees < M for the
// comparison factor v = sum_j a_j gamma0^j; both sides are exact, so this
// is a plain valuation-pivoted elimination with a loss audit.
struct RelSolve {
    IwaSeries v;
    long delta;
};
RelSolve solve_relative_unit(const BrigSeries& F, const BrigSeries& G, int M) {
    auto ring = F.ring();
    const unsigned long p = ring->p();
    const int N = ring->precision();
    std::vector<std::vector<mpz_class>> A(size_t(M), std::vector<mpz_class>(size_t(M) + 1, 0));
    mpz_class ujq = 1;
    const mpz_class uexact = mpz_class(p + 1);
    for (int j = 0; j < M; ++j) {
        BrigSeries col = gamma_action(G, ujq);
        for (int s = 0; s < M; ++s) A[size_t(s)][size_t(j)] = col.coeff(s);
        ujq *= uexact;
    }
    for (int s = 0; s < M; ++s) A[size_t(s)][size_t(M)] = F.coeff(s);

    std::vector<int> pivot_col(size_t(M), -1);
    std::vector<long> row_level(size_t(M), N);  // row known mod p^level
    std::vector<bool> row_used(size_t(M), false), col_done(size_t(M), false);
    long delta = 0;
    for (int step = 0; step < M; ++step) {
        int br = -1, bc = -1;
        int bv = N + 1;
        for (int r = 0; r < M; ++r) {
            if (row_used[size_t(r)]) continue;
            for (int c = 0; c < M; ++c) {
                if (col_done[size_t(c)]) continue;
                if (A[size_t(r)][size_t(c)] == 0) continue;
                int v = ring->val(A[size_t(r)][size_t(c)]);
                if (v < bv) {
                    bv = v;
                    br = r;
                    bc = c;
                }
            }
        }
        if (br < 0) throw mellin_image_error("comparison-unit system is singular at this precision");
        row_used[size_t(br)] = true;
        col_done[size_t(bc)] = true;
        pivot_col[size_t(br)] = bc;
        // normalize pivot row: divide by p^bv * unit
        mpz_class unit = ring->divexact_p(A[size_t(br)][size_t(bc)], bv);
        mpz_class iu = ring->inv(unit);
        for (int c = 0; c <= M; ++c) {
            if (A[size_t(br)][size_t(c)] == 0) continue;
            if (ring->val(A[size_t(br)][size_t(c)]) < bv)
                throw mellin_image_error("pivot is not minimal: elimination failed");
            A[size_t(br)][size_t(c)] = ring->mul(ring->divexact_p(A[size_t(br)][size_t(c)], bv), iu);
        }
        row_level[size_t(br)] -= bv;
        delta = std::max(delta, long(N) - row_level[size_t(br)]);
        for (int r = 0; r < M; ++r) {
            if (r == br || A[size_t(r)][size_t(bc)] == 0) continue;
            mpz_class f = A[size_t(r)][size_t(bc)];
            for (int c = 0; c <= M; ++c)
                if (A[size_t(br)][size_t(c)] != 0)
                    A[size_t(r)][size_t(c)] =
                        ring->sub(A[size_t(r)][size_t(c)], ring->mul(f, A[size_t(br)][size_t(c)]));
            row_level[size_t(r)] = std::min(row_level[size_t(r)], row_level[size_t(br)]);
        }
    }
    std::vector<mpz_class> a(size_t(M), 0);
    for (int r = 0; r < M; ++r) a[size_t(pivot_col[size_t(r)])] = A[size_t(r)][size_t(M)];
    // v-coefficients from the group basis
    std::vector<mpz_class> c(size_t(M), 0);
    for (int i = 0; i < M; ++i) {
        mpz_class s = 0;
        for (int j = i; j < M; ++j)
            if (a[size_t(j)] != 0) s += binom_exact(mpz_class(j), (unsigned long)i) * a[size_t(j)];
        c[size_t(i)] = ring->reduce(s);
    }
    return RelSolve{IwaSeries(ring, M, 0, std::move(c)), delta};
}

}  // namespace

TildeUnits tilde_units(const ZpRingPtr& ring, int M, Sign sign, int k, int n_max) {
    const unsigned long p = ring->p();
    const int N = ring->precision();
    long pad = long(M) * (M - 1) / 2 + vp_factorial((unsigned long)M, p) +
               long(M) * (k - 1) * std::max(1, n_max) + 24;
    auto work = make_zp_ring(p, N + int(pad));
    auto target = make_zp_ring(p, N);

    TildeUnits out{IwaSeries::one(target, M), IwaSeries::one(target, M), {}, {}};
    std::ostringstream ps;
    ps << "p=" << p << " N=" << N << " M=" << M << " k=" << k << " n_max=" << n_max
       << " sign=" << (sign == Sign::Plus ? "+" : "-");

    IwaSeries utilde_w = IwaSeries::one(work, M);
    IwaSeries logt_w = IwaSeries::one(work, M).with_shift(k - 1);  // empty-product shape
    if (n_max >= 1) {
        try {
            const int Mpi = 2 * M + 24;
            IwaSeries logp_w = pollack_log_tw(work, M, sign, k, n_max);
            BrigSeries F = halflog_transform(work, Mpi, sign, k, n_max, /*tw=*/true);
            BrigSeries G = mellin(logp_w.with_shift(0), Mpi);
            auto rs = solve_relative_unit(F, G, M);
            IwaSeries v = rs.v;
            auto vinv = divide_series(IwaSeries::one(work, M), v);
            utilde_w = tau(v) * vinv.q * u_plusminus(work, M, sign, k, n_max);
            // the twisted half-log at matched cutoffs is v times the signed
            // log, keeping the functional equation exact at truncation
            logt_w = v * logp_w;
            out.v = v.lower_precision(target);
        } catch (const std::exception& e) {
            out.membership.name = "tilde-unit-membership";
            out.membership.anchor = "signed-unit-one-plus-p-membership";
            out.membership.params = ps.str();
            out.membership.pass = false;
            out.membership.witness = e.what();
            out.fe_cross = out.membership;
            out.fe_cross.name = "half-log-involution-fe";
            out.fe_cross.anchor = "twisted-half-log-tau-transform";
            return out;
        }
    }

    out.u_tilde = utilde_w.lower_precision(target);

    CheckResult memb;
    memb.name = "tilde-unit-membership";
    memb.anchor = "signed-unit-one-plus-p-membership";
    memb.params = ps.str();
    memb.pass = out.u_tilde.shift() == 0 && one_unit_plus_T_integral(out.u_tilde);
    memb.effective_precision = N;
    if (!memb.pass) memb.witness = "constant term " + out.u_tilde.coeff(0).get_str();
    out.membership = memb;

    CheckResult fe;
    fe.name = "half-log-involution-fe";
    fe.anchor = "twisted-half-log-tau-transform";
    fe.params = ps.str();
    IwaSeries lhs = tau(logt_w).lower_precision(target);
    IwaSeries rhs = (utilde_w * logt_w).lower_precision(target);
    auto eq = series_equal(lhs, rhs);
    fe.pass = eq.equal;
    fe.effective_precision = eq.effective_precision;
    if (!eq.equal) {
        std::ostringstream os;
        os << "first differing coefficient T^" << eq.first_diff;
        fe.witness = os.str();
    }
    out.fe_cross = fe;
    return out;
}

}  // namespace padicfe
