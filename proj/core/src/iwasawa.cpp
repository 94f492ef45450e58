#include "padicfe/iwasawa.hpp"

#include <algorithm>
#include <sstream>

namespace padicfe {

IwaSeries::IwaSeries(ZpRingPtr ring, int M, long shift, std::vector<mpz_class> coeffs)
    : ring_(std::move(ring)), M_(M), shift_(shift), c_(std::move(coeffs)) {
    if (M_ < 1) throw domain_error("truncation must be >= 1");
    c_.resize(size_t(M_));
    for (auto& x : c_) x = ring_->reduce(x);
}

IwaSeries IwaSeries::zero(ZpRingPtr ring, int M) {
    return IwaSeries(std::move(ring), M, 0, {});
}

IwaSeries IwaSeries::one(ZpRingPtr ring, int M) {
    std::vector<mpz_class> c{1};
    return IwaSeries(std::move(ring), M, 0, std::move(c));
}

IwaSeries IwaSeries::tee(ZpRingPtr ring, int M) {
    std::vector<mpz_class> c{0, 1};
    return IwaSeries(std::move(ring), M, 0, std::move(c));
}

IwaSeries IwaSeries::constant(ZpRingPtr ring, int M, const mpz_class& a) {
    std::vector<mpz_class> c{a};
    return IwaSeries(std::move(ring), M, 0, std::move(c));
}

bool IwaSeries::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](const mpz_class& x) { return x == 0; });
}

static void check_series_compat(const IwaSeries& a, const IwaSeries& b, const char* where) {
    check_same_ring(*a.ring(), *b.ring(), where);
    if (a.trunc() != b.trunc())
        throw ring_mismatch(std::string(where) + ": different truncation degrees");
}

IwaSeries operator+(const IwaSeries& a, const IwaSeries& b) {
    check_series_compat(a, b, "IwaSeries+");
    long e = std::max(a.shift(), b.shift());
    mpz_class sa, sb;
    mpz_ui_pow_ui(sa.get_mpz_t(), a.ring()->p(), (unsigned long)(e - a.shift()));
    mpz_ui_pow_ui(sb.get_mpz_t(), b.ring()->p(), (unsigned long)(e - b.shift()));
    std::vector<mpz_class> c(size_t(a.trunc()));
    for (size_t i = 0; i < c.size(); ++i)
        c[i] = a.ring()->reduce(a.coeffs()[i] * sa + b.coeffs()[i] * sb);
    return IwaSeries(a.ring(), a.trunc(), e, std::move(c));
}

IwaSeries operator-(const IwaSeries& a, const IwaSeries& b) { return a + (-b); }

IwaSeries IwaSeries::operator-() const {
    std::vector<mpz_class> c(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) c[i] = ring_->reduce(-c_[i]);
    return IwaSeries(ring_, M_, shift_, std::move(c));
}

IwaSeries operator*(const IwaSeries& a, const IwaSeries& b) {
    check_series_compat(a, b, "IwaSeries*");
    std::vector<mpz_class> c(size_t(a.trunc()), 0);
    for (int i = 0; i < a.trunc(); ++i) {
        if (a.coeffs()[size_t(i)] == 0) continue;
        for (int j = 0; i + j < a.trunc(); ++j)
            if (b.coeffs()[size_t(j)] != 0)
                c[size_t(i + j)] += a.coeffs()[size_t(i)] * b.coeffs()[size_t(j)];
    }
    return IwaSeries(a.ring(), a.trunc(), a.shift() + b.shift(), std::move(c));
}

IwaSeries IwaSeries::scale(const mpz_class& s) const {
    std::vector<mpz_class> c(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) c[i] = ring_->mul(c_[i], s);
    return IwaSeries(ring_, M_, shift_, std::move(c));
}

IwaSeries IwaSeries::with_shift(long e) const { return IwaSeries(ring_, M_, e, c_); }

IwaSeries IwaSeries::reduce_shift(long k) const {
    std::vector<mpz_class> c(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) c[i] = ring_->divexact_p(c_[i], int(k));
    return IwaSeries(ring_, M_, shift_ - k, std::move(c));
}

IwaSeries IwaSeries::truncate(int M) const {
    std::vector<mpz_class> c(c_.begin(), c_.begin() + std::min(size_t(M), c_.size()));
    return IwaSeries(ring_, M, shift_, std::move(c));
}

IwaSeries IwaSeries::lower_precision(const ZpRingPtr& target) const {
    if (target->p() != ring_->p() || target->precision() > ring_->precision())
        throw ring_mismatch("lower_precision: target must share p with smaller N");
    std::vector<mpz_class> c(c_);
    return IwaSeries(target, M_, shift_, std::move(c));
}

std::string IwaSeries::str(int max_terms) const {
    std::ostringstream os;
    if (shift_ != 0) os << "p^-" << shift_ << " * (";
    bool first = true;
    int shown = 0;
    for (int i = 0; i < M_ && shown < max_terms; ++i) {
        if (c_[size_t(i)] == 0) continue;
        if (!first) os << " + ";
        os << c_[size_t(i)].get_str();
        if (i > 0) os << "*T^" << i;
        first = false;
        ++shown;
    }
    if (first) os << "0";
    if (shown == max_terms) os << " + ...";
    if (shift_ != 0) os << ")";
    return os.str();
}

SeriesEq series_equal(const IwaSeries& a, const IwaSeries& b) {
    check_series_compat(a, b, "series_equal");
    long e = std::max(a.shift(), b.shift());
    mpz_class sa, sb;
    mpz_ui_pow_ui(sa.get_mpz_t(), a.ring()->p(), (unsigned long)(e - a.shift()));
    mpz_ui_pow_ui(sb.get_mpz_t(), b.ring()->p(), (unsigned long)(e - b.shift()));
    int eff = int(std::max<long>(0, a.ring()->precision() - e));
    for (int i = 0; i < a.trunc(); ++i) {
        if (a.ring()->reduce(a.coeffs()[size_t(i)] * sa) !=
            a.ring()->reduce(b.coeffs()[size_t(i)] * sb))
            return SeriesEq{false, eff, i};
    }
    return SeriesEq{true, eff, -1};
}

SeriesEq series_equal_ideal(const IwaSeries& a, const IwaSeries& b) {
    check_series_compat(a, b, "series_equal_ideal");
    long e = std::max(a.shift(), b.shift());
    mpz_class sa, sb;
    mpz_ui_pow_ui(sa.get_mpz_t(), a.ring()->p(), (unsigned long)(e - a.shift()));
    mpz_ui_pow_ui(sb.get_mpz_t(), b.ring()->p(), (unsigned long)(e - b.shift()));
    const int N = a.ring()->precision();
    const int M = a.trunc();
    int eff = int(std::max<long>(0, std::min<long>(N, 1) - e));  // weakest enforced grade
    for (int t = 0; t < M; ++t) {
        int grade = int(std::max<long>(0, std::min<long>(N, M - t) - e));
        if (grade == 0) continue;
        mpz_class d = a.ring()->reduce(a.coeffs()[size_t(t)] * sa - b.coeffs()[size_t(t)] * sb);
        if (d != 0 && a.ring()->val(d) < grade) return SeriesEq{false, eff, t};
    }
    return SeriesEq{true, eff, -1};
}

mpz_class cyc_u(const ZpRing& ring) { return ring.reduce(mpz_class(ring.p() + 1)); }

IwaSeries group_element(const ZpRingPtr& ring, int M, const mpz_class& c) {
    std::vector<mpz_class> out(static_cast<size_t>(M));
    mpz_class run = 1;  // exact integer binom(c, i), updated incrementally
    for (int i = 0; i < M; ++i) {
        out[size_t(i)] = ring->reduce(run);
        run *= (c - i);
        mpz_divexact_ui(run.get_mpz_t(), run.get_mpz_t(), (unsigned long)(i + 1));
    }
    return IwaSeries(ring, M, 0, std::move(out));
}

IwaSeries scaled_group_element(const ZpRingPtr& ring, int M, const mpz_class& c,
                               const mpz_class& u_exponent) {
    mpz_class s = ring->pow(cyc_u(*ring), u_exponent);
    return group_element(ring, M, c).scale(s);
}

namespace {

// substitute T -> s(T); exact at truncation for the two substitutions used
// here (degree-1 polynomials for twists, ord_T >= 1 series for tau)
IwaSeries substitute(const IwaSeries& f, const IwaSeries& s) {
    auto ring = f.ring();
    int M = f.trunc();
    IwaSeries acc = IwaSeries::zero(ring, M);
    IwaSeries cur = IwaSeries::one(ring, M);
    for (int i = 0; i < M; ++i) {
        if (f.coeffs()[size_t(i)] != 0) acc = acc + cur.scale(f.coeffs()[size_t(i)]);
        if (i + 1 < M) cur = cur * s;
    }
    return acc.with_shift(acc.shift() + f.shift());
}

}  // namespace

IwaSeries twist(const IwaSeries& f, long j) {
    auto ring = f.ring();
    mpz_class uj = ring->pow(cyc_u(*ring), mpz_class(j));
    std::vector<mpz_class> sc{ring->reduce(uj - 1), uj};
    IwaSeries s(ring, f.trunc(), 0, std::move(sc));
    return substitute(f, s);
}

IwaSeries tau(const IwaSeries& f) {
    auto ring = f.ring();
    IwaSeries s = group_element(ring, f.trunc(), mpz_class(-1)) - IwaSeries::one(ring, f.trunc());
    return substitute(f, s);
}

IwaSeries phi_cyclo(const ZpRingPtr& ring, int M, int m, long j) {
    if (m < 1) throw domain_error("phi_cyclo needs m >= 1");
    mpz_class pm1;
    mpz_ui_pow_ui(pm1.get_mpz_t(), ring->p(), (unsigned long)(m - 1));
    IwaSeries acc = IwaSeries::zero(ring, M);
    for (unsigned long i = 0; i < ring->p(); ++i) {
        mpz_class e = pm1 * i;
        acc = acc + scaled_group_element(ring, M, e, mpz_class(-j) * e);
    }
    return acc;
}

IwaSeries pollack_log(const ZpRingPtr& ring, int M, Sign sign, int k, int n_max) {
    if (n_max < 1) throw domain_error("pollack_log needs n_max >= 1");
    if (k < 2 || k % 2 != 0) throw domain_error("weight must be even and >= 2");
    IwaSeries acc = IwaSeries::one(ring, M);
    for (int j = 0; j <= k - 2; ++j)
        for (int n = 1; n <= n_max; ++n)
            acc = acc * phi_cyclo(ring, M, sign == Sign::Plus ? 2 * n : 2 * n - 1, j);
    return acc.with_shift(long(k - 1) * (n_max + 1));
}

IwaSeries pollack_log_tw(const ZpRingPtr& ring, int M, Sign sign, int k, int n_max) {
    if (n_max < 1) throw domain_error("pollack_log_tw needs n_max >= 1");
    if (k < 2 || k % 2 != 0) throw domain_error("weight must be even and >= 2");
    IwaSeries acc = IwaSeries::one(ring, M);
    for (long j = 1 - k / 2; j <= k / 2 - 1; ++j)
        for (int n = 1; n <= n_max; ++n)
            acc = acc * phi_cyclo(ring, M, sign == Sign::Plus ? 2 * n : 2 * n - 1, j);
    return acc.with_shift(long(k - 1) * (n_max + 1));
}

IwaSeries u_plusminus(const ZpRingPtr& ring, int M, Sign sign, int k, int n_max) {
    if (k < 2 || k % 2 != 0) throw domain_error("weight must be even and >= 2");
    IwaSeries acc = IwaSeries::one(ring, M);
    for (long j = 1 - k / 2; j <= k / 2 - 1; ++j) {
        for (int n = 1; n <= n_max; ++n) {
            int a = sign == Sign::Plus ? 2 * n - 1 : 2 * n - 2;
            mpz_class lo, hi;
            mpz_ui_pow_ui(lo.get_mpz_t(), ring->p(), (unsigned long)a);
            mpz_ui_pow_ui(hi.get_mpz_t(), ring->p(), (unsigned long)(a + 1));
            mpz_class e = lo - hi;
            acc = acc * scaled_group_element(ring, M, e, mpz_class(-j) * e);
        }
    }
    return acc;
}

bool one_unit_plus_T_integral(const IwaSeries& f) {
    if (f.shift() != 0) return false;
    return f.ring()->val(f.ring()->reduce(f.coeff(0) - 1)) >= 1;
}

CheckResult verify_pollack_fe(const ZpRingPtr& ring, int M, int m, long j) {
    CheckResult r;
    r.name = "phi-factor-involution-identity";
    r.anchor = "cyclotomic-factor-tau-transform";
    {
        std::ostringstream os;
        os << "p=" << ring->p() << " N=" << ring->precision() << " M=" << M << " m=" << m
           << " j=" << j;
        r.params = os.str();
    }
    IwaSeries lhs = tau(phi_cyclo(ring, M, m, j));
    mpz_class pm1, pm;
    mpz_ui_pow_ui(pm1.get_mpz_t(), ring->p(), (unsigned long)(m - 1));
    mpz_ui_pow_ui(pm.get_mpz_t(), ring->p(), (unsigned long)m);
    mpz_class e = pm1 - pm;
    IwaSeries rhs = scaled_group_element(ring, M, e, mpz_class(j) * e) * phi_cyclo(ring, M, m, -j);
    auto eq = series_equal(lhs, rhs);
    r.pass = eq.equal;
    r.effective_precision = eq.effective_precision;
    if (!eq.equal) {
        std::ostringstream os;
        os << "first differing coefficient T^" << eq.first_diff;
        r.witness = os.str();
    }
    return r;
}

CharEval eval_character(const IwaSeries& f, const ExtRingPtr& target, long j) {
    if (!target->base()->same(*f.ring()))
        throw ring_mismatch("eval_character: coefficient ring mismatch");
    mpz_class uj = f.ring()->pow(cyc_u(*f.ring()), mpz_class(j));
    ExtElem x = ExtElem::gen(target).scale(uj) - ExtElem::one(target);
    ExtElem acc = ExtElem::zero(target);
    ExtElem cur = ExtElem::one(target);
    for (int i = 0; i < f.trunc(); ++i) {
        if (f.coeffs()[size_t(i)] != 0) acc = acc + cur.scale(f.coeffs()[size_t(i)]);
        if (i + 1 < f.trunc()) cur = cur * x;
    }
    return CharEval{acc, f.shift()};
}

DivResult divide_series(const IwaSeries& num, const IwaSeries& den) {
    check_series_compat(num, den, "divide_series");
    auto ring = num.ring();
    const int M = num.trunc();
    int v0 = ring->val(den.coeff(0));
    if (v0 >= ring->precision())
        throw not_invertible("divisor constant term vanishes at this precision");
    mpz_class iu = ring->inv(ring->divexact_p(den.coeff(0), v0));
    std::vector<mpz_class> r(num.coeffs());
    std::vector<mpz_class> q(static_cast<size_t>(M));
    for (int i = 0; i < M; ++i) {
        mpz_class c = ring->reduce(r[size_t(i)]);
        if (ring->val(c) < v0) throw domain_error("series division is not exact at this precision");
        q[size_t(i)] = ring->mul(ring->divexact_p(c, v0), iu);
        if (q[size_t(i)] != 0)
            for (int s = i; s < M; ++s) r[size_t(s)] -= q[size_t(i)] * den.coeff(s - i);
    }
    return DivResult{IwaSeries(ring, M, num.shift() - den.shift(), std::move(q)), long(v0) * M};
}

}  // namespace padicfe
