#include "padicfe/cyclotomic.hpp"

#include <map>
#include <mutex>
#include <numeric>
#include <sstream>

namespace padicfe {

long euler_phi(long m) {
    long r = m;
    for (long d = 2; d * d <= m; ++d) {
        if (m % d == 0) {
            r -= r / d;
            while (m % d == 0) m /= d;
        }
    }
    if (m > 1) r -= r / m;
    return r;
}

namespace {

// exact division of integer polynomials, remainder must vanish
std::vector<mpz_class> poly_divexact(std::vector<mpz_class> num, const std::vector<mpz_class>& den) {
    std::vector<mpz_class> q(num.size() - den.size() + 1, 0);
    for (size_t i = q.size(); i-- > 0;) {
        mpz_class c = num[i + den.size() - 1];  // den is monic
        q[i] = c;
        if (c != 0)
            for (size_t j = 0; j < den.size(); ++j) num[i + j] -= c * den[j];
    }
    for (const auto& x : num)
        if (x != 0) throw domain_error("cyclotomic polynomial division not exact");
    return q;
}

std::map<long, std::vector<mpz_class>> g_cyclo_cache;
std::mutex g_cyclo_mutex;

}  // namespace

const std::vector<mpz_class>& cyclotomic_polynomial(long m) {
    std::lock_guard<std::mutex> lk(g_cyclo_mutex);
    auto it = g_cyclo_cache.find(m);
    if (it != g_cyclo_cache.end()) return it->second;
    // x^m - 1 divided by all Phi_d, d | m, d < m  (recursively fills cache)
    std::vector<mpz_class> num(size_t(m) + 1, 0);
    num[0] = -1;
    num[size_t(m)] = 1;
    for (long d = 1; d < m; ++d) {
        if (m % d != 0) continue;
        std::vector<mpz_class> phd;
        {
            auto jt = g_cyclo_cache.find(d);
            if (jt != g_cyclo_cache.end()) {
                phd = jt->second;
            } else {
                std::vector<mpz_class> nd(size_t(d) + 1, 0);
                nd[0] = -1;
                nd[size_t(d)] = 1;
                for (long e = 1; e < d; ++e)
                    if (d % e == 0) nd = poly_divexact(std::move(nd), g_cyclo_cache.at(e));
                g_cyclo_cache[d] = nd;
                phd = std::move(nd);
            }
        }
        num = poly_divexact(std::move(num), phd);
    }
    auto [jt, _] = g_cyclo_cache.emplace(m, std::move(num));
    return jt->second;
}

namespace {

std::vector<mpq_class> reduce_mod_phi(long m, std::vector<mpq_class> poly) {
    const auto& phi = cyclotomic_polynomial(m);
    size_t d = phi.size() - 1;
    for (size_t deg = poly.size(); deg-- > d;) {
        mpq_class c = poly[deg];
        if (c != 0) {
            poly[deg] = 0;
            for (size_t j = 0; j < d; ++j) poly[deg - d + j] -= c * phi[j];
        }
    }
    poly.resize(d);
    for (auto& x : poly) x.canonicalize();
    return poly;
}

}  // namespace

CycExact::CycExact(long m) : m_(m), c_(size_t(euler_phi(m)), mpq_class(0)) {}

CycExact::CycExact(long m, std::vector<mpq_class> coeffs) : m_(m) {
    c_ = reduce_mod_phi(m, std::move(coeffs));
}

CycExact CycExact::rational(long m, const mpq_class& a) {
    CycExact r(m);
    r.c_[0] = a;
    return r;
}

CycExact CycExact::root_of_unity(long m, long expo) {
    expo %= m;
    if (expo < 0) expo += m;
    std::vector<mpq_class> poly(size_t(expo) + 1, mpq_class(0));
    poly[size_t(expo)] = 1;
    return CycExact(m, std::move(poly));
}

bool CycExact::is_zero() const {
    for (const auto& x : c_)
        if (x != 0) return false;
    return true;
}

bool CycExact::is_rational() const {
    for (size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

mpq_class CycExact::rational_part() const {
    if (!is_rational()) throw domain_error("not a rational cyclotomic element");
    return c_[0];
}

CycExact CycExact::lift_to(long mm) const {
    if (mm == m_) return *this;
    if (mm % m_ != 0) throw domain_error("lift_to needs m | mm");
    long k = mm / m_;
    std::vector<mpq_class> poly(size_t(euler_phi(m_) - 1) * size_t(k) + 1, mpq_class(0));
    for (size_t i = 0; i < c_.size(); ++i)
        if (c_[i] != 0) poly[i * size_t(k)] = c_[i];
    return CycExact(mm, std::move(poly));
}

static long common_order(const CycExact& a, const CycExact& b) {
    return std::lcm(a.order(), b.order());
}

CycExact operator+(const CycExact& a, const CycExact& b) {
    long m = common_order(a, b);
    CycExact x = a.lift_to(m), y = b.lift_to(m);
    std::vector<mpq_class> c(x.coeffs());
    for (size_t i = 0; i < c.size(); ++i) c[i] += y.coeffs()[i];
    return CycExact(m, std::move(c));
}

CycExact operator-(const CycExact& a, const CycExact& b) {
    long m = common_order(a, b);
    CycExact x = a.lift_to(m), y = b.lift_to(m);
    std::vector<mpq_class> c(x.coeffs());
    for (size_t i = 0; i < c.size(); ++i) c[i] -= y.coeffs()[i];
    return CycExact(m, std::move(c));
}

CycExact CycExact::operator-() const {
    std::vector<mpq_class> c(c_);
    for (auto& x : c) x = -x;
    return CycExact(m_, std::move(c));
}

CycExact operator*(const CycExact& a, const CycExact& b) {
    long m = common_order(a, b);
    CycExact x = a.lift_to(m), y = b.lift_to(m);
    const auto& xc = x.coeffs();
    const auto& yc = y.coeffs();
    std::vector<mpq_class> prod(xc.size() + yc.size(), mpq_class(0));
    for (size_t i = 0; i < xc.size(); ++i) {
        if (xc[i] == 0) continue;
        for (size_t j = 0; j < yc.size(); ++j)
            if (yc[j] != 0) prod[i + j] += xc[i] * yc[j];
    }
    return CycExact(m, std::move(prod));
}

CycExact CycExact::conj() const {
    // zeta -> zeta^(m-1)
    std::vector<mpq_class> out(size_t(m_), mpq_class(0));
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        size_t e = (i * size_t(m_ - 1)) % size_t(m_);
        out[e] += c_[i];
    }
    return CycExact(m_, std::move(out));
}

CycExact CycExact::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    CycExact r = CycExact::rational(m_, 1);
    CycExact b = *this;
    long k = e;
    while (k > 0) {
        if (k & 1) r = r * b;
        k >>= 1;
        if (k) b = b * b;
    }
    return r;
}

CycExact CycExact::inverse() const {
    // For roots of unity and monomials a*zeta^e this is cheap; in general,
    // solve by the resultant-free route: invert via multiplying conjugates.
    // The workbench only inverts root-of-unity multiples of rationals.
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        bool monomial = true;
        for (size_t j = 0; j < c_.size(); ++j)
            if (j != i && c_[j] != 0) monomial = false;
        if (monomial) {
            // (a zeta^i)^-1 = a^-1 zeta^(m-i)
            CycExact r = root_of_unity(m_, long(m_) - long(i));
            std::vector<mpq_class> c(r.c_);
            for (auto& x : c) x /= c_[i];
            return CycExact(m_, std::move(c));
        }
        break;
    }
    // general case: Gaussian elimination on the multiplication matrix
    size_t d = c_.size();
    std::vector<std::vector<mpq_class>> A(d, std::vector<mpq_class>(d + 1, mpq_class(0)));
    for (size_t j = 0; j < d; ++j) {
        std::vector<mpq_class> col(size_t(m_) + d, mpq_class(0));
        for (size_t i = 0; i < d; ++i)
            if (c_[i] != 0) col[i + j] += c_[i];
        auto red = reduce_mod_phi(m_, std::move(col));
        for (size_t i = 0; i < d; ++i) A[i][j] = red[i];
    }
    A[0][d] = 1;
    for (size_t col = 0, row = 0; col < d && row < d; ++col) {
        size_t piv = row;
        while (piv < d && A[piv][col] == 0) ++piv;
        if (piv == d) continue;
        std::swap(A[piv], A[row]);
        mpq_class pv = A[row][col];
        for (auto& x : A[row]) x /= pv;
        for (size_t i = 0; i < d; ++i) {
            if (i != row && A[i][col] != 0) {
                mpq_class f = A[i][col];
                for (size_t j = col; j <= d; ++j) A[i][j] -= f * A[row][j];
            }
        }
        ++row;
    }
    std::vector<mpq_class> sol(d, mpq_class(0));
    for (size_t i = 0; i < d; ++i) {
        size_t lead = d;
        for (size_t j = 0; j < d; ++j)
            if (A[i][j] != 0) {
                lead = j;
                break;
            }
        if (lead == d) {
            if (A[i][d] != 0) throw not_invertible("cyclotomic element not invertible");
            continue;
        }
        sol[lead] = A[i][d];
    }
    CycExact r(m_, std::vector<mpq_class>(sol));
    if (!((*this) * r == rational(m_, 1))) throw not_invertible("cyclotomic element not invertible");
    return r;
}

bool operator==(const CycExact& a, const CycExact& b) {
    long m = common_order(a, b);
    return a.lift_to(m).coeffs() == b.lift_to(m).coeffs();
}

bool CycExact::is_root_of_unity() const {
    if (is_zero()) return false;
    return pow(m_) == rational(m_, 1) || pow(2 * m_) == rational(m_, 1);
}

std::string CycExact::str() const {
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        if (!first) os << " + ";
        os << c_[i].get_str();
        if (i > 0) os << "*z" << m_ << "^" << i;
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

ExtElem embed_exact(const CycExact& x, const ExtRingPtr& target) {
    const auto& zr = *target->base();
    long p = long(zr.p());
    long m = x.order();
    long s = 0, mm = m;
    while (mm % p == 0) {
        mm /= p;
        ++s;
    }
    long d = mm;  // prime-to-p part
    if ((p - 1) % d != 0) throw domain_error("embedding not available");
    if (s > 0 && (target->kind() != ExtRing::Kind::CycloPPower || target->cyclo_level() < s))
        throw domain_error("embedding not available");

    // image of zeta_d: Teichmueller lift of g^((p-1)/d), g the fixed root
    mpz_class zd_img = 1;
    if (d > 1) {
        mpz_class g(zr.primitive_root());
        zd_img = zr.teichmuller(zr.pow(g, (p - 1) / d));
    }
    ExtElem zd = ExtElem::from_base(target, zd_img);

    ExtElem zp = ExtElem::one(target);
    if (s > 0) {
        long r = target->cyclo_level();
        long shift = 1;
        for (long i = 0; i < r - s; ++i) shift *= p;
        zp = ExtElem::gen(target).pow(shift);
    }

    // zeta_m = zeta_d^A * zeta_{p^s}^B with A p^s + B d = 1... note
    // zeta_m^(p^s) = zeta_d (canonical), zeta_m^d = zeta_{p^s}.
    long ps = 1;
    for (long i = 0; i < s; ++i) ps *= p;
    long A = 0, B = 0;
    {
        // extended gcd for A*ps + B*d = 1
        long a0 = ps, b0 = d, x0 = 1, x1 = 0, y0 = 0, y1 = 1;
        while (b0) {
            long qq = a0 / b0;
            std::tie(a0, b0) = std::make_tuple(b0, a0 - qq * b0);
            std::tie(x0, x1) = std::make_tuple(x1, x0 - qq * x1);
            std::tie(y0, y1) = std::make_tuple(y1, y0 - qq * y1);
        }
        A = x0;
        B = y0;  // A*ps + B*d = 1
    }
    ExtElem zm = zd.pow(A) * zp.pow(B);

    ExtElem acc = ExtElem::zero(target);
    ExtElem zpow = ExtElem::one(target);
    for (size_t i = 0; i < x.coeffs().size(); ++i) {
        const mpq_class& q = x.coeffs()[i];
        if (q != 0) {
            mpz_class num = zr.reduce(q.get_num());
            mpz_class den = zr.inv(zr.reduce(q.get_den()));  // p in denominator -> throws
            acc = acc + zpow.scale(zr.mul(num, den));
        }
        if (i + 1 < x.coeffs().size()) zpow = zpow * zm;
    }
    return acc;
}

mpz_class embed_exact_base(const CycExact& x, const ZpRing& target) {
    long p = long(target.p());
    long m = x.order();
    if (m % p == 0) {
        // tolerate p | m when the element actually lives prime-to-p? keep strict
        throw domain_error("embedding not available");
    }
    if ((p - 1) % m != 0) throw domain_error("embedding not available");
    mpz_class zm = 1;
    if (m > 1) {
        mpz_class g(target.primitive_root());
        zm = target.teichmuller(target.pow(g, (p - 1) / m));
    }
    mpz_class acc = 0, zpow = 1;
    for (size_t i = 0; i < x.coeffs().size(); ++i) {
        const mpq_class& q = x.coeffs()[i];
        if (q != 0) {
            mpz_class num = target.reduce(q.get_num());
            mpz_class den = target.inv(target.reduce(q.get_den()));
            acc = target.add(acc, target.mul(zpow, target.mul(num, den)));
        }
        if (i + 1 < x.coeffs().size()) zpow = target.mul(zpow, zm);
    }
    return acc;
}

}  // namespace padicfe
