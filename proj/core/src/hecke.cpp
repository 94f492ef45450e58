#include "padicfe/hecke.hpp"

#include <numeric>
#include <sstream>

namespace padicfe {

KCyc::KCyc(const ImagQuadField* K, long m)
    : K_(K), m_(m), c_(size_t(euler_phi(m)), {mpq_class(0), mpq_class(0)}) {}

KCyc::KCyc(const ImagQuadField* K, long m, std::vector<std::pair<mpq_class, mpq_class>> poly)
    : K_(K), m_(m) {
    reduce(std::move(poly));
}

KCyc KCyc::rational(const ImagQuadField* K, const mpq_class& r) {
    KCyc x(K, 1);
    x.c_[0].first = r;
    return x;
}

KCyc KCyc::from_k(const ImagQuadField* K, const mpq_class& r, const mpq_class& s) {
    KCyc x(K, 1);
    x.c_[0] = {r, s};
    return x;
}

KCyc KCyc::root_of_unity(const ImagQuadField* K, long m, long expo) {
    expo = ((expo % m) + m) % m;
    std::vector<std::pair<mpq_class, mpq_class>> poly(size_t(expo) + 1, {mpq_class(0), mpq_class(0)});
    poly[size_t(expo)].first = 1;
    KCyc x(K, m);
    x.reduce(std::move(poly));
    return x;
}

void KCyc::reduce(std::vector<std::pair<mpq_class, mpq_class>> poly) {
    const auto& phi = cyclotomic_polynomial(m_);
    size_t d = phi.size() - 1;
    for (size_t deg = poly.size(); deg-- > d;) {
        auto c = poly[deg];
        if (c.first != 0 || c.second != 0) {
            poly[deg] = {0, 0};
            for (size_t j = 0; j < d; ++j) {
                poly[deg - d + j].first -= c.first * phi[j];
                poly[deg - d + j].second -= c.second * phi[j];
            }
        }
    }
    poly.resize(d, {mpq_class(0), mpq_class(0)});
    for (auto& x : poly) {
        x.first.canonicalize();
        x.second.canonicalize();
    }
    c_ = std::move(poly);
}

bool KCyc::is_zero() const {
    for (const auto& x : c_)
        if (x.first != 0 || x.second != 0) return false;
    return true;
}

KCyc KCyc::lift_to(long mm) const {
    if (mm == m_) return *this;
    if (mm % m_ != 0) throw domain_error("lift_to needs m | mm");
    long k = mm / m_;
    std::vector<std::pair<mpq_class, mpq_class>> poly(
        size_t((long(c_.size()) - 1) * k + 1), {mpq_class(0), mpq_class(0)});
    for (size_t i = 0; i < c_.size(); ++i)
        if (c_[i].first != 0 || c_[i].second != 0) poly[i * size_t(k)] = c_[i];
    KCyc x(K_, mm);
    x.reduce(std::move(poly));
    return x;
}

static void check_kcyc(const KCyc& x, const KCyc& y) {
    if (x.field() != y.field()) throw ring_mismatch("KCyc: different base fields");
}

KCyc operator+(const KCyc& x, const KCyc& y) {
    check_kcyc(x, y);
    long m = std::lcm(x.order(), y.order());
    KCyc a = x.lift_to(m), b = y.lift_to(m);
    for (size_t i = 0; i < a.c_.size(); ++i) {
        a.c_[i].first += b.c_[i].first;
        a.c_[i].second += b.c_[i].second;
        a.c_[i].first.canonicalize();
        a.c_[i].second.canonicalize();
    }
    return a;
}

KCyc KCyc::operator-() const {
    KCyc a = *this;
    for (auto& x : a.c_) {
        x.first = -x.first;
        x.second = -x.second;
    }
    return a;
}

KCyc operator-(const KCyc& x, const KCyc& y) { return x + (-y); }

KCyc operator*(const KCyc& x, const KCyc& y) {
    check_kcyc(x, y);
    long m = std::lcm(x.order(), y.order());
    KCyc a = x.lift_to(m), b = y.lift_to(m);
    // K-coefficient product: (r1 + s1 w)(r2 + s2 w) with w^2 = w - (1+D)/4
    // or w^2 = -D
    const ImagQuadField* K = x.field();
    mpq_class w2_lin, w2_const;  // w^2 = w2_lin * w + w2_const
    if (K->half_integral()) {
        w2_lin = 1;
        w2_const = mpq_class(-(1 + K->D()) / 4);
    } else {
        w2_lin = 0;
        w2_const = mpq_class(-K->D());
    }
    std::vector<std::pair<mpq_class, mpq_class>> prod(a.c_.size() + b.c_.size(),
                                                      {mpq_class(0), mpq_class(0)});
    for (size_t i = 0; i < a.c_.size(); ++i) {
        const auto& [r1, s1] = a.c_[i];
        if (r1 == 0 && s1 == 0) continue;
        for (size_t j = 0; j < b.c_.size(); ++j) {
            const auto& [r2, s2] = b.c_[j];
            if (r2 == 0 && s2 == 0) continue;
            mpq_class rr = r1 * r2 + s1 * s2 * w2_const;
            mpq_class ss = r1 * s2 + s1 * r2 + s1 * s2 * w2_lin;
            prod[i + j].first += rr;
            prod[i + j].second += ss;
        }
    }
    KCyc out(x.field(), m);
    out.reduce(std::move(prod));
    return out;
}

KCyc KCyc::conj() const {
    // zeta -> zeta^(m-1), omega -> conj(omega)
    std::vector<std::pair<mpq_class, mpq_class>> poly(size_t(m_), {mpq_class(0), mpq_class(0)});
    for (size_t i = 0; i < c_.size(); ++i) {
        const auto& [r, s] = c_[i];
        if (r == 0 && s == 0) continue;
        size_t e = (i * size_t(m_ - 1)) % size_t(m_);
        if (K_->half_integral()) {
            // conj(omega) = 1 - omega
            poly[e].first += r + s;
            poly[e].second += -s;
        } else {
            poly[e].first += r;
            poly[e].second += -s;
        }
    }
    KCyc out(K_, m_);
    out.reduce(std::move(poly));
    return out;
}

KCyc KCyc::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    KCyc r = KCyc::rational(K_, 1).lift_to(m_);
    KCyc b = *this;
    while (e) {
        if (e & 1) r = r * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return r;
}

KCyc KCyc::inverse() const {
    // x^(-1) = conj-product trick is unavailable in general; solve x*y = 1
    // via Gaussian elimination over Q(omega) coordinates
    size_t d = c_.size();
    // treat (r, s) pairs as two rationals: 2d-dimensional Q-linear system
    size_t n = 2 * d;
    std::vector<std::vector<mpq_class>> A(n, std::vector<mpq_class>(n + 1, mpq_class(0)));
    // columns: coefficients of y (zeta^j, and zeta^j*omega)
    for (size_t j = 0; j < d; ++j) {
        for (int part = 0; part < 2; ++part) {
            KCyc basis(K_, m_);
            basis.c_[j] = part == 0 ? std::make_pair(mpq_class(1), mpq_class(0))
                                    : std::make_pair(mpq_class(0), mpq_class(1));
            KCyc col = (*this) * basis;
            for (size_t i = 0; i < d; ++i) {
                A[2 * i][2 * j + size_t(part)] = col.c_[i].first;
                A[2 * i + 1][2 * j + size_t(part)] = col.c_[i].second;
            }
        }
    }
    A[0][n] = 1;
    for (size_t col = 0, row = 0; col < n && row < n; ++col) {
        size_t piv = row;
        while (piv < n && A[piv][col] == 0) ++piv;
        if (piv == n) continue;
        std::swap(A[piv], A[row]);
        mpq_class pv = A[row][col];
        for (auto& x : A[row]) x /= pv;
        for (size_t i = 0; i < n; ++i)
            if (i != row && A[i][col] != 0) {
                mpq_class f = A[i][col];
                for (size_t c2 = col; c2 <= n; ++c2) A[i][c2] -= f * A[row][c2];
            }
        ++row;
    }
    KCyc y(K_, m_);
    for (size_t i = 0; i < n; ++i) {
        size_t lead = n;
        for (size_t j = 0; j < n; ++j)
            if (A[i][j] != 0) {
                lead = j;
                break;
            }
        if (lead == n) {
            if (A[i][n] != 0) throw not_invertible("KCyc element not invertible");
            continue;
        }
        if (lead % 2 == 0)
            y.c_[lead / 2].first = A[i][n];
        else
            y.c_[lead / 2].second = A[i][n];
    }
    if (!((*this) * y == KCyc::rational(K_, 1).lift_to(m_)))
        throw not_invertible("KCyc element not invertible");
    return y;
}

bool operator==(const KCyc& x, const KCyc& y) {
    check_kcyc(x, y);
    long m = std::lcm(x.order(), y.order());
    return x.lift_to(m).coeffs() == y.lift_to(m).coeffs();
}

std::string KCyc::str() const {
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < c_.size(); ++i) {
        const auto& [r, s] = c_[i];
        if (r == 0 && s == 0) continue;
        if (!first) os << " + ";
        os << "(" << r.get_str();
        if (s != 0) os << (s > 0 ? "+" : "") << s.get_str() << "w";
        os << ")";
        if (i) os << "*z^" << i;
        first = false;
    }
    if (first) os << "0";
    return os.str();
}

KCyc kcyc_from_cyc(const ImagQuadField* K, const CycExact& x) {
    std::vector<std::pair<mpq_class, mpq_class>> poly(x.coeffs().size(),
                                                      {mpq_class(0), mpq_class(0)});
    for (size_t i = 0; i < x.coeffs().size(); ++i) poly[i].first = x.coeffs()[i];
    return KCyc(K, x.order(), std::move(poly));
}

KCyc kcyc_from_kelem(const ImagQuadField* K, const KElem& z) {
    return KCyc::from_k(K, mpq_class(z.a), mpq_class(z.b));
}

HeckeCharacter::HeckeCharacter(const ImagQuadField* K, long a, long b, DirichletCharacter nu,
                               DirichletCharacter eta1, DirichletCharacter eta2)
    : K_(K), a_(a), b_(b), nu_(std::move(nu)), eta1_(std::move(eta1)), eta2_(std::move(eta2)) {
    for (const auto* e : {&eta1_, &eta2_}) {
        long q = e->modulus();
        while (q > 1 && q % long(K_->p()) == 0) q /= long(K_->p());
        if (q != 1) throw domain_error("local components must have p-power modulus");
    }
    // well-definedness on principal ideals: trivial on units
    for (const auto& u : K_->units()) {
        KCyc v = eps(u) * kcyc_from_kelem(K_, u).pow(-a_) *
                 kcyc_from_kelem(K_, K_->conj(u)).pow(-b_);
        if (!(v == KCyc::rational(K_, 1)))
            throw domain_error("no character with this type and conductor");
    }
}

HeckeCharacter HeckeCharacter::unramified(const ImagQuadField* K, long u) {
    return HeckeCharacter(K, -u, 0, DirichletCharacter::trivial(1), DirichletCharacter::trivial(1),
                          DirichletCharacter::trivial(1));
}

HeckeCharacter HeckeCharacter::trivial(const ImagQuadField* K) { return unramified(K, 0); }

KCyc HeckeCharacter::eps(const KElem& alpha) const {
    KCyc v = KCyc::rational(K_, 1);
    if (nu_.modulus() > 1) {
        mpz_class n = K_->norm(alpha);
        v = v * kcyc_from_cyc(K_, nu_.value(n));
    }
    if (eta1_.modulus() > 1) {
        long r = 0;
        long q = eta1_.modulus();
        while (q > 1) {
            q /= long(K_->p());
            ++r;
        }
        v = v * kcyc_from_cyc(K_, eta1_.value(K_->reduce_mod_pfrak(alpha, r)));
    }
    if (eta2_.modulus() > 1) {
        long r = 0;
        long q = eta2_.modulus();
        while (q > 1) {
            q /= long(K_->p());
            ++r;
        }
        v = v * kcyc_from_cyc(K_, eta2_.value(K_->reduce_mod_pfrak_bar(alpha, r)));
    }
    return v;
}

KCyc HeckeCharacter::value(const KElem& alpha) const {
    KCyc v = eps(alpha);
    if (a_ != 0) v = v * kcyc_from_kelem(K_, alpha).pow(-a_);
    if (b_ != 0) v = v * kcyc_from_kelem(K_, K_->conj(alpha)).pow(-b_);
    return v;
}

long HeckeCharacter::finite_modulus() const {
    long m = nu_.conductor();
    long q1 = eta1_.primitive_part().modulus();
    long q2 = eta2_.primitive_part().modulus();
    return std::lcm(m, std::lcm(q1, q2));
}

bool HeckeCharacter::shares_conductor(const KElem& alpha) const {
    mpz_class n = K_->norm(alpha);
    long m = finite_modulus();
    if (m == 1) return false;
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), n.get_mpz_t(), mpz_class(m).get_mpz_t());
    return g != 1;
}

HeckeCharacter HeckeCharacter::mul(const HeckeCharacter& o) const {
    if (K_ != o.K_) throw ring_mismatch("HeckeCharacter: different fields");
    return HeckeCharacter(K_, a_ + o.a_, b_ + o.b_, nu_ * o.nu_, eta1_ * o.eta1_, eta2_ * o.eta2_);
}

HeckeCharacter HeckeCharacter::inverse() const {
    return HeckeCharacter(K_, -a_, -b_, nu_.inverse(), eta1_.inverse(), eta2_.inverse());
}

bool operator==(const HeckeCharacter& x, const HeckeCharacter& y) {
    return x.K_ == y.K_ && x.a_ == y.a_ && x.b_ == y.b_ && x.nu_ == y.nu_ &&
           x.eta1_ == y.eta1_ && x.eta2_ == y.eta2_;
}

namespace {

bool p_power_order(const DirichletCharacter& chi, unsigned long p) {
    long n = chi.order();
    while (n % long(p) == 0) n /= long(p);
    return n == 1;
}

}  // namespace

CharFactorization factor_character(const HeckeCharacter& xi) {
    const auto* K = xi.field();
    if (!p_power_order(xi.eta1(), K->p()) || !p_power_order(xi.eta2(), K->p()))
        throw factorization_error("factorization hypothesis violated");
    DirichletCharacter mu = xi.eta2() * xi.nu();
    HeckeCharacter rho(K, xi.type_a() - xi.type_b(), 0, DirichletCharacter::trivial(1),
                       xi.eta1() * xi.eta2().inverse(), DirichletCharacter::trivial(1));
    return CharFactorization{rho, xi.type_b(), mu.primitive_part()};
}

HeckeCharacter dual(const HeckeCharacter& xi) {
    // value on an ideal = xi(conjugate ideal)^(-1); conjugation swaps the
    // local components at the two primes above p
    return HeckeCharacter(xi.field(), -xi.type_b(), -xi.type_a(), xi.nu().inverse(),
                          xi.eta2().inverse(), xi.eta1().inverse());
}

namespace {

// restriction of a Dirichlet character to its p-part: the character mod
// p^r (r = v_p of the modulus) with x -> chi(crt(x mod p^r, 1 mod rest))
DirichletCharacter p_part(const DirichletCharacter& chi, unsigned long p) {
    long q = chi.modulus();
    long pr = 1;
    while (q % long(p) == 0) {
        q /= long(p);
        pr *= long(p);
    }
    if (pr == 1) return DirichletCharacter::trivial(1);
    std::vector<long> expo(size_t(pr), -1);
    for (long x = 0; x < pr; ++x) {
        if (x % long(p) == 0) continue;
        // lift to x mod pr, 1 mod q
        long lift = -1;
        for (long t = 0; t < q; ++t) {
            long cand = x + t * pr;
            if (cand % q == 1 % q) {
                lift = cand;
                break;
            }
        }
        if (lift < 0) continue;
        expo[size_t(x)] = chi.is_unit_arg(lift) ? chi.expo_at(mpz_class(lift)) : -1;
    }
    return DirichletCharacter(pr, chi.order(), std::move(expo));
}

}  // namespace

Sigma1Check check_sigma1(const HeckeCharacter& xi) {
    const auto* K = xi.field();
    unsigned long p = K->p();
    Sigma1Check out{};
    out.in_admissible_class = p_power_order(xi.eta1(), p) && p_power_order(xi.eta2(), p);
    // condition = triviality of the tame part of the local avatar component
    // eta * nu_p * omega^expo, evaluated at the Teichmueller lift of the
    // fixed primitive root; all values are roots of unity of order p-1,
    // compared after the p-adic embedding
    DirichletCharacter nup = p_part(xi.nu(), p);
    auto tame_trivial = [&](const DirichletCharacter& eta, long expo) {
        long r = 1;
        for (long q = std::lcm(eta.modulus(), nup.modulus()); q > long(p); q /= long(p)) ++r;
        auto zr = make_zp_ring(p, int(r));
        mpz_class t = zr->teichmuller(mpz_class(zr->primitive_root()));
        // values at the Teichmueller generator are (p-1)-torsion; reduce the
        // root-of-unity representation to its minimal order before embedding
        CycExact v = CycExact::rational(1, 1);
        auto fold = [&](const DirichletCharacter& chi) {
            if (chi.modulus() <= 1) return;
            long e = chi.expo_at(t), o = chi.order();
            long g = std::gcd(e, o);
            if (g == 0) g = o;
            v = v * CycExact::root_of_unity(o / g, e / g);
        };
        fold(eta);
        fold(nup);
        auto z1 = make_zp_ring(p, 1);
        mpz_class img = embed_exact_base(v, *z1);
        long e = ((expo % long(p - 1)) + long(p - 1)) % long(p - 1);
        mpz_class ge = z1->pow(mpz_class(z1->primitive_root()), mpz_class(e));
        return z1->mul(img, ge) == 1;
    };
    out.cond_a = tame_trivial(xi.eta1(), xi.type_a());
    out.cond_b = tame_trivial(xi.eta2(), xi.type_b());
    out.equivalent = out.cond_a == out.cond_b;
    return out;
}

EtaLevel eta_and_level(const HeckeCharacter& rho) {
    const auto* K = rho.field();
    // eta(n) = rho((n)) n^(a-b); with rho of type (a-b, 0) the power parts
    // cancel and eta is the pfrak-component read at rational arguments
    DirichletCharacter eta = (rho.eta1() * rho.eta2().inverse()).primitive_part();
    // conductor norm: pfrak-parts have norm = modulus, rational nu-parts
    // contribute the square of their conductor
    long norm_conductor = std::lcm(eta.modulus(), rho.eta2().primitive_part().modulus());
    if (rho.nu().modulus() > 1) {
        long c = rho.nu().conductor();
        eta = (eta * rho.nu() * rho.nu()).primitive_part();
        norm_conductor = std::lcm(norm_conductor, c * c);
    }
    long level = std::labs(K->discriminant()) * norm_conductor;
    DirichletCharacter theta = (eta * eps_K_char(*K)).primitive_part();
    return EtaLevel{eta, level, theta};
}

DirichletCharacter eps_K_char(const ImagQuadField& K) {
    long q = std::labs(K.discriminant());
    std::vector<long> expo(size_t(q), -1);
    for (long aa = 0; aa < q; ++aa) {
        if (std::gcd(aa, q) != 1) continue;
        long v = kronecker_symbol(K.discriminant(), aa);
        expo[size_t(aa)] = v == 1 ? 0 : 1;
    }
    return DirichletCharacter(q, 2, std::move(expo));
}

DenseApprox dense_approx(const Padic& a, const Padic& b, int n) {
    check_same_ring(*a.ring(), *b.ring(), "dense_approx");
    const auto& R = *a.ring();
    mpz_class pn;
    mpz_ui_pow_ui(pn.get_mpz_t(), R.p(), (unsigned long)n);
    auto rep = [&](const mpz_class& r) {
        mpz_class x = r % pn;
        if (x > pn / 2) x -= pn;
        return x;
    };
    mpz_class an = rep(a.residue()), bn = rep(b.residue());
    mpz_class diff = an - bn;
    mpz_class ad = abs(diff);
    long r_n = long(n) * (ad.get_si() + 1);
    mpz_class prn;
    mpz_ui_pow_ui(prn.get_mpz_t(), R.p(), (unsigned long)r_n);
    return DenseApprox{an - prn, bn + prn, r_n};
}

AvatarForm avatar_form(const HeckeCharacter& xi) {
    auto fac = factor_character(xi);
    AvatarForm out{fac.rho.eta1().primitive_part(),
                   xi.type_a(),
                   xi.type_b(),
                   fac.mu,
                   false,
                   DirichletCharacter::trivial(1),
                   DirichletCharacter::trivial(1)};
    auto sc = check_sigma1(xi);
    if (sc.in_admissible_class && sc.cond_a && sc.cond_b) {
        out.two_sided = true;
        out.eta1 = (xi.eta1() * xi.nu()).primitive_part();
        out.eta2 = (xi.eta2() * xi.nu()).primitive_part();
    }
    return out;
}

}  // namespace padicfe
