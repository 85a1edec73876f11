#include "qserre/biseries.hpp"

#include <algorithm>
#include <sstream>

namespace qserre {

namespace {

BigInt binom_int(int n, int k) {
    if (k < 0 || k > n) return 0;
    BigInt r = 1;
    for (int j = 0; j < k; ++j) {
        r *= n - j;
        r /= j + 1;
    }
    return r;
}

BigRat rat_abs(const BigRat& v) { return v < 0 ? BigRat(-v) : v; }

BigRat rat_pow(const BigRat& b, std::int64_t e) {
    if (e == 0) return 1;
    BigRat base = e > 0 ? b : BigRat(1) / b;
    std::int64_t k = e > 0 ? e : -e;
    BigRat acc = 1;
    while (k > 0) {
        if (k & 1) acc *= base;
        base *= base;
        k >>= 1;
    }
    return acc;
}

/// |x| evaluated at |q| = rho, when x is a monomial c*q^e.
std::optional<BigRat> modulus_at_rho(const QScalar& x, const BigRat& rho) {
    auto m = x.as_monomial();
    if (!m) return std::nullopt;
    return rat_abs(m->first) * rat_pow(rho, m->second);
}

} // namespace

// ------------------------------------------------------------ DegreePoly

void DegreePoly::normalize() {
    while (!c.empty() && c.back().is_zero()) c.pop_back();
}

QScalar DegreePoly::eval(std::int64_t n) const {
    QScalar acc;
    QScalar nn{static_cast<long>(n)};
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * nn + *it;
    return acc;
}

DegreePoly DegreePoly::shifted_arg(std::int64_t d) const {
    // c(n + d) expanded binomially
    DegreePoly r;
    r.c.assign(c.size(), QScalar());
    QScalar dd{static_cast<long>(d)};
    for (std::size_t j = 0; j < c.size(); ++j) {
        QScalar dp{1};
        for (std::size_t b = 0; b <= j; ++b) {
            // coefficient of n^(j-b): C(j,b) d^b
            r.c[j - b] += c[j] * QScalar(binom_int(static_cast<int>(j), static_cast<int>(b))) * dp;
            dp *= dd;
        }
    }
    r.normalize();
    return r;
}

DegreePoly DegreePoly::negated_arg() const {
    DegreePoly r = *this;
    for (std::size_t j = 1; j < r.c.size(); j += 2) r.c[j] = -r.c[j];
    r.normalize();
    return r;
}

DegreePoly operator+(const DegreePoly& a, const DegreePoly& b) {
    DegreePoly r;
    r.c.resize(std::max(a.c.size(), b.c.size()));
    for (std::size_t i = 0; i < r.c.size(); ++i) {
        if (i < a.c.size()) r.c[i] += a.c[i];
        if (i < b.c.size()) r.c[i] += b.c[i];
    }
    r.normalize();
    return r;
}

DegreePoly operator*(const DegreePoly& a, const DegreePoly& b) {
    DegreePoly r;
    if (a.is_zero() || b.is_zero()) return r;
    r.c.assign(a.c.size() + b.c.size() - 1, QScalar());
    for (std::size_t i = 0; i < a.c.size(); ++i)
        for (std::size_t j = 0; j < b.c.size(); ++j) r.c[i + j] += a.c[i] * b.c[j];
    r.normalize();
    return r;
}

DegreePoly DegreePoly::scaled(const QScalar& s) const {
    DegreePoly r;
    if (s.is_zero()) return r;
    r.c.reserve(c.size());
    for (const auto& v : c) r.c.push_back(v * s);
    r.normalize();
    return r;
}

// ----------------------------------------------------- ConvergenceRegion

ConvergenceRegion ConvergenceRegion::all() { return {}; }

ConvergenceRegion ConvergenceRegion::none() {
    ConvergenceRegion r;
    r.empty = true;
    return r;
}

ConvergenceRegion ConvergenceRegion::below(BigRat hi) {
    ConvergenceRegion r;
    r.hi = std::move(hi);
    r.unbounded_hi = false;
    if (r.hi <= 0) r.empty = true;
    return r;
}

ConvergenceRegion ConvergenceRegion::above(BigRat lo) {
    ConvergenceRegion r;
    r.lo = std::move(lo);
    return r;
}

ConvergenceRegion ConvergenceRegion::intersect(const ConvergenceRegion& a,
                                               const ConvergenceRegion& b) {
    if (a.empty || b.empty) return none();
    ConvergenceRegion r;
    r.lo = std::max(a.lo, b.lo);
    if (a.unbounded_hi) {
        r.hi = b.hi;
        r.unbounded_hi = b.unbounded_hi;
    } else if (b.unbounded_hi) {
        r.hi = a.hi;
        r.unbounded_hi = false;
    } else {
        r.hi = std::min(a.hi, b.hi);
        r.unbounded_hi = false;
    }
    if (!r.unbounded_hi && r.hi <= r.lo) return none();
    return r;
}

ConvergenceRegion ConvergenceRegion::reciprocal() const {
    if (empty) return none();
    ConvergenceRegion r;
    // |1/z| in (A, B) <-> |z| in (1/B, 1/A)
    if (!unbounded_hi) {
        r.lo = BigRat(1) / hi;
    } else {
        r.lo = 0;
    }
    if (lo > 0) {
        r.hi = BigRat(1) / lo;
        r.unbounded_hi = false;
    }
    return r;
}

bool ConvergenceRegion::nonempty_interior() const {
    if (empty) return false;
    return unbounded_hi || hi > lo;
}

std::string ConvergenceRegion::to_string() const {
    if (empty) return "empty";
    std::ostringstream os;
    os << "(" << lo.str() << ", " << (unbounded_hi ? "inf" : hi.str()) << ")";
    return os.str();
}

bool regions_intersect(const std::vector<ConvergenceRegion>& regions) {
    ConvergenceRegion acc = ConvergenceRegion::all();
    for (const auto& r : regions) acc = ConvergenceRegion::intersect(acc, r);
    return acc.nonempty_interior();
}

// --------------------------------------------------------------- BiSeries

BiSeries BiSeries::from_finite(std::map<std::int64_t, QScalar> coeffs) {
    BiSeries s;
    for (auto& [d, v] : coeffs)
        if (!v.is_zero()) s.finite_.emplace(d, std::move(v));
    return s;
}

BiSeries BiSeries::term(std::int64_t degree, QScalar c) {
    BiSeries s;
    if (!c.is_zero()) s.finite_.emplace(degree, std::move(c));
    return s;
}

BiSeries BiSeries::geometric(const QScalar& a) {
    if (a.is_zero()) throw invalid_input("BiSeries::geometric: zero ratio");
    return string(DegreePoly(QScalar(1)), a, Ray::upper(0));
}

BiSeries BiSeries::delta(const QScalar& a) {
    if (a.is_zero()) throw invalid_input("BiSeries::delta: zero ratio");
    return string(DegreePoly(QScalar(1)), a, Ray::full());
}

BiSeries BiSeries::string(DegreePoly coeff, QScalar ratio, Ray range) {
    if (ratio.is_zero()) throw invalid_input("BiSeries string: zero ratio");
    BiSeries s;
    coeff.normalize();
    if (!coeff.is_zero()) s.strings_.push_back({std::move(coeff), std::move(ratio), range});
    return s;
}

QScalar BiSeries::coefficient(std::int64_t p) const {
    QScalar acc;
    auto it = finite_.find(p);
    if (it != finite_.end()) acc = it->second;
    for (const auto& s : strings_)
        if (s.range.contains(p)) acc += s.coeff.eval(p) * s.ratio.pow(p);
    return acc;
}

std::map<std::int64_t, QScalar> BiSeries::truncate(std::int64_t lo, std::int64_t hi) const {
    if (lo > hi) throw invalid_input("BiSeries::truncate: lo > hi");
    std::map<std::int64_t, QScalar> w;
    for (std::int64_t p = lo; p <= hi; ++p) w.emplace(p, coefficient(p));
    return w;
}

std::optional<std::int64_t> BiSeries::support_lower() const {
    std::optional<std::int64_t> lo;
    if (!finite_.empty()) lo = finite_.begin()->first;
    for (const auto& s : strings_) {
        if (s.range.kind != Ray::Kind::Upper) return std::nullopt;
        lo = lo ? std::min(*lo, s.range.bound) : s.range.bound;
    }
    return lo;
}

std::optional<std::int64_t> BiSeries::support_upper() const {
    std::optional<std::int64_t> hi;
    if (!finite_.empty()) hi = finite_.rbegin()->first;
    for (const auto& s : strings_) {
        if (s.range.kind != Ray::Kind::Lower) return std::nullopt;
        hi = hi ? std::max(*hi, s.range.bound) : s.range.bound;
    }
    return hi;
}

BiSeries operator+(const BiSeries& a, const BiSeries& b) {
    BiSeries r = a;
    for (const auto& [d, v] : b.finite_) r.finite_[d] += v;
    r.strings_.insert(r.strings_.end(), b.strings_.begin(), b.strings_.end());
    r.canonicalize();
    return r;
}

BiSeries operator-(const BiSeries& a, const BiSeries& b) { return a + (-b); }

BiSeries BiSeries::operator-() const { return scaled(QScalar(-1)); }

BiSeries BiSeries::scaled(const QScalar& s) const {
    BiSeries r;
    if (s.is_zero()) return r;
    for (const auto& [d, v] : finite_) r.finite_.emplace(d, v * s);
    for (const auto& g : strings_) r.strings_.push_back({g.coeff.scaled(s), g.ratio, g.range});
    return r;
}

BiSeries BiSeries::shifted(std::int64_t d) const {
    BiSeries r;
    for (const auto& [k, v] : finite_) r.finite_.emplace(k + d, v);
    for (const auto& g : strings_) {
        GeomString s;
        s.ratio = g.ratio;
        s.coeff = g.coeff.shifted_arg(-d).scaled(g.ratio.pow(-d));
        s.range = g.range;
        if (s.range.kind != Ray::Kind::Full) s.range.bound += d;
        r.strings_.push_back(std::move(s));
    }
    return r;
}

BiSeries BiSeries::reversed() const {
    BiSeries r;
    for (const auto& [k, v] : finite_) r.finite_.emplace(-k, v);
    for (const auto& g : strings_) {
        GeomString s;
        s.ratio = g.ratio.inverted();
        s.coeff = g.coeff.negated_arg();
        switch (g.range.kind) {
            case Ray::Kind::Upper: s.range = Ray::lower(-g.range.bound); break;
            case Ray::Kind::Lower: s.range = Ray::upper(-g.range.bound); break;
            default: s.range = Ray::full(); break;
        }
        r.strings_.push_back(std::move(s));
    }
    return r;
}

// --- product machinery ---------------------------------------------------

namespace {

// affine expression c0 + c1*p with c1 in {0, 1}
struct Affine {
    std::int64_t c0 = 0;
    int c1 = 0;
};

// Antidifference basis for x != 1: h_k with h_k(n+1)*x - h_k(n) = n^k,
// so that sum_{n=A}^{B} n^k x^n = h_k(B+1) x^(B+1) - h_k(A) x^A.
std::vector<DegreePoly> antidifference_basis(const QScalar& x, int kmax) {
    std::vector<DegreePoly> h(static_cast<std::size_t>(kmax) + 1);
    QScalar inv_xm1 = (x - QScalar(1)).inverted();
    for (int k = 0; k <= kmax; ++k) {
        std::vector<QScalar> hc(static_cast<std::size_t>(k) + 1);
        hc[static_cast<std::size_t>(k)] = inv_xm1;
        for (int i = k - 1; i >= 0; --i) {
            QScalar s;
            for (int j = i + 1; j <= k; ++j)
                s += hc[static_cast<std::size_t>(j)] * QScalar(binom_int(j, i));
            hc[static_cast<std::size_t>(i)] = -(x * s) * inv_xm1;
        }
        DegreePoly p;
        p.c = std::move(hc);
        p.normalize();
        h[static_cast<std::size_t>(k)] = std::move(p);
    }
    return h;
}

// Discrete antiderivative for x == 1: G_k(n+1) - G_k(n) = n^k, G_k(0) = 0,
// so that sum_{n=A}^{B} n^k = G_k(B+1) - G_k(A).
std::vector<DegreePoly> faulhaber_basis(int kmax) {
    std::vector<DegreePoly> g(static_cast<std::size_t>(kmax) + 1);
    for (int k = 0; k <= kmax; ++k) {
        std::vector<QScalar> gc(static_cast<std::size_t>(k) + 2);
        gc[static_cast<std::size_t>(k) + 1] = QScalar(BigRat(1, k + 1));
        for (int i = k - 1; i >= 0; --i) {
            QScalar s;
            for (int j = i + 2; j <= k + 1; ++j)
                s += gc[static_cast<std::size_t>(j)] * QScalar(binom_int(j, i));
            gc[static_cast<std::size_t>(i) + 1] = -s * QScalar(BigRat(1, i + 1));
        }
        DegreePoly p;
        p.c = std::move(gc);
        p.normalize();
        g[static_cast<std::size_t>(k)] = std::move(p);
    }
    return g;
}

// Compose a polynomial with an affine argument: poly(c0 + c1*p) as a DegreePoly in p.
DegreePoly compose_affine(const DegreePoly& poly, const Affine& a) {
    if (a.c1 == 0) return DegreePoly(poly.eval(a.c0));
    return poly.shifted_arg(a.c0);
}

// gamma_k(p) coefficients in c1(n)*c2(p-n) = sum_k gamma_k(p) n^k.
std::vector<DegreePoly> diagonal_coeffs(const DegreePoly& c1, const DegreePoly& c2) {
    const int d1 = std::max(c1.degree(), 0);
    const int d2 = std::max(c2.degree(), 0);
    std::vector<DegreePoly> gamma(static_cast<std::size_t>(d1 + d2) + 1);
    for (std::size_t i = 0; i < c1.c.size(); ++i) {
        for (std::size_t j = 0; j < c2.c.size(); ++j) {
            QScalar base = c1.c[i] * c2.c[j];
            if (base.is_zero()) continue;
            for (std::size_t b = 0; b <= j; ++b) {
                // c2_j (p-n)^j contributes C(j,b)(-1)^b p^(j-b) n^b
                QScalar coef = base * QScalar(binom_int(static_cast<int>(j), static_cast<int>(b)));
                if (b % 2 == 1) coef = -coef;
                DegreePoly& g = gamma[i + b];
                std::size_t pdeg = j - b;
                if (g.c.size() <= pdeg) g.c.resize(pdeg + 1);
                g.c[pdeg] += coef;
            }
        }
    }
    for (auto& g : gamma) g.normalize();
    return gamma;
}

struct StringEmitter {
    std::vector<GeomString>& out;
    void emit(DegreePoly coeff, QScalar ratio, Ray range) {
        coeff.normalize();
        if (!coeff.is_zero()) out.push_back({std::move(coeff), std::move(ratio), range});
    }
};

// sum_{n=A(p)}^{B(p)} gamma_k(p) n^k x^n * r2^p, emitted on the p-range.
void emit_finite_sum(StringEmitter& em, const std::vector<DegreePoly>& gamma, const QScalar& x,
                     const QScalar& r1, const QScalar& r2, const Affine& A, const Affine& B,
                     Ray p_range) {
    const int kmax = static_cast<int>(gamma.size()) - 1;
    if (x.is_one()) {
        auto G = faulhaber_basis(kmax);
        DegreePoly total;
        Affine b1{B.c0 + 1, B.c1};
        for (int k = 0; k <= kmax; ++k) {
            if (gamma[static_cast<std::size_t>(k)].is_zero()) continue;
            DegreePoly s = compose_affine(G[static_cast<std::size_t>(k)], b1) +
                           compose_affine(G[static_cast<std::size_t>(k)], A).scaled(QScalar(-1));
            total = total + gamma[static_cast<std::size_t>(k)] * s;
        }
        em.emit(std::move(total), r2, p_range);
        return;
    }
    auto H = antidifference_basis(x, kmax);
    DegreePoly upper_piece, lower_piece; // grouped by the ratio they attach to
    Affine b1{B.c0 + 1, B.c1};
    for (int k = 0; k <= kmax; ++k) {
        const DegreePoly& gk = gamma[static_cast<std::size_t>(k)];
        if (gk.is_zero()) continue;
        // + h_k(B+1) x^(B+1): ratio r2*x^(B.c1), constant factor x^(B.c0+1)
        {
            DegreePoly piece = gk * compose_affine(H[static_cast<std::size_t>(k)], b1);
            piece = piece.scaled(x.pow(b1.c0));
            if (B.c1 == 1)
                upper_piece = upper_piece + piece;
            else
                lower_piece = lower_piece + piece;
        }
        // - h_k(A) x^A
        {
            DegreePoly piece = gk * compose_affine(H[static_cast<std::size_t>(k)], A);
            piece = piece.scaled(x.pow(A.c0)).scaled(QScalar(-1));
            if (A.c1 == 1)
                upper_piece = upper_piece + piece;
            else
                lower_piece = lower_piece + piece;
        }
    }
    // pieces with x^p fold into ratio r1 = r2*x
    em.emit(std::move(upper_piece), r1, p_range);
    em.emit(std::move(lower_piece), r2, p_range);
}

// sum over an infinite ray of n with affine boundary; side = +1: n >= A, side = -1: n <= B.
void emit_infinite_sum(StringEmitter& em, const std::vector<DegreePoly>& gamma, const QScalar& x,
                       const QScalar& r1, const QScalar& r2, const Affine& bound, int side,
                       Ray p_range, BiSeries::Mode mode, const BigRat& rho, std::int64_t err_p) {
    if (mode == BiSeries::Mode::Exact)
        throw undefined_product(
            "series product undefined in exact mode: infinitely many nonzero diagonal terms",
            err_p);
    if (x.is_one())
        throw undefined_product("series product diverges: diagonal ratio 1", err_p);
    auto ax = modulus_at_rho(x, rho);
    if (!ax)
        throw undefined_product("series product: diagonal ratio is not a q-monomial", err_p);
    if (side > 0 ? !(*ax < 1) : !(*ax > 1))
        throw undefined_product("series product diverges: |diagonal ratio| outside the unit disc",
                                err_p);
    const int kmax = static_cast<int>(gamma.size()) - 1;
    auto H = antidifference_basis(x, kmax);
    DegreePoly upper_piece, lower_piece;
    Affine a = bound;
    if (side < 0) a.c0 += 1; // sum_{n<=B} n^k x^n = h_k(B+1) x^(B+1)
    for (int k = 0; k <= kmax; ++k) {
        const DegreePoly& gk = gamma[static_cast<std::size_t>(k)];
        if (gk.is_zero()) continue;
        DegreePoly piece = gk * compose_affine(H[static_cast<std::size_t>(k)], a);
        piece = piece.scaled(x.pow(a.c0));
        if (side > 0) piece = piece.scaled(QScalar(-1)); // sum_{n>=A} = -h_k(A) x^A
        if (a.c1 == 1)
            upper_piece = upper_piece + piece;
        else
            lower_piece = lower_piece + piece;
    }
    em.emit(std::move(upper_piece), r1, p_range);
    em.emit(std::move(lower_piece), r2, p_range);
}

void mul_strings(const GeomString& s1, const GeomString& s2, BiSeries::Mode mode,
                 const BigRat& rho, std::vector<GeomString>& out) {
    const QScalar& r1 = s1.ratio;
    const QScalar& r2 = s2.ratio;
    QScalar x = r1 / r2;
    auto gamma = diagonal_coeffs(s1.coeff, s2.coeff);
    StringEmitter em{out};
    const Ray& R1 = s1.range;
    const Ray& R2 = s2.range;
    using K = Ray::Kind;

    if (R1.kind == K::Upper && R2.kind == K::Upper) {
        // finite diagonals [a, p-k2] for p >= a+k2
        emit_finite_sum(em, gamma, x, r1, r2, Affine{R1.bound, 0}, Affine{-R2.bound, 1},
                        Ray::upper(R1.bound + R2.bound));
    } else if (R1.kind == K::Lower && R2.kind == K::Lower) {
        // finite diagonals [p-k2, b] for p <= b+k2
        emit_finite_sum(em, gamma, x, r1, r2, Affine{-R2.bound, 1}, Affine{R1.bound, 0},
                        Ray::lower(R1.bound + R2.bound));
    } else if (R1.kind == K::Upper && R2.kind == K::Lower) {
        // D = Upper(max(a, p-k2)); split at p = a+k2
        const std::int64_t split = R1.bound + R2.bound;
        emit_infinite_sum(em, gamma, x, r1, r2, Affine{R1.bound, 0}, +1, Ray::lower(split), mode,
                          rho, split);
        emit_infinite_sum(em, gamma, x, r1, r2, Affine{-R2.bound, 1}, +1, Ray::upper(split + 1),
                          mode, rho, split);
    } else if (R1.kind == K::Lower && R2.kind == K::Upper) {
        // D = Lower(min(b, p-k2)); split at p = b+k2
        const std::int64_t split = R1.bound + R2.bound;
        emit_infinite_sum(em, gamma, x, r1, r2, Affine{R1.bound, 0}, -1, Ray::upper(split), mode,
                          rho, split);
        emit_infinite_sum(em, gamma, x, r1, r2, Affine{-R2.bound, 1}, -1, Ray::lower(split - 1),
                          mode, rho, split);
    } else if (R1.kind == K::Full && R2.kind == K::Full) {
        throw undefined_product("series product undefined: two-sided diagonal", 0);
    } else if (R1.kind == K::Full) {
        if (R2.kind == K::Upper) {
            emit_infinite_sum(em, gamma, x, r1, r2, Affine{-R2.bound, 1}, -1, Ray::full(), mode,
                              rho, R2.bound);
        } else {
            emit_infinite_sum(em, gamma, x, r1, r2, Affine{-R2.bound, 1}, +1, Ray::full(), mode,
                              rho, R2.bound);
        }
    } else { // R2 Full
        if (R1.kind == K::Upper) {
            emit_infinite_sum(em, gamma, x, r1, r2, Affine{R1.bound, 0}, +1, Ray::full(), mode,
                              rho, R1.bound);
        } else {
            emit_infinite_sum(em, gamma, x, r1, r2, Affine{R1.bound, 0}, -1, Ray::full(), mode,
                              rho, R1.bound);
        }
    }
}

} // namespace

BiSeries BiSeries::mul(const BiSeries& f, const BiSeries& g, Mode mode, const BigRat& rho) {
    BiSeries r;
    for (const auto& [d1, v1] : f.finite_)
        for (const auto& [d2, v2] : g.finite_) {
            QScalar c = v1 * v2;
            if (!c.is_zero()) r.finite_[d1 + d2] += c;
        }
    auto term_times_string = [&r](std::int64_t d, const QScalar& v, const GeomString& s) {
        GeomString t;
        t.ratio = s.ratio;
        t.coeff = s.coeff.shifted_arg(-d).scaled(v * s.ratio.pow(-d));
        t.range = s.range;
        if (t.range.kind != Ray::Kind::Full) t.range.bound += d;
        t.coeff.normalize();
        if (!t.coeff.is_zero()) r.strings_.push_back(std::move(t));
    };
    for (const auto& [d, v] : f.finite_)
        for (const auto& s : g.strings_) term_times_string(d, v, s);
    for (const auto& [d, v] : g.finite_)
        for (const auto& s : f.strings_) term_times_string(d, v, s);
    for (const auto& s1 : f.strings_)
        for (const auto& s2 : g.strings_) mul_strings(s1, s2, mode, rho, r.strings_);
    r.canonicalize();
    return r;
}

ConvergenceRegion BiSeries::convergence_region(const BigRat& rho) const {
    if (rho <= 0 || rho >= 1) throw invalid_input("convergence_region: rho must be in (0,1)");
    ConvergenceRegion acc = ConvergenceRegion::all();
    for (const auto& s : strings_) {
        if (s.range.kind == Ray::Kind::Full) return ConvergenceRegion::none();
        auto m = modulus_at_rho(s.ratio, rho);
        if (!m) return ConvergenceRegion::none();
        ConvergenceRegion rr = s.range.kind == Ray::Kind::Upper
                                   ? ConvergenceRegion::below(BigRat(1) / *m)
                                   : ConvergenceRegion::above(BigRat(1) / *m);
        acc = ConvergenceRegion::intersect(acc, rr);
    }
    return acc;
}

void BiSeries::canonicalize() {
    // Segment-wise consolidation per ratio: distinct-ratio geometric sequences
    // are independent on any infinite ray, so this yields a canonical form up
    // to finite-part/boundary representation.
    std::map<std::string, std::vector<GeomString>> groups;
    for (auto& s : strings_) {
        s.coeff.normalize();
        if (!s.coeff.is_zero()) groups[s.ratio.to_string()].push_back(std::move(s));
    }
    strings_.clear();

    constexpr std::int64_t kFoldLimit = 1024;
    for (auto& [rk, grp] : groups) {
        const QScalar& ratio = grp.front().ratio;
        // degrees where coverage can change
        std::vector<std::int64_t> pts;
        for (const auto& s : grp) {
            if (s.range.kind == Ray::Kind::Lower) pts.push_back(s.range.bound + 1);
            if (s.range.kind == Ray::Kind::Upper) pts.push_back(s.range.bound);
        }
        std::sort(pts.begin(), pts.end());
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

        struct Seg {
            std::optional<std::int64_t> lo, hi; // nullopt = unbounded
            DegreePoly poly;
        };
        std::vector<Seg> segs;
        if (pts.empty()) {
            segs.push_back({std::nullopt, std::nullopt, {}});
        } else {
            segs.push_back({std::nullopt, pts.front() - 1, {}});
            for (std::size_t i = 0; i + 1 < pts.size(); ++i)
                segs.push_back({pts[i], pts[i + 1] - 1, {}});
            segs.push_back({pts.back(), std::nullopt, {}});
        }
        auto covers = [](const Ray& r, const Seg& seg) {
            switch (r.kind) {
                case Ray::Kind::Full: return true;
                case Ray::Kind::Lower: return seg.hi.has_value() && *seg.hi <= r.bound;
                case Ray::Kind::Upper: return seg.lo.has_value() && *seg.lo >= r.bound;
            }
            return false;
        };
        for (auto& seg : segs)
            for (const auto& s : grp)
                if (covers(s.range, seg)) seg.poly = seg.poly + s.coeff;
        // drop empty segments, merge adjacent segments with equal polynomials
        std::vector<Seg> packed;
        for (auto& seg : segs) {
            seg.poly.normalize();
            if (seg.poly.is_zero()) continue;
            if (!packed.empty() && packed.back().poly == seg.poly && packed.back().hi &&
                seg.lo && *packed.back().hi + 1 == *seg.lo) {
                packed.back().hi = seg.hi;
            } else {
                packed.push_back(std::move(seg));
            }
        }
        for (auto& seg : packed) {
            if (!seg.lo && !seg.hi) {
                strings_.push_back({std::move(seg.poly), ratio, Ray::full()});
            } else if (!seg.lo) {
                strings_.push_back({std::move(seg.poly), ratio, Ray::lower(*seg.hi)});
            } else if (!seg.hi) {
                strings_.push_back({std::move(seg.poly), ratio, Ray::upper(*seg.lo)});
            } else if (*seg.hi - *seg.lo < kFoldLimit) {
                for (std::int64_t n = *seg.lo; n <= *seg.hi; ++n)
                    finite_[n] += seg.poly.eval(n) * ratio.pow(n);
            } else {
                // long finite block kept as a ray pair to bound memory
                strings_.push_back({seg.poly, ratio, Ray::upper(*seg.lo)});
                strings_.push_back({seg.poly.scaled(QScalar(-1)), ratio, Ray::upper(*seg.hi + 1)});
            }
        }
    }

    for (auto it = finite_.begin(); it != finite_.end();) {
        if (it->second.is_zero())
            it = finite_.erase(it);
        else
            ++it;
    }
    auto key = [](const GeomString& s) {
        return std::make_tuple(static_cast<int>(s.range.kind), s.range.bound,
                               s.ratio.to_string(), s.coeff.c.size());
    };
    std::sort(strings_.begin(), strings_.end(),
              [&key](const GeomString& a, const GeomString& b) { return key(a) < key(b); });
}

std::string BiSeries::to_string() const {
    std::ostringstream os;
    os << "finite{";
    bool first = true;
    for (const auto& [d, v] : finite_) {
        if (!first) os << ", ";
        first = false;
        os << d << ": " << v.to_string();
    }
    os << "}";
    for (const auto& s : strings_) {
        os << " + string(coeff[";
        for (std::size_t i = 0; i < s.coeff.c.size(); ++i) {
            if (i) os << "; ";
            os << s.coeff.c[i].to_string();
        }
        os << "], ratio " << s.ratio.to_string() << ", ";
        switch (s.range.kind) {
            case Ray::Kind::Lower: os << "n <= " << s.range.bound; break;
            case Ray::Kind::Upper: os << "n >= " << s.range.bound; break;
            default: os << "all n"; break;
        }
        os << ")";
    }
    return os.str();
}

std::string BiSeries::window_json(std::int64_t lo, std::int64_t hi) const {
    std::ostringstream os;
    os << "[";
    bool first = true;
    for (const auto& [d, v] : truncate(lo, hi)) {
        if (!first) os << ",";
        first = false;
        os << "[" << d << ",\"" << v.to_string() << "\"]";
    }
    os << "]";
    return os.str();
}

} // namespace qserre
