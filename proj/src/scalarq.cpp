#include "qserre/scalarq.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace qserre {

namespace {

const BigInt kZero = 0;

BigInt int_gcd(BigInt a, BigInt b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        BigInt r = a % b;
        a = b;
        b = r;
    }
    return a;
}

} // namespace

// ---------------------------------------------------------------- ZPoly

ZPoly ZPoly::one() { return constant(1); }

ZPoly ZPoly::constant(BigInt c) {
    ZPoly p;
    if (c != 0) p.terms_.emplace_back(0, std::move(c));
    return p;
}

ZPoly ZPoly::monomial(BigInt c, std::int32_t e) {
    if (e < 0) throw invalid_input("ZPoly::monomial: negative exponent");
    ZPoly p;
    if (c != 0) p.terms_.emplace_back(e, std::move(c));
    return p;
}

ZPoly ZPoly::from_terms(std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(),
              [](const Term& a, const Term& b) { return a.first < b.first; });
    ZPoly p;
    for (auto& [e, c] : terms) {
        if (e < 0) throw invalid_input("ZPoly::from_terms: negative exponent");
        if (c == 0) continue;
        if (!p.terms_.empty() && p.terms_.back().first == e) {
            p.terms_.back().second += c;
            if (p.terms_.back().second == 0) p.terms_.pop_back();
        } else {
            p.terms_.emplace_back(e, std::move(c));
        }
    }
    return p;
}

bool ZPoly::is_one() const {
    return terms_.size() == 1 && terms_[0].first == 0 && terms_[0].second == 1;
}

std::int32_t ZPoly::degree() const { return terms_.empty() ? -1 : terms_.back().first; }

std::int32_t ZPoly::low_exponent() const { return terms_.empty() ? 0 : terms_.front().first; }

const BigInt& ZPoly::leading_coeff() const {
    if (terms_.empty()) return kZero;
    return terms_.back().second;
}

const BigInt& ZPoly::coeff(std::int32_t e) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), e,
                               [](const Term& t, std::int32_t v) { return t.first < v; });
    if (it != terms_.end() && it->first == e) return it->second;
    return kZero;
}

ZPoly operator+(const ZPoly& a, const ZPoly& b) {
    ZPoly r;
    r.terms_.reserve(a.terms_.size() + b.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < a.terms_.size() || j < b.terms_.size()) {
        if (j == b.terms_.size() ||
            (i < a.terms_.size() && a.terms_[i].first < b.terms_[j].first)) {
            r.terms_.push_back(a.terms_[i++]);
        } else if (i == a.terms_.size() || b.terms_[j].first < a.terms_[i].first) {
            r.terms_.push_back(b.terms_[j++]);
        } else {
            BigInt c = a.terms_[i].second + b.terms_[j].second;
            if (c != 0) r.terms_.emplace_back(a.terms_[i].first, std::move(c));
            ++i;
            ++j;
        }
    }
    return r;
}

ZPoly operator-(const ZPoly& a, const ZPoly& b) { return a + (-b); }

ZPoly ZPoly::operator-() const {
    ZPoly r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
}

ZPoly operator*(const ZPoly& a, const ZPoly& b) {
    if (a.is_zero() || b.is_zero()) return ZPoly();
    // dense accumulator over the exponent span keeps the merge cheap
    const std::int32_t lo = a.low_exponent() + b.low_exponent();
    const std::int32_t hi = a.degree() + b.degree();
    std::vector<BigInt> acc(static_cast<std::size_t>(hi - lo + 1));
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_)
            acc[static_cast<std::size_t>(ea + eb - lo)] += ca * cb;
    ZPoly r;
    for (std::size_t k = 0; k < acc.size(); ++k)
        if (acc[k] != 0) r.terms_.emplace_back(lo + static_cast<std::int32_t>(k), std::move(acc[k]));
    return r;
}

ZPoly ZPoly::shifted(std::int32_t d) const {
    ZPoly r = *this;
    for (auto& [e, c] : r.terms_) {
        e += d;
        if (e < 0) throw invalid_input("ZPoly::shifted: negative exponent");
    }
    return r;
}

BigInt ZPoly::content() const {
    BigInt g = 0;
    for (const auto& [e, c] : terms_) {
        g = int_gcd(g, c);
        if (g == 1) break;
    }
    return g;
}

ZPoly ZPoly::divided_by_int(const BigInt& g) const {
    if (g == 0) throw division_by_zero("ZPoly::divided_by_int by zero");
    ZPoly r = *this;
    for (auto& [e, c] : r.terms_) {
        if (c % g != 0) throw inexact_division("ZPoly content division not exact", "q^" + std::to_string(e));
        c /= g;
    }
    return r;
}

BigRat ZPoly::eval(const BigRat& x) const {
    // Horner over the sparse terms, highest exponent first.
    BigRat acc = 0;
    std::int32_t e_prev = -1;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        if (e_prev >= 0) {
            for (std::int32_t k = it->first; k < e_prev; ++k) acc *= x;
        }
        acc += BigRat(it->second);
        e_prev = it->first;
    }
    if (e_prev > 0)
        for (std::int32_t k = 0; k < e_prev; ++k) acc *= x;
    return acc;
}

namespace {

// Pseudo-remainder of a by b: lc(b)^(deg a - deg b + 1) * a = q*b + r.
ZPoly pseudo_rem(ZPoly a, const ZPoly& b) {
    const std::int32_t db = b.degree();
    while (!a.is_zero() && a.degree() >= db) {
        const std::int32_t d = a.degree() - db;
        ZPoly t = ZPoly::monomial(a.leading_coeff(), d) * b;
        ZPoly scaled;
        {
            std::vector<ZPoly::Term> ts;
            for (const auto& [e, c] : a.terms()) ts.emplace_back(e, c * b.leading_coeff());
            scaled = ZPoly::from_terms(std::move(ts));
        }
        a = scaled - t;
    }
    return a;
}

} // namespace

ZPoly ZPoly::gcd(const ZPoly& a0, const ZPoly& b0) {
    if (a0.is_zero() && b0.is_zero()) return ZPoly();
    const BigInt ca = a0.content(), cb = b0.content();
    const BigInt cg = a0.is_zero() ? cb : (b0.is_zero() ? ca : int_gcd(ca, cb));
    if (a0.is_zero() || b0.is_zero()) {
        const ZPoly& nz = a0.is_zero() ? b0 : a0;
        ZPoly g = nz.divided_by_int(nz.content());
        if (g.leading_coeff() < 0) g = -g;
        return ZPoly::constant(cg) * g;
    }
    ZPoly a = a0.divided_by_int(ca);
    ZPoly b = b0.divided_by_int(cb);
    if (a.degree() < b.degree()) std::swap(a, b);
    while (!b.is_zero()) {
        ZPoly r = pseudo_rem(a, b);
        if (!r.is_zero()) r = r.divided_by_int(r.content());
        a = std::move(b);
        b = std::move(r);
    }
    if (a.leading_coeff() < 0) a = -a;
    return ZPoly::constant(cg) * a;
}

ZPoly ZPoly::divide_exact(const ZPoly& a, const ZPoly& b) {
    if (b.is_zero()) throw division_by_zero("ZPoly::divide_exact by zero");
    ZPoly r = a;
    std::vector<Term> qt;
    const std::int32_t db = b.degree();
    while (!r.is_zero()) {
        if (r.degree() < db || r.leading_coeff() % b.leading_coeff() != 0)
            throw inexact_division("ZPoly::divide_exact: not divisible",
                                   "q^" + std::to_string(r.degree()));
        BigInt c = r.leading_coeff() / b.leading_coeff();
        std::int32_t e = r.degree() - db;
        r = r - ZPoly::monomial(c, e) * b;
        qt.emplace_back(e, std::move(c));
    }
    return ZPoly::from_terms(std::move(qt));
}

// ---------------------------------------------------------------- QScalar

QScalar::QScalar(long v) : num_(ZPoly::constant(v)) {}
QScalar::QScalar(BigInt v) : num_(ZPoly::constant(std::move(v))) {}

QScalar::QScalar(const BigRat& v)
    : num_(ZPoly::constant(boost::multiprecision::numerator(v))),
      den_(ZPoly::constant(boost::multiprecision::denominator(v))) {}

QScalar QScalar::q_power(std::int32_t e) { return monomial(1, e); }

QScalar QScalar::monomial(const BigRat& c, std::int32_t e) {
    QScalar s;
    if (c == 0) return s;
    s.shift_ = e;
    s.num_ = ZPoly::constant(boost::multiprecision::numerator(c));
    s.den_ = ZPoly::constant(boost::multiprecision::denominator(c));
    return s;
}

QScalar QScalar::make(std::int32_t shift, ZPoly num, ZPoly den) {
    if (den.is_zero()) throw division_by_zero("QScalar: zero denominator");
    QScalar s;
    if (num.is_zero()) return s;
    // pull the q-power content out of both parts
    shift += num.low_exponent() - den.low_exponent();
    num = num.shifted(-num.low_exponent());
    den = den.shifted(-den.low_exponent());
    if (!den.is_one()) {
        ZPoly g = ZPoly::gcd(num, den);
        if (!g.is_one()) {
            num = ZPoly::divide_exact(num, g);
            den = ZPoly::divide_exact(den, g);
        }
    }
    if (den.leading_coeff() < 0) {
        num = -num;
        den = -den;
    }
    s.shift_ = shift;
    s.num_ = std::move(num);
    s.den_ = std::move(den);
    return s;
}

QScalar QScalar::from_laurent(std::vector<ZPoly::Term> num_terms,
                              std::vector<ZPoly::Term> den_terms) {
    auto lift = [](std::vector<ZPoly::Term>& ts) {
        std::int32_t lo = 0;
        for (const auto& [e, c] : ts) lo = std::min(lo, e);
        for (auto& [e, c] : ts) e -= lo;
        return lo;
    };
    std::int32_t lo_n = lift(num_terms);
    std::int32_t lo_d = lift(den_terms);
    return make(lo_n - lo_d, ZPoly::from_terms(std::move(num_terms)),
                ZPoly::from_terms(std::move(den_terms)));
}

std::optional<std::pair<BigRat, std::int32_t>> QScalar::as_monomial() const {
    if (is_zero()) return std::nullopt;
    if (!num_.is_monomial() || !den_.is_monomial()) return std::nullopt;
    // canonical form guarantees exponent 0 on both single terms
    BigRat c(num_.terms()[0].second, den_.terms()[0].second);
    return std::make_pair(std::move(c), shift_);
}

QScalar operator+(const QScalar& a, const QScalar& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const std::int32_t s = std::min(a.shift_, b.shift_);
    ZPoly na = a.num_.shifted(a.shift_ - s) * b.den_;
    ZPoly nb = b.num_.shifted(b.shift_ - s) * a.den_;
    return QScalar::make(s, na + nb, a.den_ * b.den_);
}

QScalar operator-(const QScalar& a, const QScalar& b) { return a + (-b); }

QScalar QScalar::operator-() const {
    QScalar r = *this;
    r.num_ = -r.num_;
    return r;
}

QScalar operator*(const QScalar& a, const QScalar& b) {
    if (a.is_zero() || b.is_zero()) return QScalar();
    if (a.den_.is_one() && b.den_.is_one()) {
        QScalar r;
        r.shift_ = a.shift_ + b.shift_;
        r.num_ = a.num_ * b.num_;
        r.den_ = ZPoly::one();
        return r; // products of canonical polynomials stay canonical
    }
    return QScalar::make(a.shift_ + b.shift_, a.num_ * b.num_, a.den_ * b.den_);
}

QScalar operator/(const QScalar& a, const QScalar& b) { return a * b.inverted(); }

QScalar QScalar::inverted() const {
    if (is_zero()) throw division_by_zero("QScalar: inverse of zero");
    return make(-shift_, den_, num_);
}

QScalar QScalar::pow(std::int64_t e) const {
    if (e == 0) return QScalar(1);
    if (e < 0) return inverted().pow(-e);
    QScalar base = *this, acc(1);
    std::int64_t k = e;
    while (k > 0) {
        if (k & 1) acc *= base;
        base = base * base;
        k >>= 1;
    }
    return acc;
}

QScalar QScalar::substitute_q_power(std::int32_t k) const {
    if (k == 0) throw invalid_input("substitute_q_power: k must be nonzero");
    if (is_zero()) return QScalar();
    auto stretch = [k](const ZPoly& p) {
        std::vector<ZPoly::Term> ts;
        for (const auto& [e, c] : p.terms()) ts.emplace_back(e * k, c);
        return ts;
    };
    auto nt = stretch(num_);
    auto dt = stretch(den_);
    std::int32_t lo = 0;
    for (auto& t : nt) lo = std::min(lo, t.first);
    for (auto& t : nt) t.first -= lo;
    std::int32_t lo_d = 0;
    for (auto& t : dt) lo_d = std::min(lo_d, t.first);
    for (auto& t : dt) t.first -= lo_d;
    return make(shift_ * k + lo - lo_d, ZPoly::from_terms(std::move(nt)),
                ZPoly::from_terms(std::move(dt)));
}

QScalar QScalar::substitute(const QScalar& v) const {
    if (is_zero()) return QScalar();
    auto eval_poly = [&v](const ZPoly& p) {
        QScalar acc;
        std::int32_t e_prev = -1;
        for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
            if (e_prev >= 0) acc = acc * v.pow(e_prev - it->first);
            acc += QScalar(it->second);
            e_prev = it->first;
        }
        if (e_prev > 0) acc = acc * v.pow(e_prev);
        return acc;
    };
    if ((shift_ != 0 || !den_.is_one()) && v.is_zero())
        throw singular_evaluation("substitute: zero substituted into a negative power");
    QScalar r = eval_poly(num_);
    if (!den_.is_one()) {
        QScalar d = eval_poly(den_);
        if (d.is_zero()) throw singular_evaluation("substitute: denominator vanished");
        r = r / d;
    }
    if (shift_ != 0) r = r * v.pow(shift_);
    return r;
}

BigRat QScalar::eval(const BigRat& q0) const {
    if (is_zero()) return 0;
    if (q0 == 0) throw singular_evaluation("QScalar::eval at q = 0");
    BigRat d = den_.eval(q0);
    if (d == 0) throw singular_evaluation("QScalar::eval: denominator vanished");
    BigRat r = num_.eval(q0) / d;
    if (shift_ != 0) {
        BigRat p = 1;
        std::int32_t e = shift_ > 0 ? shift_ : -shift_;
        for (std::int32_t i = 0; i < e; ++i) p *= q0;
        if (shift_ > 0)
            r *= p;
        else
            r /= p;
    }
    return r;
}

// rendering ------------------------------------------------------------

namespace {

std::string laurent_to_string(const ZPoly& p, std::int32_t shift) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
        const std::int32_t e = it->first + shift;
        BigInt c = it->second;
        const bool neg = c < 0;
        if (neg) c = -c;
        if (first) {
            if (neg) os << "-";
            first = false;
        } else {
            os << (neg ? " - " : " + ");
        }
        if (e == 0) {
            os << c.str();
        } else {
            if (c != 1) os << c.str() << "*";
            os << "q";
            if (e != 1) os << "^" << e;
        }
    }
    return os.str();
}

} // namespace

std::string QScalar::to_string() const {
    if (is_zero()) return "0";
    if (den_.is_one()) return laurent_to_string(num_, shift_);
    return "(" + laurent_to_string(num_, shift_) + ")/(" + laurent_to_string(den_, 0) + ")";
}

// parsing --------------------------------------------------------------

namespace {

struct Cursor {
    const std::string& s;
    std::size_t i = 0;

    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool eof() {
        skip_ws();
        return i >= s.size();
    }
    char peek() {
        skip_ws();
        return i < s.size() ? s[i] : '\0';
    }
    bool accept(char c) {
        skip_ws();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!accept(c))
            throw invalid_input(std::string("QScalar::parse: expected '") + c + "' in \"" + s + "\"");
    }
};

BigInt parse_uint(Cursor& cur) {
    cur.skip_ws();
    std::size_t start = cur.i;
    while (cur.i < cur.s.size() && std::isdigit(static_cast<unsigned char>(cur.s[cur.i]))) ++cur.i;
    if (cur.i == start) throw invalid_input("QScalar::parse: expected digits in \"" + cur.s + "\"");
    return BigInt(cur.s.substr(start, cur.i - start));
}

std::int32_t parse_int(Cursor& cur) {
    bool neg = cur.accept('-');
    if (!neg) cur.accept('+');
    BigInt v = parse_uint(cur);
    std::int32_t r = static_cast<std::int32_t>(v);
    return neg ? -r : r;
}

// term := number ["/" number] ["*" qpow] | [number "*"] qpow | qpow
// collects terms of a Laurent polynomial with rational coefficients
void parse_sum(Cursor& cur, std::vector<std::pair<std::int32_t, BigRat>>& out) {
    bool first = true;
    while (true) {
        cur.skip_ws();
        int sign = 1;
        if (cur.accept('-')) {
            sign = -1;
        } else if (cur.accept('+')) {
            sign = 1;
        } else if (!first) {
            break;
        }
        first = false;
        BigRat coeff = 1;
        bool saw_number = false;
        if (std::isdigit(static_cast<unsigned char>(cur.peek()))) {
            BigInt n = parse_uint(cur);
            coeff = BigRat(n);
            saw_number = true;
            if (cur.accept('/')) {
                BigInt d = parse_uint(cur);
                if (d == 0) throw invalid_input("QScalar::parse: zero denominator literal");
                coeff /= BigRat(d);
            }
        }
        std::int32_t e = 0;
        bool saw_q = false;
        if (saw_number) {
            if (cur.accept('*')) {
                if (cur.peek() != 'q') throw invalid_input("QScalar::parse: expected q after '*'");
            }
        }
        if (cur.peek() == 'q') {
            ++cur.i;
            saw_q = true;
            e = cur.accept('^') ? parse_int(cur) : 1;
        }
        if (!saw_number && !saw_q)
            throw invalid_input("QScalar::parse: empty term in \"" + cur.s + "\"");
        out.emplace_back(e, sign < 0 ? -coeff : coeff);
    }
}

QScalar terms_to_scalar(const std::vector<std::pair<std::int32_t, BigRat>>& ts) {
    // clear rational denominators, then normalize as a Laurent fraction
    BigInt lcm = 1;
    for (const auto& [e, c] : ts) {
        BigInt d = boost::multiprecision::denominator(c);
        lcm = lcm / int_gcd(lcm, d) * d;
    }
    std::vector<ZPoly::Term> num;
    for (const auto& [e, c] : ts)
        num.emplace_back(e, boost::multiprecision::numerator(c) *
                                (lcm / boost::multiprecision::denominator(c)));
    return QScalar::from_laurent(std::move(num), {{0, lcm}});
}

} // namespace

QScalar QScalar::parse(const std::string& text) {
    Cursor cur{text};
    cur.skip_ws();
    QScalar result;
    if (cur.peek() == '(') {
        // could be "(sum)/(sum)"; parse first group and look for the divider
        cur.expect('(');
        std::vector<std::pair<std::int32_t, BigRat>> num_terms;
        parse_sum(cur, num_terms);
        cur.expect(')');
        if (cur.accept('/')) {
            cur.expect('(');
            std::vector<std::pair<std::int32_t, BigRat>> den_terms;
            parse_sum(cur, den_terms);
            cur.expect(')');
            QScalar n = terms_to_scalar(num_terms);
            QScalar d = terms_to_scalar(den_terms);
            if (d.is_zero()) throw division_by_zero("QScalar::parse: zero denominator");
            result = n / d;
        } else {
            result = terms_to_scalar(num_terms);
        }
    } else {
        std::vector<std::pair<std::int32_t, BigRat>> ts;
        parse_sum(cur, ts);
        result = terms_to_scalar(ts);
    }
    if (!cur.eof())
        throw invalid_input("QScalar::parse: trailing characters in \"" + text + "\"");
    return result;
}

// q-combinatorics -------------------------------------------------------

QScalar qint(std::int64_t n) {
    if (n == 0) return QScalar();
    // [n] = q^(n-1) + q^(n-3) + ... + q^(1-n), with [-n] = -[n]
    const bool neg = n < 0;
    const std::int64_t m = neg ? -n : n;
    std::vector<ZPoly::Term> ts;
    for (std::int64_t e = 1 - m; e <= m - 1; e += 2)
        ts.emplace_back(static_cast<std::int32_t>(e), neg ? -1 : 1);
    return QScalar::from_laurent(std::move(ts), {{0, 1}});
}

QScalar qfact(std::int64_t n) {
    if (n < 0) throw invalid_input("qfact: negative argument");
    QScalar r(1);
    for (std::int64_t k = 1; k <= n; ++k) r *= qint(k);
    return r;
}

QScalar qbinom(std::int64_t m, std::int64_t k) {
    if (k < 0 || k > m) throw invalid_input("qbinom: requires 0 <= k <= m");
    // [m choose k] = prod_{j=1..k} [m-k+j]/[j]
    QScalar r(1);
    for (std::int64_t j = 1; j <= k; ++j) r = r * qint(m - k + j) / qint(j);
    return r;
}

QScalar qbinom(const QBinomialSpec& spec) { return qbinom(spec.m, spec.k); }

} // namespace qserre
