#include "qserre/mlaurent.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <unordered_map>

namespace qserre {

namespace {

const QScalar kZeroScalar;

struct ExpVecHash {
    std::size_t operator()(const ExpVec& v) const {
        std::size_t h = 1469598103934665603ull;
        for (std::int32_t x : v) {
            h ^= static_cast<std::size_t>(static_cast<std::uint32_t>(x));
            h *= 1099511628211ull;
        }
        return h;
    }
};

} // namespace

// ----------------------------------------------------------- Permutation

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
    const int n = static_cast<int>(images_.size());
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (int v : images_) {
        if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)])
            throw invalid_input("Permutation: images are not a bijection");
        seen[static_cast<std::size_t>(v)] = true;
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (images_[static_cast<std::size_t>(i)] > images_[static_cast<std::size_t>(j)])
                ++inversions_;
}

Permutation Permutation::identity(int n) {
    std::vector<int> im(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) im[static_cast<std::size_t>(i)] = i;
    return Permutation(std::move(im));
}

std::vector<Permutation> Permutation::all(int n) {
    std::vector<int> im(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) im[static_cast<std::size_t>(i)] = i;
    std::vector<Permutation> out;
    do {
        out.emplace_back(im);
    } while (std::next_permutation(im.begin(), im.end()));
    return out;
}

Permutation Permutation::inverse() const {
    std::vector<int> im(images_.size());
    for (int i = 0; i < size(); ++i) im[static_cast<std::size_t>(images_[static_cast<std::size_t>(i)])] = i;
    return Permutation(std::move(im));
}

// -------------------------------------------------------------- MLaurent

MLaurent::MLaurent(int n_z) : n_z_(n_z) {
    if (n_z < 0) throw invalid_input("MLaurent: negative arity");
}

MLaurent MLaurent::constant(int n_z, QScalar c) {
    MLaurent p(n_z);
    if (!c.is_zero()) p.terms_.emplace(ExpVec(static_cast<std::size_t>(n_z + 1), 0), std::move(c));
    return p;
}

MLaurent MLaurent::monomial(int n_z, ExpVec e, QScalar c) {
    MLaurent p(n_z);
    if (static_cast<int>(e.size()) != n_z + 1)
        throw arity_mismatch("MLaurent::monomial: exponent vector length mismatch");
    if (!c.is_zero()) p.terms_.emplace(std::move(e), std::move(c));
    return p;
}

MLaurent MLaurent::variable(int n_z, int slot, std::int32_t power) {
    ExpVec e(static_cast<std::size_t>(n_z + 1), 0);
    e.at(static_cast<std::size_t>(slot)) = power;
    return monomial(n_z, std::move(e), QScalar(1));
}

void MLaurent::check_arity(const MLaurent& other) const {
    if (n_z_ != other.n_z_) throw arity_mismatch("MLaurent: arity mismatch");
}

const QScalar& MLaurent::coeff(const ExpVec& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? kZeroScalar : it->second;
}

const std::pair<const ExpVec, QScalar>& MLaurent::leading_term() const {
    if (terms_.empty()) throw invalid_input("MLaurent::leading_term of zero");
    return *terms_.rbegin();
}

void MLaurent::add_term(const ExpVec& e, const QScalar& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

MLaurent& MLaurent::operator+=(const MLaurent& b) {
    check_arity(b);
    for (const auto& [e, c] : b.terms_) add_term(e, c);
    return *this;
}

MLaurent& MLaurent::operator-=(const MLaurent& b) {
    check_arity(b);
    for (const auto& [e, c] : b.terms_) add_term(e, -c);
    return *this;
}

MLaurent operator+(const MLaurent& a, const MLaurent& b) {
    MLaurent r = a;
    r += b;
    return r;
}

MLaurent operator-(const MLaurent& a, const MLaurent& b) {
    MLaurent r = a;
    r -= b;
    return r;
}

MLaurent MLaurent::operator-() const {
    MLaurent r(n_z_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
}

MLaurent operator*(const MLaurent& a, const MLaurent& b) {
    a.check_arity(b);
    MLaurent r(a.n_z_);
    if (a.is_zero() || b.is_zero()) return r;
    std::unordered_map<ExpVec, QScalar, ExpVecHash> acc;
    acc.reserve(a.terms_.size() * 2);
    ExpVec e(static_cast<std::size_t>(a.slots()));
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            auto [it, inserted] = acc.try_emplace(e, ca * cb);
            if (!inserted) it->second += ca * cb;
        }
    }
    for (auto& [e2, c] : acc)
        if (!c.is_zero()) r.terms_.emplace(e2, std::move(c));
    return r;
}

MLaurent MLaurent::scaled(const QScalar& c) const {
    MLaurent r(n_z_);
    if (c.is_zero()) return r;
    for (const auto& [e, v] : terms_) r.terms_.emplace(e, v * c);
    return r;
}

MLaurent MLaurent::shifted(const ExpVec& e) const {
    if (static_cast<int>(e.size()) != slots())
        throw arity_mismatch("MLaurent::shifted: exponent vector length mismatch");
    MLaurent r(n_z_);
    for (const auto& [ea, c] : terms_) {
        ExpVec eb = ea;
        for (std::size_t i = 0; i < eb.size(); ++i) eb[i] += e[i];
        r.terms_.emplace(std::move(eb), c);
    }
    return r;
}

MLaurent MLaurent::permute_vars(const Permutation& pi) const {
    if (pi.size() != n_z_) throw arity_mismatch("permute_vars: permutation size mismatch");
    MLaurent r(n_z_);
    ExpVec e(static_cast<std::size_t>(slots()));
    for (const auto& [ea, c] : terms_) {
        for (int i = 0; i < n_z_; ++i) e[static_cast<std::size_t>(pi(i))] = ea[static_cast<std::size_t>(i)];
        e.back() = ea.back();
        r.terms_.emplace(e, c);
    }
    return r;
}

BigRat MLaurent::eval_rational(const std::vector<BigRat>& point, const BigRat& qvalue) const {
    if (static_cast<int>(point.size()) != slots())
        throw invalid_input("eval_rational: need one value per variable");
    for (const BigRat& v : point)
        if (v == 0) throw singular_evaluation("eval_rational: zero substitution");
    BigRat total = 0;
    for (const auto& [e, c] : terms_) {
        BigRat term = c.eval(qvalue);
        for (std::size_t i = 0; i < point.size(); ++i) {
            std::int32_t k = e[i];
            if (k == 0) continue;
            BigRat p = 1;
            const std::int32_t a = k > 0 ? k : -k;
            for (std::int32_t j = 0; j < a; ++j) p *= point[i];
            if (k > 0)
                term *= p;
            else
                term /= p;
        }
        total += term;
    }
    return total;
}

MLaurent MLaurent::divide_exact(const MLaurent& a, const MLaurent& b) {
    a.check_arity(b);
    if (b.is_zero()) throw division_by_zero("MLaurent::divide_exact by zero");
    MLaurent q(a.n_z_);
    if (a.is_zero()) return q;
    // shift both into ordinary polynomials so the monomial order is a well-order
    const std::size_t s = static_cast<std::size_t>(a.slots());
    ExpVec amin(s), bmin(s);
    auto mins = [&s](const MLaurent& p, ExpVec& out) {
        bool first = true;
        for (const auto& [e, c] : p.terms()) {
            for (std::size_t i = 0; i < s; ++i)
                out[i] = first ? e[i] : std::min(out[i], e[i]);
            first = false;
        }
    };
    mins(a, amin);
    mins(b, bmin);
    ExpVec neg_amin(s), neg_bmin(s);
    for (std::size_t i = 0; i < s; ++i) {
        neg_amin[i] = -amin[i];
        neg_bmin[i] = -bmin[i];
    }
    MLaurent r = a.shifted(neg_amin);
    MLaurent bs = b.shifted(neg_bmin);
    const auto& [eb, cb] = bs.leading_term();
    while (!r.is_zero()) {
        const auto& [er, cr] = r.leading_term();
        ExpVec t(s);
        for (std::size_t i = 0; i < s; ++i) {
            t[i] = er[i] - eb[i];
            if (t[i] < 0) {
                ExpVec witness(s);
                for (std::size_t j = 0; j < s; ++j) witness[j] = er[j] + amin[j];
                throw inexact_division("MLaurent::divide_exact: not divisible",
                                       monomial_string(witness));
            }
        }
        QScalar qc = cr / cb;
        q.add_term(t, qc);
        r -= bs.shifted(t).scaled(qc);
    }
    ExpVec adj(s);
    for (std::size_t i = 0; i < s; ++i) adj[i] = amin[i] - bmin[i];
    return q.shifted(adj);
}

// rendering / parsing ----------------------------------------------------

std::string MLaurent::monomial_string(const ExpVec& e) {
    std::ostringstream os;
    bool any = false;
    for (std::size_t i = 0; i + 1 < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (any) os << "*";
        os << "z" << (i + 1);
        if (e[i] != 1) os << "^" << e[i];
        any = true;
    }
    if (e.back() != 0) {
        if (any) os << "*";
        os << "w";
        if (e.back() != 1) os << "^" << e.back();
        any = true;
    }
    if (!any) os << "1";
    return os.str();
}

std::string MLaurent::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.to_string() << ")";
        std::string m = monomial_string(e);
        if (m != "1") os << "*" << m;
    }
    return os.str();
}

MLaurent MLaurent::parse(const std::string& text, int n_z) {
    MLaurent r(n_z);
    std::size_t i = 0;
    auto skip_ws = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    skip_ws();
    if (i < text.size() && text.compare(i, 1, "0") == 0 && i + 1 == text.size()) return r;
    while (true) {
        skip_ws();
        if (i >= text.size()) break;
        if (text[i] == '+') {
            ++i;
            skip_ws();
        }
        if (text[i] != '(') throw invalid_input("MLaurent::parse: expected '('");
        // find the matching close parenthesis of the coefficient
        std::size_t depth = 0, j = i;
        for (; j < text.size(); ++j) {
            if (text[j] == '(') ++depth;
            if (text[j] == ')' && --depth == 0) break;
        }
        if (j >= text.size()) throw invalid_input("MLaurent::parse: unbalanced parentheses");
        // the coefficient may itself be "(num)/(den)"
        std::size_t coeff_end = j + 1;
        if (coeff_end < text.size() && text[coeff_end] == '/') {
            std::size_t k = coeff_end + 1;
            if (k >= text.size() || text[k] != '(')
                throw invalid_input("MLaurent::parse: malformed fraction");
            depth = 0;
            for (; k < text.size(); ++k) {
                if (text[k] == '(') ++depth;
                if (text[k] == ')' && --depth == 0) break;
            }
            coeff_end = k + 1;
        }
        QScalar c = QScalar::parse(text.substr(i, coeff_end - i));
        i = coeff_end;
        ExpVec e(static_cast<std::size_t>(n_z + 1), 0);
        skip_ws();
        while (i < text.size() && text[i] == '*') {
            ++i;
            skip_ws();
            std::size_t slot;
            if (text[i] == 'w') {
                slot = static_cast<std::size_t>(n_z);
                ++i;
            } else if (text[i] == 'z') {
                ++i;
                std::size_t start = i;
                while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
                int idx = std::stoi(text.substr(start, i - start));
                if (idx < 1 || idx > n_z) throw invalid_input("MLaurent::parse: variable out of range");
                slot = static_cast<std::size_t>(idx - 1);
            } else if (text[i] == '1') {
                ++i;
                continue;
            } else {
                throw invalid_input("MLaurent::parse: expected variable");
            }
            std::int32_t power = 1;
            if (i < text.size() && text[i] == '^') {
                ++i;
                bool neg = false;
                if (text[i] == '-') {
                    neg = true;
                    ++i;
                }
                std::size_t start = i;
                while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
                power = std::stoi(text.substr(start, i - start));
                if (neg) power = -power;
            }
            e[slot] += power;
            skip_ws();
        }
        r.add_term(e, c);
        skip_ws();
    }
    return r;
}

} // namespace qserre
