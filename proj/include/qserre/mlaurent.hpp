#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qserre/scalarq.hpp"

namespace qserre {

/// Exponent vector: one slot per z-variable followed by one slot for w.
using ExpVec = std::vector<std::int32_t>;

/// Canonical monomial order: w exponent first, then z exponents lexicographically.
struct ExpVecLess {
    bool operator()(const ExpVec& a, const ExpVec& b) const {
        if (a.back() != b.back()) return a.back() < b.back();
        for (std::size_t i = 0; i + 1 < a.size(); ++i)
            if (a[i] != b[i]) return a[i] < b[i];
        return false;
    }
};

/// Bijection on {0..n-1}; images[i] is the image of slot i.
class Permutation {
public:
    explicit Permutation(std::vector<int> images);
    static Permutation identity(int n);
    /// All permutations of {0..n-1} in lexicographic order of image arrays.
    static std::vector<Permutation> all(int n);

    int size() const { return static_cast<int>(images_.size()); }
    int operator()(int i) const { return images_[static_cast<std::size_t>(i)]; }
    const std::vector<int>& images() const { return images_; }
    int inversions() const { return inversions_; }
    int sign() const { return inversions_ % 2 == 0 ? 1 : -1; }
    Permutation inverse() const;
    bool operator==(const Permutation&) const = default;

private:
    std::vector<int> images_;
    int inversions_ = 0;
};

/// Sparse multivariate Laurent polynomial in z_1..z_N, w over QScalar.
class MLaurent {
public:
    using TermMap = std::map<ExpVec, QScalar, ExpVecLess>;

    explicit MLaurent(int n_z = 1);
    static MLaurent constant(int n_z, QScalar c);
    static MLaurent monomial(int n_z, ExpVec e, QScalar c);
    /// z_i - c (i is 0-based); convenience for tests.
    static MLaurent variable(int n_z, int slot, std::int32_t power = 1);

    int arity() const { return n_z_; }           // number of z variables
    int slots() const { return n_z_ + 1; }       // including w
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const TermMap& terms() const { return terms_; }
    const QScalar& coeff(const ExpVec& e) const;
    /// Leading (largest) term in the canonical order; polynomial must be nonzero.
    const std::pair<const ExpVec, QScalar>& leading_term() const;

    friend MLaurent operator+(const MLaurent& a, const MLaurent& b);
    friend MLaurent operator-(const MLaurent& a, const MLaurent& b);
    friend MLaurent operator*(const MLaurent& a, const MLaurent& b);
    MLaurent operator-() const;
    MLaurent& operator+=(const MLaurent& b);
    MLaurent& operator-=(const MLaurent& b);
    bool operator==(const MLaurent&) const = default;

    MLaurent scaled(const QScalar& c) const;
    MLaurent shifted(const ExpVec& e) const; // multiply by the monomial z^e
    void add_term(const ExpVec& e, const QScalar& c);

    /// Relabels z-slots by pi (w fixed): new exponent of z_{pi(i)} = old exponent of z_i.
    MLaurent permute_vars(const Permutation& pi) const;

    /// Exact evaluation; point has one nonzero rational per slot (z's then w).
    BigRat eval_rational(const std::vector<BigRat>& point, const BigRat& qvalue) const;

    /// Exact quotient in the Laurent ring; throws inexact_division with a witness.
    static MLaurent divide_exact(const MLaurent& a, const MLaurent& b);

    std::string to_string() const;
    static MLaurent parse(const std::string& text, int n_z);
    static std::string monomial_string(const ExpVec& e);

private:
    int n_z_;
    TermMap terms_;
    void check_arity(const MLaurent& other) const;
};

} // namespace qserre
