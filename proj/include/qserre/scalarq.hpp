#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qserre/errors.hpp"

namespace qserre {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

/// Integer-coefficient polynomial in q. Sparse: ascending exponents >= 0,
/// no zero coefficients stored.
class ZPoly {
public:
    using Term = std::pair<std::int32_t, BigInt>;

    ZPoly() = default;
    static ZPoly one();
    static ZPoly constant(BigInt c);
    static ZPoly monomial(BigInt c, std::int32_t e);
    /// Merges duplicate exponents, drops zeros, sorts. Exponents must be >= 0.
    static ZPoly from_terms(std::vector<Term> terms);

    bool is_zero() const { return terms_.empty(); }
    bool is_one() const;
    bool is_monomial() const { return terms_.size() == 1; }
    std::int32_t degree() const;       // -1 for the zero polynomial
    std::int32_t low_exponent() const; // 0 for the zero polynomial
    std::size_t term_count() const { return terms_.size(); }
    const std::vector<Term>& terms() const { return terms_; }
    const BigInt& leading_coeff() const;
    const BigInt& coeff(std::int32_t e) const;

    friend ZPoly operator+(const ZPoly& a, const ZPoly& b);
    friend ZPoly operator-(const ZPoly& a, const ZPoly& b);
    friend ZPoly operator*(const ZPoly& a, const ZPoly& b);
    ZPoly operator-() const;
    bool operator==(const ZPoly&) const = default;

    ZPoly shifted(std::int32_t d) const; // multiply by q^d; resulting exponents must stay >= 0
    BigInt content() const;              // nonnegative gcd of coefficients
    ZPoly divided_by_int(const BigInt& g) const; // exact
    BigRat eval(const BigRat& x) const;

    /// Primitive gcd with positive leading coefficient times gcd of contents.
    static ZPoly gcd(const ZPoly& a, const ZPoly& b);
    /// Exact quotient; throws inexact_division if b does not divide a.
    static ZPoly divide_exact(const ZPoly& a, const ZPoly& b);

private:
    std::vector<Term> terms_;
};

/// Element of Q(q): value = q^shift * num(q)/den(q), in the canonical form
///   num, den integer polynomials with nonzero constant term,
///   gcd(num, den) = 1 in Z[q] (polynomial part and integer contents),
///   den has positive leading coefficient.
/// Canonical form is unique, so equality is structural.
class QScalar {
public:
    QScalar() = default; // zero
    QScalar(long v);
    explicit QScalar(BigInt v);
    explicit QScalar(const BigRat& v);

    static QScalar q_power(std::int32_t e);             // q^e
    static QScalar monomial(const BigRat& c, std::int32_t e); // c*q^e
    /// Normalizing constructor from Laurent term lists (exponents may be negative).
    static QScalar from_laurent(std::vector<ZPoly::Term> num_terms,
                                std::vector<ZPoly::Term> den_terms);
    static QScalar make(std::int32_t shift, ZPoly num, ZPoly den);

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return shift_ == 0 && num_.is_one() && den_.is_one(); }
    bool is_laurent_polynomial() const { return den_.is_one(); }
    std::int32_t shift() const { return shift_; }
    const ZPoly& num() const { return num_; }
    const ZPoly& den() const { return den_; }

    /// Decomposes as c*q^e when num and den are single terms.
    std::optional<std::pair<BigRat, std::int32_t>> as_monomial() const;

    friend QScalar operator+(const QScalar& a, const QScalar& b);
    friend QScalar operator-(const QScalar& a, const QScalar& b);
    friend QScalar operator*(const QScalar& a, const QScalar& b);
    friend QScalar operator/(const QScalar& a, const QScalar& b); // throws division_by_zero
    QScalar operator-() const;
    QScalar& operator+=(const QScalar& b) { return *this = *this + b; }
    QScalar& operator-=(const QScalar& b) { return *this = *this - b; }
    QScalar& operator*=(const QScalar& b) { return *this = *this * b; }
    bool operator==(const QScalar&) const = default;

    QScalar inverted() const;        // throws division_by_zero on zero
    QScalar pow(std::int64_t e) const;
    QScalar bar() const { return substitute_q_power(-1); } // q -> q^-1
    QScalar substitute_q_power(std::int32_t k) const;      // q -> q^k, k != 0
    QScalar substitute(const QScalar& v) const;            // q -> v (v nonzero if needed)
    BigRat eval(const BigRat& q0) const; // throws singular_evaluation

    std::string to_string() const;
    static QScalar parse(const std::string& text); // exact round trip of to_string

private:
    std::int32_t shift_ = 0;
    ZPoly num_;                 // zero polynomial encodes the zero scalar
    ZPoly den_ = ZPoly::one();
};

// q-combinatorics over QScalar.

/// Balanced q-integer [n] = (q^n - q^-n)/(q - q^-1); a Laurent polynomial.
QScalar qint(std::int64_t n);
/// [n]! = [n][n-1]...[1]; requires n >= 0.
QScalar qfact(std::int64_t n);

struct QBinomialSpec {
    std::int64_t m = 0;
    std::int64_t k = 0;
};

/// Gaussian binomial [m]!/([k]![m-k]!); requires 0 <= k <= m.
QScalar qbinom(std::int64_t m, std::int64_t k);
QScalar qbinom(const QBinomialSpec& spec);

} // namespace qserre
