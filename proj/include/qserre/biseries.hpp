#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qserre/scalarq.hpp"

namespace qserre {

/// Range of degrees covered by a geometric string.
struct Ray {
    enum class Kind { Lower, Upper, Full }; // n <= bound | n >= bound | all of Z
    Kind kind = Kind::Full;
    std::int64_t bound = 0;

    static Ray lower(std::int64_t b) { return {Kind::Lower, b}; }
    static Ray upper(std::int64_t b) { return {Kind::Upper, b}; }
    static Ray full() { return {Kind::Full, 0}; }
    bool contains(std::int64_t n) const {
        switch (kind) {
            case Kind::Lower: return n <= bound;
            case Kind::Upper: return n >= bound;
            default: return true;
        }
    }
    bool operator==(const Ray&) const = default;
};

/// Polynomial in the degree variable n with QScalar coefficients: c[0] + c[1] n + ...
/// Used as the coefficient of a geometric string; constant in the common case.
struct DegreePoly {
    std::vector<QScalar> c;

    DegreePoly() = default;
    explicit DegreePoly(QScalar c0) { if (!c0.is_zero()) c.push_back(std::move(c0)); }
    bool is_zero() const { return c.empty(); }
    int degree() const { return static_cast<int>(c.size()) - 1; }
    QScalar eval(std::int64_t n) const;
    DegreePoly shifted_arg(std::int64_t d) const;  // n -> n + d
    DegreePoly negated_arg() const;                // n -> -n
    friend DegreePoly operator+(const DegreePoly& a, const DegreePoly& b);
    friend DegreePoly operator*(const DegreePoly& a, const DegreePoly& b);
    DegreePoly scaled(const QScalar& s) const;
    bool operator==(const DegreePoly&) const = default;
    void normalize(); // strip trailing zeros
};

/// One geometric string: contributes coeff(n) * ratio^n at every degree n in range.
struct GeomString {
    DegreePoly coeff;
    QScalar ratio; // nonzero
    Ray range;
    bool operator==(const GeomString&) const = default;
};

/// Interval of admissible |z| values, endpoints exact rationals.
/// lo = 0 means unbounded below (any positive modulus), unbounded_hi means no upper bound.
struct ConvergenceRegion {
    BigRat lo = 0;
    BigRat hi = 0;
    bool unbounded_hi = true;
    bool empty = false;

    static ConvergenceRegion all();
    static ConvergenceRegion none();
    static ConvergenceRegion below(BigRat hi);          // 0 < |z| < hi
    static ConvergenceRegion above(BigRat lo);          // |z| > lo
    static ConvergenceRegion intersect(const ConvergenceRegion& a, const ConvergenceRegion& b);
    /// Region in |1/z| terms: swaps and inverts the bounds.
    ConvergenceRegion reciprocal() const;
    bool nonempty_interior() const;
    std::string to_string() const;
    bool operator==(const ConvergenceRegion&) const = default;
};

bool regions_intersect(const std::vector<ConvergenceRegion>& regions);

/// Two-sided formal power series in one variable: finite support plus geometric strings.
class BiSeries {
public:
    enum class Mode { Exact, ClosedForm };

    BiSeries() = default;
    static BiSeries from_finite(std::map<std::int64_t, QScalar> coeffs);
    static BiSeries term(std::int64_t degree, QScalar c);
    static BiSeries constant(QScalar c) { return term(0, std::move(c)); }
    /// Geometric series 1/(1 - a z) = sum_{n>=0} a^n z^n; requires a != 0.
    static BiSeries geometric(const QScalar& a);
    /// Formal delta: sum over all integers n of a^n z^n; requires a != 0.
    static BiSeries delta(const QScalar& a);
    static BiSeries string(DegreePoly coeff, QScalar ratio, Ray range);

    bool is_zero() const { return finite_.empty() && strings_.empty(); }
    bool is_finite() const { return strings_.empty(); }
    const std::map<std::int64_t, QScalar>& finite_part() const { return finite_; }
    const std::vector<GeomString>& strings() const { return strings_; }

    QScalar coefficient(std::int64_t p) const;
    std::map<std::int64_t, QScalar> truncate(std::int64_t lo, std::int64_t hi) const;

    /// Support bounds; nullopt means unbounded on that side.
    std::optional<std::int64_t> support_lower() const;
    std::optional<std::int64_t> support_upper() const;

    friend BiSeries operator+(const BiSeries& a, const BiSeries& b);
    friend BiSeries operator-(const BiSeries& a, const BiSeries& b);
    BiSeries operator-() const;
    bool operator==(const BiSeries&) const = default;

    BiSeries scaled(const QScalar& s) const;
    BiSeries shifted(std::int64_t d) const; // multiply by z^d
    BiSeries reversed() const;              // z -> z^-1

    /// Product under the diagonal-sum existence criterion. In Exact mode every
    /// diagonal must be a finite sum; in ClosedForm mode infinite geometric
    /// diagonals are summed in the field when |ratio quotient| < 1 at |q| = rho.
    static BiSeries mul(const BiSeries& f, const BiSeries& g, Mode mode,
                        const BigRat& rho = BigRat(1, 2));

    ConvergenceRegion convergence_region(const BigRat& rho) const;

    std::string to_string() const;
    /// JSON array of [degree, coefficient-string] pairs over [lo, hi].
    std::string window_json(std::int64_t lo, std::int64_t hi) const;

    void canonicalize();

private:
    std::map<std::int64_t, QScalar> finite_;
    std::vector<GeomString> strings_;
};

} // namespace qserre
