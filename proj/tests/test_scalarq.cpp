#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qserre/scalarq.hpp"

#include <map>
#include <random>

using namespace qserre;

namespace {

// Test-only oracle: naive Laurent polynomials in q as degree -> coefficient maps.
using NaiveLaurent = std::map<int, BigInt>;

NaiveLaurent naive_mul(const NaiveLaurent& a, const NaiveLaurent& b) {
    NaiveLaurent r;
    for (const auto& [ea, ca] : a)
        for (const auto& [eb, cb] : b) {
            r[ea + eb] += ca * cb;
            if (r[ea + eb] == 0) r.erase(ea + eb);
        }
    return r;
}

QScalar from_naive(const NaiveLaurent& a) {
    std::vector<ZPoly::Term> ts;
    for (const auto& [e, c] : a) ts.emplace_back(e, c);
    return QScalar::from_laurent(std::move(ts), {{0, 1}});
}

NaiveLaurent naive_qint(int n) {
    NaiveLaurent r;
    for (int e = 1 - n; e <= n - 1; e += 2) r[e] = 1;
    return r;
}

QScalar random_scalar(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> coeff(-4, 4);
    std::uniform_int_distribution<int> expo(-3, 3);
    std::uniform_int_distribution<int> nterms(1, 3);
    auto poly = [&] {
        std::vector<ZPoly::Term> ts;
        int n = nterms(rng);
        for (int i = 0; i < n; ++i) ts.emplace_back(expo(rng), coeff(rng));
        return ts;
    };
    std::vector<ZPoly::Term> den;
    do {
        den = poly();
    } while (QScalar::from_laurent(den, {{0, 1}}).is_zero());
    return QScalar::from_laurent(poly(), std::move(den));
}

} // namespace

TEST_CASE("qint basics") {
    CHECK(qint(0).is_zero());
    CHECK(qint(1) == QScalar(1));
    CHECK(qint(3) == QScalar::parse("q^2 + 1 + q^-2"));
    CHECK(qint(-2) == -qint(2));
    // forced by the defining formula (q^n - q^-n)/(q - q^-1)
    QScalar lhs = (QScalar::q_power(5) - QScalar::q_power(-5)) /
                  (QScalar::q_power(1) - QScalar::q_power(-1));
    CHECK(qint(5) == lhs);
}

TEST_CASE("qfact") {
    CHECK(qfact(0) == QScalar(1));
    CHECK(qfact(2) == QScalar::parse("q + q^-1"));
    // independent expansion oracle for [3]! = [3][2][1]
    NaiveLaurent expect = naive_mul(naive_qint(3), naive_mul(naive_qint(2), naive_qint(1)));
    CHECK(qfact(3) == from_naive(expect));
    CHECK(qfact(3) == QScalar::parse("q^3 + 2*q + 2*q^-1 + q^-3"));
    CHECK_THROWS_AS(qfact(-1), invalid_input);
}

TEST_CASE("qbinom examples") {
    CHECK(qbinom(1, 0) == QScalar(1));
    CHECK(qbinom(2, 1) == qint(2));
    // brute-force expansion of [4]!/([2]![2]!), plus an evaluation cross-check
    CHECK(qbinom(4, 2) == QScalar::parse("q^4 + q^2 + 2 + q^-2 + q^-4"));
    for (BigRat q0 : {BigRat(2), BigRat(3, 2), BigRat(-5, 7)}) {
        BigRat direct = qfact(4).eval(q0) / (qfact(2).eval(q0) * qfact(2).eval(q0));
        CHECK(qbinom(4, 2).eval(q0) == direct);
    }
    CHECK(qbinom(QBinomialSpec{4, 2}) == qbinom(4, 2));
    CHECK_THROWS_AS(qbinom(3, 4), invalid_input);
    CHECK_THROWS_AS(qbinom(3, -1), invalid_input);
}

TEST_CASE("qbinom symmetry, bar invariance, q=1 specialization") {
    for (int m = 0; m <= 8; ++m) {
        BigInt binom = 1;
        for (int k = 0; k <= m; ++k) {
            QScalar b = qbinom(m, k);
            CHECK(b == qbinom(m, m - k));
            CHECK(b == b.bar());
            CHECK(b.is_laurent_polynomial());
            CHECK(b.eval(1) == BigRat(binom));
            binom = binom * (m - k) / (k + 1);
        }
    }
}

TEST_CASE("field op examples") {
    QScalar a = QScalar::parse("1 - q^2");
    CHECK(a + QScalar() == a);
    CHECK(a * a.inverted() == QScalar(1));
    CHECK(QScalar::parse("1 - q^2") / QScalar::parse("1 - q") == QScalar::parse("1 + q"));
    // polynomial division oracle: (1+q)(1-q) == 1-q^2
    CHECK(QScalar::parse("1 + q") * QScalar::parse("1 - q") == QScalar::parse("1 - q^2"));
    CHECK_THROWS_AS(a / QScalar(), division_by_zero);
    CHECK_THROWS_AS(QScalar().inverted(), division_by_zero);
}

TEST_CASE("field laws on random triples") {
    std::mt19937_64 rng(20260809);
    for (int trial = 0; trial < 60; ++trial) {
        QScalar a = random_scalar(rng), b = random_scalar(rng), c = random_scalar(rng);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + QScalar() == a);
        CHECK(a * QScalar(1) == a);
        CHECK((a - a).is_zero());
        if (!a.is_zero()) CHECK(a * a.inverted() == QScalar(1));
    }
}

TEST_CASE("canonical form") {
    // a Laurent polynomial value normalizes to denominator 1
    QScalar v = QScalar::from_laurent({{0, 1}, {2, -1}}, {{0, 1}, {1, -1}}); // (1-q^2)/(1-q)
    CHECK(v.is_laurent_polynomial());
    CHECK(v == QScalar::parse("1 + q"));
    // common monomial powers move into the shift
    QScalar w = QScalar::from_laurent({{-3, 2}}, {{-1, 4}});
    CHECK(w == QScalar::monomial(BigRat(1, 2), -2));
    CHECK(w.num().low_exponent() == 0);
    CHECK(w.den().low_exponent() == 0);
    // sign normalization: denominator leading coefficient positive
    QScalar s = QScalar::from_laurent({{0, 1}}, {{0, -1}, {1, -1}});
    CHECK(s.den().leading_coeff() > 0);
}

TEST_CASE("substitutions and eval") {
    QScalar b = qbinom(4, 2);
    CHECK(b.substitute_q_power(2) == QScalar::parse("q^8 + q^4 + 2 + q^-4 + q^-8"));
    CHECK(b.substitute(QScalar::q_power(2)) == b.substitute_q_power(2));
    QScalar r = QScalar::parse("(1 + q)/(1 - q)");
    CHECK(r.eval(BigRat(2)) == BigRat(-3));
    CHECK_THROWS_AS(r.eval(BigRat(1)), singular_evaluation);
    CHECK_THROWS_AS(QScalar::q_power(-1).eval(BigRat(0)), singular_evaluation);
}

TEST_CASE("rendering round trip") {
    CHECK(qbinom(4, 2).to_string() == "q^4 + q^2 + 2 + q^-2 + q^-4");
    CHECK(QScalar().to_string() == "0");
    CHECK(QScalar::parse("0").is_zero());
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 80; ++trial) {
        QScalar a = random_scalar(rng);
        CHECK(QScalar::parse(a.to_string()) == a);
    }
    // rational-literal convenience input
    CHECK(QScalar::parse("1/2") == QScalar(BigRat(1, 2)));
    CHECK(QScalar::parse("3*q^-2 - q") == QScalar::from_laurent({{-2, 3}, {1, -1}}, {{0, 1}}));
    CHECK_THROWS_AS(QScalar::parse("q +"), invalid_input);
    CHECK_THROWS_AS(QScalar::parse("zebra"), invalid_input);
}

TEST_CASE("as_monomial") {
    CHECK(QScalar::q_power(-3).as_monomial().has_value());
    auto m = QScalar::monomial(BigRat(-2, 3), 5).as_monomial();
    REQUIRE(m.has_value());
    CHECK(m->first == BigRat(-2, 3));
    CHECK(m->second == 5);
    CHECK(!QScalar::parse("1 + q").as_monomial().has_value());
}
