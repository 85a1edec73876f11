#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qserre/mlaurent.hpp"

#include <random>

using namespace qserre;

namespace {

MLaurent random_poly(std::mt19937_64& rng, int n_z, int max_terms) {
    std::uniform_int_distribution<int> expo(-2, 2);
    std::uniform_int_distribution<int> coeff(-3, 3);
    std::uniform_int_distribution<int> qexp(-1, 1);
    std::uniform_int_distribution<int> nterms(0, max_terms);
    MLaurent p(n_z);
    int n = nterms(rng);
    for (int t = 0; t < n; ++t) {
        ExpVec e(static_cast<std::size_t>(n_z + 1));
        for (auto& x : e) x = expo(rng);
        p.add_term(e, QScalar::monomial(coeff(rng), qexp(rng)));
    }
    return p;
}

std::vector<BigRat> random_point(std::mt19937_64& rng, int slots) {
    std::uniform_int_distribution<int> num(1, 7);
    std::uniform_int_distribution<int> den(1, 4);
    std::uniform_int_distribution<int> sign(0, 1);
    std::vector<BigRat> p;
    for (int i = 0; i < slots; ++i) {
        BigRat v(num(rng), den(rng));
        p.push_back(sign(rng) ? v : -v);
    }
    return p;
}

// z1/z2 style ratio monomials for readability
ExpVec ev(std::initializer_list<std::int32_t> xs) { return ExpVec(xs); }

} // namespace

TEST_CASE("ring op examples") {
    // (1 - z1/z2)(1 + z1/z2) = 1 - z1^2/z2^2
    MLaurent one = MLaurent::constant(2, QScalar(1));
    MLaurent r = MLaurent::monomial(2, ev({1, -1, 0}), QScalar(1));
    MLaurent lhs = (one - r) * (one + r);
    MLaurent expect = one - MLaurent::monomial(2, ev({2, -2, 0}), QScalar(1));
    CHECK(lhs == expect);

    std::mt19937_64 rng(1);
    MLaurent a = random_poly(rng, 2, 6);
    CHECK((a + (-a)).is_zero());

    // (z - c) * z^-1 = 1 - c z^-1 with c = q^3
    QScalar c = QScalar::q_power(3);
    MLaurent z = MLaurent::variable(1, 0);
    MLaurent zc = z - MLaurent::constant(1, c);
    MLaurent got = zc * MLaurent::variable(1, 0, -1);
    MLaurent want = MLaurent::constant(1, QScalar(1)) -
                    MLaurent::monomial(1, ev({-1, 0}), c);
    CHECK(got == want);
}

TEST_CASE("arity mismatch is reported") {
    MLaurent a(2), b(3);
    CHECK_THROWS_AS(a + b, arity_mismatch);
    CHECK_THROWS_AS(a * b, arity_mismatch);
}

TEST_CASE("permute_vars examples") {
    std::mt19937_64 rng(2);
    MLaurent p = random_poly(rng, 3, 8);
    CHECK(p.permute_vars(Permutation::identity(3)) == p);

    // (1 2) swap on z1/z2
    MLaurent r12 = MLaurent::monomial(2, ev({1, -1, 0}), QScalar(1));
    CHECK(r12.permute_vars(Permutation({1, 0})) ==
          MLaurent::monomial(2, ev({-1, 1, 0}), QScalar(1)));

    // cycle 1->2->3->1 on z1 z2^2 z3^3 gives z1^3 z2 z3^2
    MLaurent m = MLaurent::monomial(3, ev({1, 2, 3, 0}), QScalar(1));
    CHECK(m.permute_vars(Permutation({1, 2, 0})) ==
          MLaurent::monomial(3, ev({3, 1, 2, 0}), QScalar(1)));
}

TEST_CASE("permutation basics") {
    auto perms = Permutation::all(3);
    CHECK(perms.size() == 6);
    CHECK(perms.front() == Permutation::identity(3));
    CHECK(perms[1].images() == std::vector<int>{0, 2, 1});
    CHECK(perms[1].inversions() == 1);
    CHECK(Permutation({2, 1, 0}).inversions() == 3);
    CHECK(Permutation({1, 2, 0}).inverse() == Permutation({2, 0, 1}));
    CHECK_THROWS_AS(Permutation({0, 0}), invalid_input);
}

TEST_CASE("eval examples") {
    MLaurent zero(2);
    CHECK(zero.eval_rational({1, 2, 1}, 2) == 0);
    // 1 - z1/z2 at z1=1, z2=2
    MLaurent p = MLaurent::constant(2, QScalar(1)) -
                 MLaurent::monomial(2, ev({1, -1, 0}), QScalar(1));
    CHECK(p.eval_rational({1, 2, 1}, 3) == BigRat(1, 2));
    CHECK_THROWS_AS(p.eval_rational({0, 2, 1}, 3), singular_evaluation);
}

TEST_CASE("eval is a ring homomorphism") {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 25; ++trial) {
        MLaurent a = random_poly(rng, 2, 6);
        MLaurent b = random_poly(rng, 2, 6);
        auto pt = random_point(rng, 3);
        BigRat q0(3, 2);
        CHECK((a * b).eval_rational(pt, q0) ==
              a.eval_rational(pt, q0) * b.eval_rational(pt, q0));
        CHECK((a + b).eval_rational(pt, q0) ==
              a.eval_rational(pt, q0) + b.eval_rational(pt, q0));
    }
}

TEST_CASE("ring laws on random triples") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 15; ++trial) {
        int n_z = 1 + static_cast<int>(rng() % 4); // arity up to 5 slots incl. w
        MLaurent a = random_poly(rng, n_z, 10);
        MLaurent b = random_poly(rng, n_z, 10);
        MLaurent c = random_poly(rng, n_z, 10);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
    }
}

TEST_CASE("permute_vars is a ring homomorphism and respects eval") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        MLaurent a = random_poly(rng, 3, 8);
        MLaurent b = random_poly(rng, 3, 8);
        auto perms = Permutation::all(3);
        const Permutation& pi = perms[rng() % perms.size()];
        CHECK((a * b).permute_vars(pi) == a.permute_vars(pi) * b.permute_vars(pi));

        auto pt = random_point(rng, 4);
        BigRat q0(5, 3);
        // eval(permute(p), x) = eval(p, x permuted by the inverse)
        Permutation inv = pi.inverse();
        std::vector<BigRat> pt2(4);
        for (int i = 0; i < 3; ++i) pt2[static_cast<std::size_t>(i)] = pt[static_cast<std::size_t>(pi(i))];
        pt2[3] = pt[3];
        CHECK(a.permute_vars(pi).eval_rational(pt, q0) == a.eval_rational(pt2, q0));
        (void)inv;
    }
}

TEST_CASE("divide_exact examples") {
    MLaurent one = MLaurent::constant(2, QScalar(1));
    std::mt19937_64 rng(5);
    MLaurent a = random_poly(rng, 2, 8);
    CHECK(MLaurent::divide_exact(a, one) == a);

    // (1 - z1^2/z2^2) / (1 - z1/z2) = 1 + z1/z2
    MLaurent r = MLaurent::monomial(2, ev({1, -1, 0}), QScalar(1));
    CHECK(MLaurent::divide_exact(one - r * r, one - r) == one + r);

    // P1(z, c) / (1 - z) = -(1 - c z^-1)  with c = q^3
    QScalar c = QScalar::q_power(3);
    MLaurent z = MLaurent::variable(1, 0);
    MLaurent zinv = MLaurent::variable(1, 0, -1);
    MLaurent one1 = MLaurent::constant(1, QScalar(1));
    MLaurent p1 = z + zinv.scaled(c) - MLaurent::constant(1, c + QScalar(1));
    MLaurent got = MLaurent::divide_exact(p1, one1 - z);
    CHECK(got == (one1 - zinv.scaled(c)).scaled(QScalar(-1)));
}

TEST_CASE("divide_exact detects failure with a witness") {
    MLaurent one = MLaurent::constant(1, QScalar(1));
    MLaurent z = MLaurent::variable(1, 0);
    try {
        MLaurent::divide_exact(one + z, one - z);
        FAIL("expected inexact_division");
    } catch (const inexact_division& e) {
        CHECK(!e.witness.empty());
    }
}

TEST_CASE("divide_exact(a*b, b) == a on random samples") {
    std::mt19937_64 rng(11);
    int done = 0;
    while (done < 20) {
        MLaurent a = random_poly(rng, 2, 6);
        MLaurent b = random_poly(rng, 2, 6);
        if (b.is_zero()) continue;
        CHECK(MLaurent::divide_exact(a * b, b) == a);
        ++done;
    }
}

TEST_CASE("rendering round trip") {
    CHECK(MLaurent(2).to_string() == "0");
    CHECK(MLaurent::parse("0", 2).is_zero());
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 40; ++trial) {
        MLaurent a = random_poly(rng, 3, 8);
        CHECK(MLaurent::parse(a.to_string(), 3) == a);
    }
    MLaurent p = MLaurent::parse("(q + q^-1)*z1^2*w^-1 + (-1)*z2", 2);
    CHECK(p.term_count() == 2);
    CHECK(p.coeff(ev({2, 0, -1})) == qint(2));
}
