#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qserre/cartan.hpp"

#include <cstdio>
#include <fstream>
#include <numeric>
#include <random>

using namespace qserre;

namespace {

// Brute-force oracle: search symmetrizers with entries up to `bound`.
bool has_symmetrizer_upto(const IntMatrix& a, std::int64_t bound) {
    const std::size_t l = a.size();
    std::vector<std::int64_t> d(l, 1);
    while (true) {
        bool ok = true;
        for (std::size_t i = 0; i < l && ok; ++i)
            for (std::size_t j = 0; j < l && ok; ++j)
                if (d[i] * a[i][j] != d[j] * a[j][i]) ok = false;
        if (ok) return true;
        std::size_t k = 0;
        while (k < l && d[k] == bound) d[k++] = 1;
        if (k == l) return false;
        ++d[k];
    }
}

} // namespace

TEST_CASE("validate_gcm examples") {
    CHECK_NOTHROW(validate_gcm({{2, -1}, {-1, 2}}));
    CHECK_THROWS_AS(validate_gcm({{2, 1}, {-1, 2}}), invalid_input);
    CHECK_THROWS_AS(validate_gcm({{2, 0}, {-1, 2}}), invalid_input);
    CHECK_THROWS_AS(validate_gcm({{1, 0}, {0, 2}}), invalid_input);
    CHECK_THROWS_AS(validate_gcm({{2, -1}, {-1, 2}, {0, 0}}), invalid_input);
    CHECK_THROWS_AS(validate_gcm({}), invalid_input);
}

TEST_CASE("symmetrize standard types") {
    CartanData a2 = symmetrize({{2, -1}, {-1, 2}});
    CHECK(a2.d == std::vector<std::int64_t>{1, 1});

    CartanData b2 = symmetrize({{2, -1}, {-2, 2}});
    CHECK(b2.d == std::vector<std::int64_t>{2, 1});
    CHECK(b2.b == IntMatrix{{4, -2}, {-2, 2}});

    CartanData g2 = symmetrize({{2, -1}, {-3, 2}});
    CHECK(g2.d == std::vector<std::int64_t>{3, 1});

    CartanData aff = symmetrize({{2, -2}, {-2, 2}});
    CHECK(aff.d == std::vector<std::int64_t>{1, 1});
}

TEST_CASE("non-symmetrizable 3x3 is rejected with a cycle witness") {
    IntMatrix bad = {{2, -1, -1}, {-1, 2, -1}, {-2, -1, 2}};
    // oracle: no symmetrizer with entries up to 12 exists
    CHECK(!has_symmetrizer_upto(bad, 12));
    try {
        symmetrize(bad);
        FAIL("expected invalid_input");
    } catch (const invalid_input& e) {
        CHECK(std::string(e.what()).find("cycle") != std::string::npos);
    }
}

TEST_CASE("symmetrize properties on random symmetrizable matrices") {
    std::mt19937_64 rng(123);
    std::uniform_int_distribution<int> dval(1, 3);
    std::uniform_int_distribution<int> bval(-3, -1);
    std::uniform_int_distribution<int> edge(0, 1);
    for (int trial = 0; trial < 40; ++trial) {
        // build b symmetric from a random d, then recover a
        const int l = 3;
        std::vector<std::int64_t> d(l);
        for (auto& v : d) v = dval(rng);
        IntMatrix b(l, std::vector<std::int64_t>(l, 0));
        for (int i = 0; i < l; ++i) b[i][i] = 2 * d[i];
        for (int i = 0; i < l; ++i)
            for (int j = i + 1; j < l; ++j)
                if (edge(rng)) {
                    // b_ij must be divisible by both d_i and d_j
                    std::int64_t lcm = std::lcm(d[i], d[j]);
                    b[i][j] = b[j][i] = bval(rng) * lcm;
                }
        IntMatrix a(l, std::vector<std::int64_t>(l, 0));
        for (int i = 0; i < l; ++i)
            for (int j = 0; j < l; ++j) a[i][j] = b[i][j] / d[i];
        CartanData cd = symmetrize(a);
        // whenever symmetrize succeeds: b symmetric, gcd(d) = 1
        std::int64_t g = 0;
        for (auto v : cd.d) g = std::gcd(g, v);
        CHECK(g == 1);
        for (int i = 0; i < l; ++i)
            for (int j = 0; j < l; ++j) CHECK(cd.b[i][j] == cd.b[j][i]);
    }
}

TEST_CASE("all 2x2 GCMs with a12*a21 > 0 are symmetrizable") {
    for (std::int64_t x = -4; x <= -1; ++x)
        for (std::int64_t y = -4; y <= -1; ++y) {
            CartanData cd = symmetrize({{2, x}, {y, 2}});
            CHECK(cd.b[0][1] == cd.b[1][0]);
            CHECK(std::gcd(cd.d[0], cd.d[1]) == 1);
        }
}

TEST_CASE("cartan file loading") {
    const char* path = "/tmp/qserre_test_cartan.json";
    {
        std::ofstream out(path);
        out << "{\"a\": [[2, -1], [-3, 2]]}";
    }
    IntMatrix a = load_cartan_file(path);
    CHECK(a == IntMatrix{{2, -1}, {-3, 2}});
    {
        std::ofstream out(path);
        out << "{\"a\": [[2, -1], [-3,";
    }
    CHECK_THROWS_AS(load_cartan_file(path), invalid_input);
    CHECK_THROWS_AS(load_cartan_file("/nonexistent/x.json"), invalid_input);
    std::remove(path);
}
