#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "torusrank/convergents.hpp"

using namespace torusrank;

TEST_CASE("all-ones entries give the Fibonacci table") {
    cf_expansion exp;
    exp.period = {1};
    exp.state_d = 5;
    auto t = convergents(exp, 6);
    CHECK(t.A == std::vector<mpz_class>{1, 2, 3, 5, 8, 13});
    CHECK(t.B == std::vector<mpz_class>{1, 1, 2, 3, 5, 8});
}

TEST_CASE("recurrence and determinant identities") {
    auto exp = expand(canonicalize(0, 1, 1, 7));
    auto t = convergents(exp, 5);
    // last row recomputed from rows 3 and 4 by the recurrence
    const mpz_class& a5 = exp.entry(4);
    CHECK(t.A[4] == a5 * t.A[3] + t.A[2]);
    CHECK(t.B[4] == a5 * t.B[3] + t.B[2]);

    for (size_t i = 1; i < 5; ++i) {
        mpz_class det = t.A[i] * t.B[i - 1] - t.A[i - 1] * t.B[i];
        CHECK(det == (i % 2 == 1 ? 1 : -1));
    }
}

TEST_CASE("determinant alternation on random canonical surds") {
    std::mt19937 rng(0xC0FFEE);
    std::uniform_int_distribution<long> dd(2, 100000), da(-50, 50), db(1, 20), dc(1, 50);
    int done = 0;
    while (done < 50) {
        long d = dd(rng);
        if (!is_square_free(d)) continue;
        quadratic_irrational theta;
        try {
            theta = canonicalize(da(rng), db(rng), dc(rng), d);
        } catch (const std::exception&) {
            continue;
        }
        auto table = convergents(expand(theta), 50);
        for (size_t i = 1; i < 50; ++i) {
            mpz_class det = table.A[i] * table.B[i - 1] - table.A[i - 1] * table.B[i];
            REQUIRE(det == (i % 2 == 1 ? 1 : -1));
        }
        ++done;
    }
}

TEST_CASE("reconstruct_verify over general moduli") {
    std::mt19937 rng(1234);
    std::uniform_int_distribution<long> dd(2, 5000), da(-20, 20), db(1, 9), dc(1, 30);
    int done = 0;
    while (done < 40) {
        long d = dd(rng);
        if (!is_square_free(d)) continue;
        quadratic_irrational theta;
        try {
            theta = canonicalize(da(rng), db(rng), dc(rng), d);
        } catch (const std::exception&) {
            continue;
        }
        REQUIRE(reconstruct_verify(theta, expand(theta)));
        ++done;
    }
}
