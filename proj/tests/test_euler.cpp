#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "torusrank/euler_system.hpp"

using namespace torusrank;

namespace {
quadratic_irrational surd(long d) { return canonicalize(0, 1, 1, d); }
}

TEST_CASE("symbolic continuants at period length 1") {
    auto [an, an1, an2, bn, bn1, bn2] = symbolic_continuants(0, 1);
    const size_t nv = 2;  // k1, D
    auto k = integer_polynomial::variable(nv, 0);
    CHECK(an == k);
    CHECK(an1 == integer_polynomial::constant(nv, 1));
    CHECK(an2.is_zero());
    CHECK(bn == integer_polynomial::constant(nv, 1));
    CHECK(bn1.is_zero());
    CHECK(bn2 == integer_polynomial::constant(nv, 1));
}

TEST_CASE("symbolic continuants at period length 2") {
    auto [an, an1, an2, bn, bn1, bn2] = symbolic_continuants(1, 2);
    const size_t nv = 4;  // g1, k1, k2, D
    auto k1 = integer_polynomial::variable(nv, 1);
    auto k2 = integer_polynomial::variable(nv, 2);
    CHECK(an == k1 * k2 + integer_polynomial::constant(nv, 1));
    CHECK(an1 == k1);
    CHECK(bn == k2);
    CHECK(bn1 == integer_polynomial::constant(nv, 1));
    (void)an2;
    (void)bn2;

    // cross-check numerically against sqrt(83)'s period (9, 18)
    std::vector<mpz_class> point{9, 9, 18, 83};
    CHECK(an.evaluate(point) == 163);
    CHECK(bn.evaluate(point) == 18);
}

TEST_CASE("all-ones specialization gives Fibonacci numbers") {
    auto [an, an1, an2, bn, bn1, bn2] = symbolic_continuants(0, 6);
    std::vector<mpz_class> ones(7, 1);
    CHECK(an.evaluate(ones) == 13);
    CHECK(an1.evaluate(ones) == 8);
    CHECK(bn.evaluate(ones) == 8);
    CHECK(bn1.evaluate(ones) == 5);
    (void)an2;
    (void)bn2;
}

TEST_CASE("symbolic continuants specialize to the numeric tables") {
    std::mt19937 rng(777);
    std::uniform_int_distribution<long> dd(2, 10000);
    int done = 0;
    while (done < 100) {
        long d = dd(rng);
        if (!is_square_free(d)) continue;
        auto exp = expand(surd(d));
        auto [an, an1, an2, bn, bn1, bn2] = symbolic_continuants(exp.m(), exp.period_length());
        (void)an2;
        (void)bn2;
        std::vector<mpz_class> point(exp.preperiod);
        point.insert(point.end(), exp.period.begin(), exp.period.end());
        point.push_back(d);
        auto [van, van1, van2, vbn, vbn1, vbn2] = period_continuants(exp.period);
        (void)van2;
        (void)vbn2;
        REQUIRE(an.evaluate(point) == van);
        REQUIRE(an1.evaluate(point) == van1);
        REQUIRE(bn.evaluate(point) == vbn);
        REQUIRE(bn1.evaluate(point) == vbn1);
        ++done;
    }
}

TEST_CASE("euler system at the golden mean") {
    auto theta = canonicalize(1, 1, 2, 5);
    auto sys = build_euler_system(theta, expand(theta));
    CHECK(sys.c1 == 1);
    CHECK(sys.c2 == 2);
    CHECK(sys.scale_num == 1);
    CHECK(sys.scale_den == 1);
    // third relation reads D - c1^2 - 2 c2 A_{n-1} with D = 5 at the base
    for (const auto& eq : sys.equations) CHECK(eq.evaluate(sys.base_point) == 0);
    CHECK(sys.base_point == std::vector<mpz_class>{1, 5});
}

TEST_CASE("euler system at sqrt(83)") {
    auto theta = surd(83);
    auto sys = build_euler_system(theta, expand(theta));
    CHECK(sys.base_point == std::vector<mpz_class>{9, 9, 18, 83});
    // constants computed independently: one-period continuants of (9, 18)
    // are A = (9, 163), B = (1, 18), so c1 = 162, c2 = 36
    CHECK(sys.c1 == 162);
    CHECK(sys.c2 == 36);
    CHECK(sys.scale_num == 324);  // (c1^2 + 4 A1 Bn) / 83
    CHECK(sys.scale_den == 1);
    for (const auto& eq : sys.equations) CHECK(eq.evaluate(sys.base_point) == 0);
}

TEST_CASE("euler system at sqrt(7)") {
    auto theta = surd(7);
    auto sys = build_euler_system(theta, expand(theta));
    CHECK(sys.base_point == std::vector<mpz_class>{2, 1, 1, 1, 4, 7});
    for (const auto& eq : sys.equations) CHECK(eq.evaluate(sys.base_point) == 0);
}

TEST_CASE("diophantine form: substitution identity and unique sign branch") {
    for (long d : {5, 7, 83, 19, 43}) {
        quadratic_irrational theta = d == 5 ? canonicalize(1, 1, 2, 5) : surd(d);
        auto sys = build_euler_system(theta, expand(theta));
        auto dio = linear_diophantine_form(sys);
        CHECK(dio.evaluate(sys.base_point) == 0);

        // expanded substitution of the rewrites into the scaled third relation
        const size_t nv = sys.nvars();
        auto kn = integer_polynomial::variable(nv, sys.var_k(sys.period_len - 1));
        auto c1s = kn * sys.A_n1 + sys.A_n2 - sys.B_n1;
        auto c2s = mpz_class(2) * (kn * sys.B_n1) + mpz_class(2) * sys.B_n2;
        auto direct = sys.scale_num * integer_polynomial::variable(nv, sys.var_d()) -
                      sys.scale_den * (c1s * c1s) -
                      mpz_class(2) * sys.scale_den * (c2s * sys.A_n1);
        CHECK(dio == direct);

        // exactly one sign branch vanishes: flipping the branch shifts by 8q
        auto other = dio + integer_polynomial::constant(nv, 8 * sys.scale_den);
        auto other2 = dio - integer_polynomial::constant(nv, 8 * sys.scale_den);
        CHECK(other.evaluate(sys.base_point) != 0);
        CHECK(other2.evaluate(sys.base_point) != 0);
    }
}

TEST_CASE("dimension upper bound") {
    auto sys83 = build_euler_system(surd(83), expand(surd(83)));
    CHECK(rational_dimension_upper_bound(sys83) >= 2);

    auto sys7 = build_euler_system(surd(7), expand(surd(7)));
    CHECK(rational_dimension_upper_bound(sys7) >= 1);

    auto g = canonicalize(1, 1, 2, 5);
    auto sysg = build_euler_system(g, expand(g));
    CHECK(rational_dimension_upper_bound(sysg) == 1);
}
