#include <catch2/catch_amalgamated.hpp>

#include "torusrank/polynomial.hpp"

using namespace torusrank;

TEST_CASE("polynomial arithmetic is exact") {
    const size_t nv = 2;
    auto x = integer_polynomial::variable(nv, 0);
    auto y = integer_polynomial::variable(nv, 1);
    auto one = integer_polynomial::constant(nv, 1);

    auto p = (x + y) * (x - y);
    auto q = x * x - y * y;
    CHECK(p == q);

    auto zero = p - q;
    CHECK(zero.is_zero());

    auto r = (x + one) * (x + one);
    CHECK(r.evaluate(std::vector<mpz_class>{4, 0}) == 25);
    CHECK(r.total_degree() == 2);

    auto dr = r.derivative(0);  // 2x + 2
    CHECK(dr.evaluate(std::vector<mpz_class>{4, 0}) == 10);
    CHECK(r.derivative(1).is_zero());
}

TEST_CASE("coefficients grow without loss") {
    const size_t nv = 1;
    auto x = integer_polynomial::variable(nv, 0);
    integer_polynomial p = integer_polynomial::constant(nv, 1);
    for (int i = 0; i < 40; ++i) p = p * (x + integer_polynomial::constant(nv, 1));
    // binomial(40, 20) appears exactly
    mpz_class expect;
    mpz_bin_uiui(expect.get_mpz_t(), 40, 20);
    bool found = false;
    for (const auto& [e, c] : p.terms())
        if (e[0] == 20) {
            CHECK(c == expect);
            found = true;
        }
    CHECK(found);
}

TEST_CASE("zero coefficients are never stored") {
    const size_t nv = 1;
    auto x = integer_polynomial::variable(nv, 0);
    auto p = x - x;
    CHECK(p.is_zero());
    CHECK(p.terms().empty());
    CHECK((mpz_class(0) * x).is_zero());
}
