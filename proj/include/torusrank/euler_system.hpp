#pragma once

#include <array>
#include <string>
#include <vector>

#include "torusrank/convergents.hpp"
#include "torusrank/polynomial.hpp"

namespace torusrank {

// Polynomial relations satisfied by the continued-fraction entries of a
// quadratic irrational at its base expansion. Variables are ordered
// (g_1..g_m, k_1..k_L, D); the continuants are polynomials in the period
// symbols only, under the same convergent alignment that reconstruct_verify
// anchors (one full period with seed rows (1,0)/(0,1)).
//
// The three stored relations are
//   A_n - B_{n-1} = c1
//   2 B_n         = c2
//   p*D           = q*(c1^2 + 2 c2 A_{n-1})
// with c1, c2 integers evaluated at the base point. The third relation carries
// the reduced scale p/q = (c1^2 + 4 A_{n-1} B_n) / (b^2 d): the root formula
// for the complete quotient reproduces the radicand only up to the square of
// 2 B_n over the quotient's denominator, so the scale is what makes the
// relation vanish at D = b^2 d. It is 1 exactly when those two denominators
// agree (the golden mean case).
struct euler_system {
    size_t m = 0;
    size_t period_len = 0;
    std::vector<std::string> variables;  // g1..gm, k1..kL, D
    integer_polynomial A_n, A_n1, A_n2, B_n, B_n1, B_n2;
    mpz_class c1, c2;
    mpz_class scale_num = 1, scale_den = 1;
    std::array<integer_polynomial, 3> equations;
    std::vector<mpz_class> base_point;
    quadratic_irrational theta;
    bool pure_surd = false;

    size_t nvars() const { return variables.size(); }
    size_t var_g(size_t i) const { return i; }              // g_{i+1}
    size_t var_k(size_t i) const { return m + i; }          // k_{i+1}
    size_t var_d() const { return m + period_len; }
};

// Continuants of one full period run symbolically: returns
// (A_n, A_{n-1}, A_{n-2}, B_n, B_{n-1}, B_{n-2}) as polynomials in the period
// symbols k_1..k_L of the variable list (g_1..g_m, k_1..k_L, D).
inline std::array<integer_polynomial, 6> symbolic_continuants(size_t m, size_t period_len) {
    const size_t nv = m + period_len + 1;
    auto one = integer_polynomial::constant(nv, 1);
    auto zero = integer_polynomial(nv);
    integer_polynomial ap = one, app = zero, bp = zero, bpp = one;
    integer_polynomial an = ap, an1 = app, an2 = zero, bn = bp, bn1 = bpp, bn2 = one;
    for (size_t i = 0; i < period_len; ++i) {
        auto k = integer_polynomial::variable(nv, m + i);
        an2 = app;
        bn2 = bpp;
        an1 = ap;
        bn1 = bp;
        an = k * ap + app;
        bn = k * bp + bpp;
        app = ap;
        ap = an;
        bpp = bp;
        bp = bn;
    }
    return {an, an1, an2, bn, bn1, bn2};
}

inline std::vector<std::string> euler_variable_names(size_t m, size_t period_len) {
    std::vector<std::string> names;
    for (size_t i = 0; i < m; ++i) names.push_back("g" + std::to_string(i + 1));
    for (size_t i = 0; i < period_len; ++i) names.push_back("k" + std::to_string(i + 1));
    names.push_back("D");
    return names;
}

inline euler_system build_euler_system(const quadratic_irrational& theta, const cf_expansion& exp) {
    euler_system sys;
    sys.m = exp.m();
    sys.period_len = exp.period_length();
    sys.variables = euler_variable_names(sys.m, sys.period_len);
    sys.theta = theta;
    sys.pure_surd = theta.is_pure_surd();

    auto [an, an1, an2, bn, bn1, bn2] = symbolic_continuants(sys.m, sys.period_len);
    sys.A_n = an;
    sys.A_n1 = an1;
    sys.A_n2 = an2;
    sys.B_n = bn;
    sys.B_n1 = bn1;
    sys.B_n2 = bn2;

    auto [van, van1, van2, vbn, vbn1, vbn2] = period_continuants(exp.period);
    (void)van2;
    (void)vbn2;
    sys.c1 = van - vbn1;
    sys.c2 = 2 * vbn;

    mpz_class disc = sys.c1 * sys.c1 + 4 * van1 * vbn;
    mpq_class scale(disc, theta.big_d());
    scale.canonicalize();
    sys.scale_num = scale.get_num();
    sys.scale_den = scale.get_den();

    const size_t nv = sys.nvars();
    sys.equations[0] = sys.A_n - sys.B_n1 - integer_polynomial::constant(nv, sys.c1);
    sys.equations[1] = mpz_class(2) * sys.B_n - integer_polynomial::constant(nv, sys.c2);
    sys.equations[2] = sys.scale_num * integer_polynomial::variable(nv, sys.var_d()) -
                       integer_polynomial::constant(nv, sys.scale_den * sys.c1 * sys.c1) -
                       (2 * sys.scale_den * sys.c2) * sys.A_n1;

    sys.base_point.assign(exp.preperiod.begin(), exp.preperiod.end());
    sys.base_point.insert(sys.base_point.end(), exp.period.begin(), exp.period.end());
    sys.base_point.push_back(theta.big_d());

    for (const auto& eq : sys.equations)
        if (eq.evaluate(sys.base_point) != 0) throw std::logic_error("euler system does not vanish at base point");
    return sys;
}

// Substitutes the c1, c2 rewrites
//   c1 = k_n A_{n-1} + A_{n-2} - B_{n-1},   c2 = 2 k_n B_{n-1} + 2 B_{n-2}
// into the third relation and returns the expanded difference LHS - RHS of the
// resulting linear diophantine identity
//   p*D - q*k_n^2 A_{n-1}^2 - 2q*(A_{n-1}A_{n-2} + A_{n-1}B_{n-1}) k_n
//     = q*(A_{n-2} + B_{n-1})^2 +- 4q,
// with the sign branch fixed by exact evaluation at the base point. The result
// is identically equal, as a polynomial in the period symbols and D, to the
// third relation with the rewrites substituted.
inline integer_polynomial linear_diophantine_form(const euler_system& sys) {
    const size_t nv = sys.nvars();
    auto kn = integer_polynomial::variable(nv, sys.var_k(sys.period_len - 1));
    const auto& A = sys.A_n1;
    const auto& A2 = sys.A_n2;
    const auto& B = sys.B_n1;

    integer_polynomial lhs = sys.scale_num * integer_polynomial::variable(nv, sys.var_d()) -
                             sys.scale_den * (kn * kn * A * A) -
                             (2 * sys.scale_den) * (kn * (A * A2 + A * B));
    integer_polynomial rhs_core = sys.scale_den * ((A2 + B) * (A2 + B));
    for (int sign : {+1, -1}) {
        integer_polynomial f =
            lhs - rhs_core - integer_polynomial::constant(nv, mpz_class(4 * sign) * sys.scale_den);
        if (f.evaluate(sys.base_point) == 0) return f;
    }
    throw sign_unresolvable();
}

namespace detail {

// Rank of an integer matrix by fraction-free (Bareiss) elimination.
inline size_t integer_matrix_rank(std::vector<std::vector<mpz_class>> m) {
    if (m.empty()) return 0;
    const size_t rows = m.size(), cols = m[0].size();
    size_t rank = 0;
    mpz_class prev = 1;
    for (size_t col = 0; col < cols && rank < rows; ++col) {
        size_t pivot = rank;
        while (pivot < rows && m[pivot][col] == 0) ++pivot;
        if (pivot == rows) continue;
        std::swap(m[rank], m[pivot]);
        for (size_t i = rank + 1; i < rows; ++i) {
            for (size_t j = col + 1; j < cols; ++j)
                m[i][j] = (m[i][j] * m[rank][col] - m[rank][j] * m[i][col]) / prev;
            m[i][col] = 0;
        }
        prev = m[rank][col];
        ++rank;
    }
    return rank;
}

}  // namespace detail

// Upper bound on the dimension of the integer family through the base point:
// number of variables minus the exact Jacobian rank, at the base point, of the
// reduced variety equations (the substituted diophantine identity, plus the
// pure-surd tie k_n = 2 g_1 when theta is a pure surd). The first two stored
// relations only pin the constants c1, c2 and are not part of the variety cut.
inline size_t rational_dimension_upper_bound(const euler_system& sys) {
    const size_t nv = sys.nvars();
    if (nv == 0) return 0;
    std::vector<integer_polynomial> eqs;
    eqs.push_back(linear_diophantine_form(sys));
    if (sys.pure_surd && sys.m >= 1) {
        eqs.push_back(integer_polynomial::variable(nv, sys.var_k(sys.period_len - 1)) -
                      mpz_class(2) * integer_polynomial::variable(nv, sys.var_g(0)));
    }
    std::vector<std::vector<mpz_class>> jac;
    for (const auto& eq : eqs) {
        std::vector<mpz_class> row;
        row.reserve(nv);
        for (size_t v = 0; v < nv; ++v) row.push_back(eq.derivative(v).evaluate(sys.base_point));
        jac.push_back(std::move(row));
    }
    return nv - detail::integer_matrix_rank(std::move(jac));
}

}  // namespace torusrank
