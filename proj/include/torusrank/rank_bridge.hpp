#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

#include "torusrank/complexity.hpp"
#include "torusrank/convergents.hpp"

namespace torusrank {

// Curve selectors: a CM curve over Q(sqrt(-p)) with conductor 1 (p prime,
// p = 3 mod 4), the rational family indexed by an integer b >= 3, or an
// explicit torus modulus.
struct curve_descriptor {
    enum class kind_t { cm, rational_family, explicit_theta };
    kind_t kind = kind_t::explicit_theta;
    mpz_class cm_p;       // kind == cm
    int cm_f = 1;         // conductor; only 1 is supported
    mpz_class family_b;   // kind == rational_family
    quadratic_irrational theta;  // kind == explicit_theta

    static curve_descriptor cm(const mpz_class& p, int f = 1) {
        curve_descriptor d;
        d.kind = kind_t::cm;
        d.cm_p = p;
        d.cm_f = f;
        return d;
    }
    static curve_descriptor rational_family(const mpz_class& b) {
        curve_descriptor d;
        d.kind = kind_t::rational_family;
        d.family_b = b;
        return d;
    }
    static curve_descriptor explicit_theta_of(const quadratic_irrational& t) {
        curve_descriptor d;
        d.kind = kind_t::explicit_theta;
        d.theta = t;
        return d;
    }
};

inline void validate(const curve_descriptor& desc) {
    switch (desc.kind) {
        case curve_descriptor::kind_t::cm:
            if (desc.cm_f != 1) throw std::invalid_argument("only conductor 1 is supported");
            if (!is_prime(desc.cm_p) || desc.cm_p % 4 != 3)
                throw bad_discriminant(desc.cm_p.get_str() + " is not a prime = 3 mod 4");
            break;
        case curve_descriptor::kind_t::rational_family:
            if (desc.family_b < 3) throw std::invalid_argument("family parameter b must be >= 3");
            break;
        case curve_descriptor::kind_t::explicit_theta:
            break;
    }
}

// Modulus of the torus attached to the curve. CM(p, 1) maps to sqrt(p); the
// rational family member b maps to (b + sqrt(b^2 - 4))/2 with the square part
// of b^2 - 4 folded into the canonical form.
inline quadratic_irrational theta_of_curve(const curve_descriptor& desc) {
    validate(desc);
    switch (desc.kind) {
        case curve_descriptor::kind_t::cm:
            return canonicalize(0, 1, 1, desc.cm_p);
        case curve_descriptor::kind_t::rational_family: {
            mpz_class disc = desc.family_b * desc.family_b - 4;
            if (is_perfect_square(disc)) throw perfect_square_discriminant();
            mpz_class square_part = 1, rest = disc;
            for (mpz_class f = 2; f * f <= rest;) {
                if (rest % (f * f) == 0) {
                    square_part *= f;
                    rest /= f * f;
                } else {
                    ++f;
                }
            }
            return canonicalize(desc.family_b, square_part, 2, rest);
        }
        case curve_descriptor::kind_t::explicit_theta:
            return desc.theta;
    }
    throw std::logic_error("unreachable");
}

struct rank_report_t {
    curve_descriptor descriptor;
    quadratic_irrational theta;
    cf_expansion expansion;
    size_t n = 0;           // preperiod entries plus period entries
    int c = 1;
    int rank_estimate = 0;  // c - 1
    int rank_bound = 0;     // n - 1
    complexity_report provenance;
    // CM descriptors additionally report the class number of Q(sqrt(-p)) and
    // the full rank 2 h rank_estimate.
    mpz_class class_number = 0;
    mpz_class rank_full = 0;
};

// Number of reduced primitive binary quadratic forms (a, b, c) with
// b^2 - 4ac = -p, |b| <= a <= c, gcd(a, b, c) = 1 and b >= 0 whenever |b| = a
// or a = c. Exhaustive enumeration.
inline mpz_class class_number_imag_quadratic(const mpz_class& p) {
    if (p % 4 != 3 || !is_prime(p)) throw bad_discriminant(p.get_str() + " is not a prime = 3 mod 4");
    mpz_class count = 0;
    for (mpz_class a = 1; 3 * a * a <= p; ++a) {
        for (mpz_class b = -a; b <= a; ++b) {
            mpz_class num = b * b + p;
            if (num % (4 * a) != 0) continue;
            mpz_class c = num / (4 * a);
            if (c < a) continue;
            if ((abs(b) == a || a == c) && b < 0) continue;
            if (gcd(gcd(a, abs(b)), c) != 1) continue;
            ++count;
        }
    }
    return count;
}

inline rank_report_t rank_report(const curve_descriptor& desc, const search_config& cfg,
                                 expansion_store* store = nullptr) {
    rank_report_t rep;
    rep.descriptor = desc;
    rep.theta = theta_of_curve(desc);
    rep.expansion = expand(rep.theta);
    rep.n = rep.expansion.n();
    rep.provenance = arithmetic_complexity(rep.theta, cfg, store);
    rep.c = rep.provenance.c;
    rep.rank_estimate = rep.c - 1;
    rep.rank_bound = static_cast<int>(rep.n) - 1;
    if (desc.kind == curve_descriptor::kind_t::cm) {
        rep.class_number = class_number_imag_quadratic(desc.cm_p);
        rep.rank_full = 2 * rep.class_number * rep.rank_estimate;
    }
    return rep;
}

// True iff (b + sqrt(b^2 - 4))/2 expands to [b-1; 1, b-2] after reducing the
// right side to its minimal period (at b = 3 the minimal form is [2; 1]).
inline bool eb_expansion_check(const mpz_class& b) {
    if (b < 3) throw std::invalid_argument("family parameter b must be >= 3");
    auto exp = expand(theta_of_curve(curve_descriptor::rational_family(b)));
    if (b == 3)
        return exp.preperiod == std::vector<mpz_class>{2} && exp.period == std::vector<mpz_class>{1};
    return exp.preperiod == std::vector<mpz_class>{b - 1} &&
           exp.period == std::vector<mpz_class>{1, b - 2};
}

// Dimension group generators: roots of unity carry a reduced rational angle in
// (0, 1); other generators carry a quadratic irrational angle. The rank of the
// associated ordered group is s - t + 1 where t counts the roots of unity.
// Irrational angles are not checked for mutual linear independence.
struct generator {
    bool root_of_unity = false;
    mpz_class num, den;            // root_of_unity: angle num/den in lowest terms
    quadratic_irrational angle;    // otherwise
};

struct generator_set {
    std::vector<generator> generators;

    size_t s() const { return generators.size(); }
    size_t t() const {
        size_t n = 0;
        for (const auto& g : generators) n += g.root_of_unity ? 1 : 0;
        return n;
    }
};

inline generator root_of_unity_generator(const mpz_class& num, const mpz_class& den) {
    if (den <= 0 || num <= 0 || num >= den) throw std::invalid_argument("angle must lie in (0, 1)");
    if (gcd(num, den) != 1) throw std::invalid_argument("angle must be in lowest terms");
    generator g;
    g.root_of_unity = true;
    g.num = num;
    g.den = den;
    return g;
}

inline generator irrational_generator(const quadratic_irrational& omega) {
    generator g;
    g.root_of_unity = false;
    g.angle = omega;
    return g;
}

inline mpz_class dimension_group_rank(const generator_set& gens) {
    if (gens.s() < 1) throw std::invalid_argument("generator set must be nonempty");
    return mpz_class(gens.s()) - mpz_class(gens.t()) + 1;
}

// Reference rows for the thirteen CM curves with 1 < p < 100: expected Q-rank,
// expansion of sqrt(p) and expected complexity.
struct table1_row {
    unsigned p;
    int rk_q;
    std::vector<mpz_class> preperiod, period;
    int c;
};

inline const std::vector<table1_row>& table1_rows() {
    static const std::vector<table1_row> rows = {
        {3, 1, {1}, {1, 2}, 2},
        {7, 0, {2}, {1, 1, 1, 4}, 1},
        {11, 1, {3}, {3, 6}, 2},
        {19, 1, {4}, {2, 1, 3, 1, 2, 8}, 2},
        {23, 0, {4}, {1, 3, 1, 8}, 1},
        {31, 0, {5}, {1, 1, 3, 5, 3, 1, 1, 10}, 1},
        {43, 1, {6}, {1, 1, 3, 1, 5, 1, 3, 1, 1, 12}, 2},
        {47, 0, {6}, {1, 5, 1, 12}, 1},
        {59, 1, {7}, {1, 2, 7, 2, 1, 14}, 2},
        {67, 1, {8}, {5, 2, 1, 1, 7, 1, 1, 2, 5, 16}, 2},
        {71, 0, {8}, {2, 2, 1, 7, 1, 2, 2, 16}, 1},
        {79, 0, {8}, {1, 7, 1, 16}, 1},
        {83, 1, {9}, {9, 18}, 2},
    };
    return rows;
}

struct table1_result_row {
    unsigned p = 0;
    int expected_rk_q = 0, expected_c = 0;
    std::vector<mpz_class> expected_preperiod, expected_period;
    std::vector<mpz_class> preperiod, period;
    int c = 0;
    int rank_estimate = 0;
    bool expansion_match = false, c_match = false, rank_match = false;
    bool complexity_computed = false;
    mpz_class window_used;
};

struct table1_report {
    std::vector<table1_result_row> rows;
    bool all_match = true;
};

// Reproduces the reference table. When with_complexity is false only the
// expansions are computed and compared; otherwise the complexity estimator
// runs per prime with window_overrides[p] (falling back to cfg.window_max).
inline table1_report table1_reproduce(const search_config& cfg, bool with_complexity = true,
                                      const std::map<unsigned, mpz_class>& window_overrides = {},
                                      expansion_store* store = nullptr) {
    table1_report report;
    for (const auto& row : table1_rows()) {
        table1_result_row out;
        out.p = row.p;
        out.expected_rk_q = row.rk_q;
        out.expected_c = row.c;
        out.expected_preperiod = row.preperiod;
        out.expected_period = row.period;

        auto theta = canonicalize(0, 1, 1, row.p);
        auto exp = expand(theta);
        out.preperiod = exp.preperiod;
        out.period = exp.period;
        out.expansion_match = exp.preperiod == row.preperiod && exp.period == row.period;

        if (with_complexity) {
            search_config local = cfg;
            if (auto it = window_overrides.find(row.p); it != window_overrides.end())
                local.window_max = it->second;
            out.window_used = local.window_max;
            auto crep = arithmetic_complexity(theta, local, store);
            out.complexity_computed = true;
            out.c = crep.c;
            out.rank_estimate = crep.c - 1;
            out.c_match = out.c == row.c;
            out.rank_match = out.rank_estimate == row.rk_q;
        }
        bool row_ok = out.expansion_match && (!with_complexity || (out.c_match && out.rank_match));
        report.all_match = report.all_match && row_ok;
        report.rows.push_back(std::move(out));
    }
    return report;
}

}  // namespace torusrank
