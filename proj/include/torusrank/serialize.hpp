#pragma once

#include <json.hpp>

#include "torusrank/bratteli.hpp"
#include "torusrank/complexity.hpp"
#include "torusrank/euler_system.hpp"
#include "torusrank/rank_bridge.hpp"

namespace torusrank {

using json = nlohmann::ordered_json;

// Integers that fit in 64 bits serialize as JSON numbers, larger ones as
// decimal strings (convergents and polynomial coefficients outgrow doubles).
inline json json_int(const mpz_class& v) {
    if (v.fits_slong_p()) return json(v.get_si());
    return json(v.get_str());
}

inline mpz_class int_from_json(const json& j) {
    if (j.is_string()) return mpz_class(j.get<std::string>());
    if (j.is_number_integer()) return mpz_class(static_cast<long>(j.get<long long>()));
    if (j.is_number_unsigned()) return mpz_class(static_cast<unsigned long>(j.get<unsigned long long>()));
    throw std::invalid_argument("expected an integer");
}

inline json json_int_list(const std::vector<mpz_class>& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(json_int(x));
    return a;
}

inline json to_json(const quadratic_irrational& t) {
    json j;
    j["a"] = json_int(t.a);
    j["b"] = json_int(t.b);
    j["c"] = json_int(t.c);
    j["d"] = json_int(t.d);
    return j;
}

inline json expansion_json(const cf_expansion& exp) {
    json j;
    j["preperiod"] = json_int_list(exp.preperiod);
    j["period"] = json_int_list(exp.period);
    return j;
}

inline std::string bracket_form(const std::vector<mpz_class>& pre, const std::vector<mpz_class>& per) {
    std::string s = "[";
    for (size_t i = 0; i < pre.size(); ++i) s += (i ? "," : "") + pre[i].get_str();
    s += ";";
    for (size_t i = 0; i < per.size(); ++i) s += (i ? "," : "") + per[i].get_str();
    s += "]";
    return s;
}

inline json to_json(const convergent_table& t) {
    json j;
    j["A"] = json_int_list(t.A);
    j["B"] = json_int_list(t.B);
    return j;
}

inline json to_json(const integer_polynomial& p, const std::vector<std::string>& names) {
    json terms = json::array();
    for (const auto& [e, c] : p.terms()) {
        json term;
        term["coeff"] = json_int(c);
        json mono = json::object();
        for (size_t i = 0; i < e.size(); ++i)
            if (e[i] != 0) mono[names[i]] = e[i];
        term["monomial"] = mono;
        terms.push_back(term);
    }
    return terms;
}

inline json to_json(const euler_system& sys) {
    json j;
    j["theta"] = to_json(sys.theta);
    j["m"] = sys.m;
    j["n"] = sys.m + sys.period_len;
    j["variables"] = sys.variables;
    j["c1"] = json_int(sys.c1);
    j["c2"] = json_int(sys.c2);
    j["scale_num"] = json_int(sys.scale_num);
    j["scale_den"] = json_int(sys.scale_den);
    json eqs = json::array();
    for (const auto& eq : sys.equations) eqs.push_back(to_json(eq, sys.variables));
    j["equations"] = eqs;
    auto dio = linear_diophantine_form(sys);
    mpz_class plus_branch_at_base = dio.evaluate(sys.base_point) - 0;  // dio already the vanishing branch
    (void)plus_branch_at_base;
    j["diophantine"] = to_json(dio, sys.variables);
    j["base_point"] = json_int_list(sys.base_point);
    j["dimension_upper_bound"] = rational_dimension_upper_bound(sys);
    return j;
}

inline json to_json(const family_line& l) {
    json j;
    j["direction"] = json_int_list(l.direction);
    j["x_poly"] = json::array({json_int(l.x_poly[0]), json_int(l.x_poly[1]), json_int(l.x_poly[2])});
    json members = json::array();
    for (const auto& m : l.members) {
        json mj;
        mj["t"] = m.t;
        mj["x"] = json_int(m.x);
        mj["entries"] = json_int_list(m.entries);
        members.push_back(mj);
    }
    j["members"] = members;
    j["skipped_non_square_free"] = l.skipped_non_square_free;
    j["skipped_values"] = json_int_list(l.skipped_values);
    return j;
}

inline json to_json(const complexity_report& r) {
    json j;
    j["theta"] = to_json(r.theta);
    j["m"] = r.m;
    j["period_length"] = r.period_len;
    j["c"] = r.c;
    json lines = json::array();
    for (const auto& l : r.witness_lines) lines.push_back(to_json(l));
    j["lines"] = lines;
    json members = json::array();
    for (const auto& v : r.members_used) members.push_back(json_int_list(v));
    j["members_used"] = members;
    json diag;
    diag["window_max"] = json_int(r.diagnostics.window_max);
    diag["pool_size"] = r.diagnostics.pool_size;
    diag["line_count"] = r.diagnostics.line_count;
    diag["skipped_non_square_free"] = r.diagnostics.skipped_non_square_free;
    diag["window_below_base"] = r.diagnostics.window_below_base;
    j["diagnostics"] = diag;
    return j;
}

inline json to_json(const rank_report_t& r) {
    json j;
    switch (r.descriptor.kind) {
        case curve_descriptor::kind_t::cm:
            j["curve"] = "cm";
            j["p"] = json_int(r.descriptor.cm_p);
            break;
        case curve_descriptor::kind_t::rational_family:
            j["curve"] = "rational-family";
            j["b"] = json_int(r.descriptor.family_b);
            break;
        case curve_descriptor::kind_t::explicit_theta:
            j["curve"] = "explicit";
            break;
    }
    j["theta"] = to_json(r.theta);
    j["preperiod"] = json_int_list(r.expansion.preperiod);
    j["period"] = json_int_list(r.expansion.period);
    j["n"] = r.n;
    j["c"] = r.c;
    j["rank_estimate"] = r.rank_estimate;
    j["rank_bound"] = r.rank_bound;
    if (r.descriptor.kind == curve_descriptor::kind_t::cm) {
        j["class_number"] = json_int(r.class_number);
        j["rank_full"] = json_int(r.rank_full);
    }
    return j;
}

inline json to_json(const table1_result_row& r, bool with_complexity) {
    json j;
    j["p"] = r.p;
    j["expected_rk_q"] = r.expected_rk_q;
    j["expected_cf"] = bracket_form(r.expected_preperiod, r.expected_period);
    j["expected_c"] = r.expected_c;
    j["cf"] = bracket_form(r.preperiod, r.period);
    j["expansion_match"] = r.expansion_match;
    if (with_complexity) {
        j["c"] = r.c;
        j["rank_estimate"] = r.rank_estimate;
        j["c_match"] = r.c_match;
        j["rank_match"] = r.rank_match;
        j["window"] = json_int(r.window_used);
    }
    return j;
}

inline json to_json(const bratteli_schedule& s) {
    auto steps = [](const std::vector<bratteli_schedule::step>& v) {
        json a = json::array();
        for (const auto& m : v)
            a.push_back(json::array({json_int(m[0]), json_int(m[1]), json_int(m[2]), json_int(m[3])}));
        return a;
    };
    json j;
    j["preperiod_steps"] = steps(s.preperiod_steps);
    j["period_steps"] = steps(s.period_steps);
    return j;
}

}  // namespace torusrank
