#pragma once

#include <array>
#include <vector>

#include "torusrank/cf_expansion.hpp"

namespace torusrank {

// Eventually periodic sequence of 2x2 partial multiplicity matrices, one per
// continued-fraction entry: entry a maps to rows (a, 1) / (1, 0). The list
// repeats with the (preperiod, period) split of the source expansion.
struct bratteli_schedule {
    using step = std::array<mpz_class, 4>;  // row-major 2x2
    std::vector<step> preperiod_steps;
    std::vector<step> period_steps;
};

inline bratteli_schedule make_bratteli_schedule(const cf_expansion& exp) {
    auto to_step = [](const mpz_class& a) { return bratteli_schedule::step{a, 1, 1, 0}; };
    bratteli_schedule s;
    s.preperiod_steps.reserve(exp.preperiod.size());
    s.period_steps.reserve(exp.period.size());
    for (const auto& g : exp.preperiod) s.preperiod_steps.push_back(to_step(g));
    for (const auto& k : exp.period) s.period_steps.push_back(to_step(k));
    return s;
}

}  // namespace torusrank
