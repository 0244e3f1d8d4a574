#pragma once

#include <cmath>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "torusrank/quadratic_irrational.hpp"

namespace torusrank {

// Eventually periodic continued fraction of a quadratic irrational, together
// with the automaton trajectory that produced it.
//
// The expansion automaton works on states (P, Q) with Q | D - P^2 and emits
//   a_i = floor((P_i + sqrt(D)) / Q_i),
//   P_{i+1} = a_i Q_i - P_i,   Q_{i+1} = (D - P_{i+1}^2) / Q_i.
// The period is closed at the first repeated state; minimality of period and
// preperiod follows from determinism of the map.
struct cf_expansion {
    std::vector<mpz_class> preperiod;  // g_1 .. g_m (g_1 may be <= 0)
    std::vector<mpz_class> period;     // k_1 .. k_L, all positive
    std::vector<std::pair<mpz_class, mpz_class>> states;  // (P_i, Q_i), one per entry
    mpz_class state_d;                 // automaton radicand (b^2 d, rescaled if needed)

    size_t m() const { return preperiod.size(); }
    size_t period_length() const { return period.size(); }
    size_t n() const { return preperiod.size() + period.size(); }

    const mpz_class& entry(size_t i) const {
        return i < preperiod.size() ? preperiod[i]
                                    : period[(i - preperiod.size()) % period.size()];
    }

    friend bool operator==(const cf_expansion& x, const cf_expansion& y) {
        return x.preperiod == y.preperiod && x.period == y.period;
    }
};

namespace detail {

struct automaton_run {
    std::vector<mpz_class> preperiod, period;
    std::vector<std::pair<mpz_class, mpz_class>> states;
};

// Runs the (P, Q) automaton until the first repeated state. If max_entries is
// nonzero and the period has not closed within that many entries, returns
// nullopt (used by window scans that only need bounded shapes).
inline std::optional<automaton_run> run_automaton(mpz_class p, mpz_class q, const mpz_class& d,
                                                  size_t max_entries = 0) {
    const mpz_class s = isqrt(d);
    const bool bounded = max_entries != 0;
    std::map<std::pair<mpz_class, mpz_class>, size_t> seen;  // unbounded runs only
    automaton_run out;
    std::vector<mpz_class> entries;
    for (;;) {
        auto state = std::make_pair(p, q);
        size_t j = entries.size();
        if (bounded) {
            // bounded runs are short; a linear scan beats map upkeep
            for (size_t i = 0; i < out.states.size(); ++i)
                if (out.states[i] == state) {
                    j = i;
                    break;
                }
        } else {
            auto [it, fresh] = seen.emplace(state, entries.size());
            if (!fresh) j = it->second;
        }
        if (j != entries.size()) {
            out.preperiod.assign(entries.begin(), entries.begin() + j);
            out.period.assign(entries.begin() + j, entries.end());
            return out;
        }
        if (bounded && entries.size() >= max_entries) return std::nullopt;
        out.states.push_back(state);
        // floor((P + sqrt(D))/Q) without floating point: sqrt(D) is irrational,
        // so floor(P + sqrt(D)) = P + s, and for Q < 0 the strict irrational
        // inequality shifts the numerator by one.
        mpz_class a = q > 0 ? fdiv(p + s, q) : fdiv(p + s + 1, q);
        entries.push_back(a);
        mpz_class pn = a * q - p;
        mpz_class qn = (d - pn * pn) / q;
        p = pn;
        q = qn;
    }
}

// Initial automaton state for theta, rescaling numerator and denominator by c
// when c does not divide D - a^2.
inline void initial_state(const quadratic_irrational& t, mpz_class& p, mpz_class& q, mpz_class& d) {
    p = t.a;
    q = t.c;
    d = t.big_d();
    if ((d - p * p) % q != 0) {
        p *= t.c;
        d *= t.c * t.c;
        q *= t.c;
    }
}

inline long isqrt_long(long n) {
    long r = static_cast<long>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

inline long fdiv_long(long n, long q) {  // floor division, q != 0
    long quo = n / q, rem = n % q;
    if (rem != 0 && ((rem < 0) != (q < 0))) --quo;
    return quo;
}

// Bounded shape scan in machine words; valid while d stays below 2^60 so all
// intermediates fit. Returns false when the period does not close within
// max_entries.
inline bool run_automaton_small(long p, long q, long d, size_t max_entries,
                                std::vector<long>& entries, size_t& split) {
    const long s = isqrt_long(d);
    long sp[40], sq[40];
    size_t n = 0;
    entries.clear();
    for (;;) {
        for (size_t i = 0; i < n; ++i)
            if (sp[i] == p && sq[i] == q) {
                split = i;
                return true;
            }
        if (n >= max_entries || n >= 40) return false;
        sp[n] = p;
        sq[n] = q;
        ++n;
        long a = q > 0 ? fdiv_long(p + s, q) : fdiv_long(p + s + 1, q);
        entries.push_back(a);
        long pn = a * q - p;
        long qn = (d - pn * pn) / q;
        p = pn;
        q = qn;
    }
}

}  // namespace detail

inline cf_expansion expand(const quadratic_irrational& theta) {
    mpz_class p, q, d;
    detail::initial_state(theta, p, q, d);
    auto run = detail::run_automaton(p, q, d);
    cf_expansion exp;
    exp.preperiod = std::move(run->preperiod);
    exp.period = std::move(run->period);
    exp.states = std::move(run->states);
    exp.state_d = d;
    // states are trimmed to one per retained entry
    exp.states.resize(exp.n());
    return exp;
}

// Tail equivalence of eventually periodic sequences reduces to cyclic equality
// of the minimal periods.
inline bool cyclically_equal(const std::vector<mpz_class>& x, const std::vector<mpz_class>& y) {
    if (x.size() != y.size()) return false;
    const size_t n = x.size();
    for (size_t shift = 0; shift < n; ++shift) {
        bool ok = true;
        for (size_t i = 0; i < n && ok; ++i) ok = x[(shift + i) % n] == y[i];
        if (ok) return true;
    }
    return false;
}

inline bool morita_equivalent(const quadratic_irrational& t1, const quadratic_irrational& t2) {
    return cyclically_equal(expand(t1).period, expand(t2).period);
}

}  // namespace torusrank
