#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <map>
#include <optional>
#include <thread>
#include <vector>

#include "torusrank/cf_expansion.hpp"

namespace torusrank {

// Family scan configuration. The family is theta_x = (a + b*sqrt(x))/c with
// the constants fixed and x running over square-free integers with
// b^2 x <= window_max. Entry deformations are affine in the line parameter and
// the radicand is at most quadratic in it; a line needs min_line_members
// members (including the base) to be accepted.
struct search_config {
    mpz_class window_max = 1000000;
    int entry_degree_max = 1;
    int radicand_degree_max = 2;
    int min_line_members = 3;
    mpz_class fam_a = 0, fam_b = 1, fam_c = 1;
    bool single_thread = false;
};

// Read-through store for computed expansions, keyed by the canonical
// (a, b, c, d) tuple. Lookups must be safe for concurrent readers; stores are
// invoked from a single thread after each scan.
class expansion_store {
public:
    virtual ~expansion_store() = default;
    virtual std::optional<std::pair<std::vector<mpz_class>, std::vector<mpz_class>>> lookup(
        const quadratic_irrational& key) const = 0;
    virtual void store(const quadratic_irrational& key, const std::vector<mpz_class>& preperiod,
                       const std::vector<mpz_class>& period) = 0;
};

struct pool_entry {
    mpz_class x;
    quadratic_irrational theta;
    std::vector<mpz_class> preperiod, period;

    std::vector<mpz_class> entry_vector() const {
        std::vector<mpz_class> v(preperiod);
        v.insert(v.end(), period.begin(), period.end());
        return v;
    }
};

struct line_member {
    long t = 0;
    mpz_class x;
    quadratic_irrational theta;
    std::vector<mpz_class> entries;
};

// One-parameter integer deformation through the base expansion: entries move
// affinely along `direction` per unit t, the radicand follows
// x(t) = x_poly[2] t^2 + x_poly[1] t + x_poly[0], and every member has been
// confirmed by the expansion automaton.
struct family_line {
    std::vector<mpz_class> direction;
    std::array<mpz_class, 3> x_poly;  // constant, linear, quadratic
    std::vector<line_member> members;
    long skipped_non_square_free = 0;
    std::vector<mpz_class> skipped_values;
    int confirmed_predictions = 0;  // oracle-verified members beyond the window hull
};

struct complexity_diagnostics {
    mpz_class window_max;
    size_t pool_size = 0;
    size_t line_count = 0;
    long skipped_non_square_free = 0;
    bool window_below_base = false;
};

struct complexity_report {
    quadratic_irrational theta;
    size_t m = 0, period_len = 0;
    int c = 1;
    std::vector<family_line> witness_lines;
    std::vector<std::vector<mpz_class>> members_used;  // entries + x
    complexity_diagnostics diagnostics;
};

namespace detail {

// The family constants come from a canonical modulus and x arrives sieved
// square-free, so members are canonical by construction; no re-validation.
inline quadratic_irrational family_member(const search_config& cfg, const mpz_class& x) {
    return quadratic_irrational{cfg.fam_a, cfg.fam_b, cfg.fam_c, x};
}

// Largest radicand for which the machine-word scan stays exact.
inline bool small_scan_applicable(const search_config& cfg, const mpz_class& xmax) {
    mpz_class c2 = cfg.fam_c * cfg.fam_c;
    mpz_class dmax = cfg.fam_b * cfg.fam_b * xmax * c2 * c2;  // worst case after rescale
    return abs(cfg.fam_a) < 1000000 && dmax < mpz_class("1152921504606846976");  // 2^60
}

inline std::optional<pool_entry> scan_candidate(const search_config& cfg, const mpz_class& x,
                                                size_t m_base, size_t len_base,
                                                const expansion_store* store, bool& from_store,
                                                bool use_small, std::vector<long>& scratch) {
    from_store = false;
    quadratic_irrational theta = family_member(cfg, x);
    if (store) {
        if (auto hit = store->lookup(theta)) {
            from_store = true;
            if (hit->first.size() != m_base || hit->second.size() != len_base) return std::nullopt;
            return pool_entry{x, theta, hit->first, hit->second};
        }
    }
    if (use_small && m_base + len_base < 40) {
        long a = cfg.fam_a.get_si(), c = cfg.fam_c.get_si();
        long d = mpz_class(cfg.fam_b * cfg.fam_b * x).get_si();
        long p = a, q = c;
        if ((d - p * p) % q != 0) {
            p *= c;
            d *= c * c;
            q *= c;
        }
        size_t split = 0;
        if (!run_automaton_small(p, q, d, m_base + len_base, scratch, split)) return std::nullopt;
        if (split != m_base || scratch.size() - split != len_base) return std::nullopt;
        pool_entry entry;
        entry.x = x;
        entry.theta = theta;
        entry.preperiod.assign(scratch.begin(), scratch.begin() + split);
        entry.period.assign(scratch.begin() + split, scratch.end());
        return entry;
    }
    mpz_class p, q, d;
    initial_state(theta, p, q, d);
    auto run = run_automaton(p, q, d, m_base + len_base);
    if (!run) return std::nullopt;
    if (run->preperiod.size() != m_base || run->period.size() != len_base) return std::nullopt;
    return pool_entry{x, theta, run->preperiod, run->period};
}

}  // namespace detail

// All family members theta_x with square-free x, b^2 x <= window_max, whose
// expansion has the same preperiod and period lengths as the base. Ascending
// in x; deterministic regardless of thread count.
inline std::vector<pool_entry> enumerate_window(const search_config& cfg,
                                                const quadratic_irrational& base_theta,
                                                const cf_expansion& base_exp,
                                                expansion_store* store = nullptr) {
    const size_t m_base = base_exp.m(), len_base = base_exp.period_length();
    mpz_class bb = cfg.fam_b * cfg.fam_b;
    mpz_class xmax_z = cfg.window_max / bb;
    if (xmax_z > mpz_class("1000000000000"))
        throw std::invalid_argument("window too large; scans beyond 10^12 are not supported");
    if (xmax_z < 2) return {};
    const unsigned long xmax = xmax_z.get_ui();

    struct chunk_result {
        std::vector<pool_entry> pool;
        std::vector<pool_entry> computed;  // freshly expanded (shape-matching), for the store
    };
    const unsigned long chunk = 1 << 16;
    const unsigned long nchunks = (xmax - 1) / chunk + 1;
    std::vector<chunk_result> results(nchunks);

    const bool use_small = detail::small_scan_applicable(cfg, xmax_z);
    auto work = [&](unsigned long ci) {
        unsigned long lo = std::max<unsigned long>(2, ci * chunk);
        unsigned long hi = std::min<unsigned long>(xmax + 1, (ci + 1) * chunk);
        if (lo >= hi) return;
        auto flags = square_free_flags(lo, hi);
        std::vector<long> scratch;
        for (unsigned long x = lo; x < hi; ++x) {
            if (!flags[x - lo]) continue;
            bool from_store = false;
            auto entry = detail::scan_candidate(cfg, mpz_class(x), m_base, len_base, store, from_store,
                                                use_small, scratch);
            if (!entry) continue;
            if (!from_store) results[ci].computed.push_back(*entry);
            results[ci].pool.push_back(std::move(*entry));
        }
    };

    unsigned hw = cfg.single_thread ? 1 : std::max(1u, std::thread::hardware_concurrency());
    if (hw <= 1 || nchunks <= 1) {
        for (unsigned long ci = 0; ci < nchunks; ++ci) work(ci);
    } else {
        std::atomic<unsigned long> next{0};
        std::vector<std::thread> threads;
        for (unsigned i = 0; i < hw; ++i)
            threads.emplace_back([&] {
                for (unsigned long ci = next.fetch_add(1); ci < nchunks; ci = next.fetch_add(1)) work(ci);
            });
        for (auto& t : threads) t.join();
    }

    std::vector<pool_entry> pool;
    for (auto& r : results) {
        for (auto& e : r.computed)
            if (store) store->store(e.theta, e.preperiod, e.period);
        pool.insert(pool.end(), std::make_move_iterator(r.pool.begin()),
                    std::make_move_iterator(r.pool.end()));
    }
    (void)base_theta;
    return pool;
}

namespace detail {

inline mpz_class vec_gcd(const std::vector<mpz_class>& v) {
    mpz_class g = 0;
    for (const auto& x : v) g = torusrank::gcd(g, abs(x));
    return g;
}

// Integer quadratic through (0, x0), (t1, x1), (t2, x2); nullopt when the
// interpolant has a non-integer coefficient.
inline std::optional<std::array<mpz_class, 3>> integer_quadratic(const mpz_class& x0, long t1,
                                                                 const mpz_class& x1, long t2,
                                                                 const mpz_class& x2) {
    mpq_class tt1(t1), tt2(t2);
    mpq_class y1(x1 - x0), y2(x2 - x0);
    mpq_class det = tt1 * tt2 * (tt1 - tt2);
    if (det == 0) return std::nullopt;
    mpq_class a = (y1 * tt2 - y2 * tt1) / det;
    mpq_class b = (y1 - a * tt1 * tt1) / tt1;
    a.canonicalize();
    b.canonicalize();
    if (a.get_den() != 1 || b.get_den() != 1) return std::nullopt;
    return std::array<mpz_class, 3>{x0, b.get_num(), a.get_num()};
}

inline mpz_class eval_quadratic(const std::array<mpz_class, 3>& p, long t) {
    mpz_class tz(t);
    return p[2] * tz * tz + p[1] * tz + p[0];
}

// Entry vector of the family member at radicand x, or nullopt when the
// expansion does not have the prescribed shape.
inline std::optional<std::vector<mpz_class>> family_entries_oracle(const search_config& cfg,
                                                                   const mpz_class& x, size_t m_base,
                                                                   size_t len_base) {
    quadratic_irrational theta = family_member(cfg, x);
    mpz_class p, q, d;
    initial_state(theta, p, q, d);
    auto run = run_automaton(p, q, d, m_base + len_base);
    if (!run || run->preperiod.size() != m_base || run->period.size() != len_base) return std::nullopt;
    std::vector<mpz_class> entries = run->preperiod;
    entries.insert(entries.end(), run->period.begin(), run->period.end());
    return entries;
}

}  // namespace detail

// Affine entry lines through the base point. Pool members are grouped by
// their primitive entry direction from the base; each group is one candidate
// ray. The parameter lattice is rescaled by the gcd of the observed member
// positions so the radicand interpolant can have integer coefficients, and
// x(t) is fitted through the base, the nearest member, and one more ray
// member. A candidate is accepted when
//   - at least min_line_members pool members sit exactly on both the entry
//     polynomials and x(t) (non-square-free parameter values are recorded as
//     skips, not counted against membership),
//   - no square-free x(t) inside the member hull contradicts the claimed
//     entries (the window scan is exhaustive, so an in-window square-free gap
//     is a contradiction outright; square-free testing is budgeted),
//   - the first square-free prediction beyond each end of the hull re-expands
//     to the claimed entries, and
//   - members plus verified predictions exceed min_line_members: a quadratic
//     through exactly three points has predicted nothing.
// Lines are deduplicated by entry direction.
inline std::vector<family_line> fit_lines_through_base(const search_config& cfg,
                                                       const pool_entry& base,
                                                       const std::vector<pool_entry>& pool) {
    std::vector<family_line> lines;
    const std::vector<mpz_class> base_entries = base.entry_vector();
    const size_t ncoord = base_entries.size();
    const size_t m_base = base.preperiod.size(), len_base = base.period.size();

    std::map<std::vector<mpz_class>, std::vector<std::pair<long, const pool_entry*>>> rays;
    for (const auto& w : pool) {
        if (w.theta == base.theta) continue;
        auto we = w.entry_vector();
        std::vector<mpz_class> delta(ncoord);
        for (size_t i = 0; i < ncoord; ++i) delta[i] = we[i] - base_entries[i];
        mpz_class s = detail::vec_gcd(delta);
        if (s == 0) continue;
        bool flip = false;
        for (const auto& dc : delta) {
            if (dc == 0) continue;
            flip = dc < 0;
            break;
        }
        for (auto& dc : delta) {
            dc /= s;
            if (flip) dc = -dc;
        }
        rays[std::move(delta)].emplace_back(flip ? -s.get_si() : s.get_si(), &w);
    }

    for (auto& [delta, ray] : rays) {
        if (ray.size() + 1 < static_cast<size_t>(cfg.min_line_members)) continue;

        // rescale the lattice so members sit at integer parameters with an
        // integer-coefficient radicand
        mpz_class lambda = 0;
        for (auto& [t, e] : ray) lambda = torusrank::gcd(lambda, mpz_class(t < 0 ? -t : t));
        long lam = lambda == 0 ? 1 : lambda.get_si();
        std::vector<std::pair<long, const pool_entry*>> members;
        members.emplace_back(0, &base);
        for (auto& [t, e] : ray) members.emplace_back(t / lam, e);
        std::sort(members.begin(), members.end());
        std::vector<mpz_class> scaled_delta(ncoord);
        for (size_t i = 0; i < ncoord; ++i) scaled_delta[i] = delta[i] * lam;

        std::vector<std::pair<long, const pool_entry*>> by_distance(members.begin(), members.end());
        std::sort(by_distance.begin(), by_distance.end(), [](const auto& a, const auto& b) {
            return std::make_pair(std::labs(a.first), a.first) <
                   std::make_pair(std::labs(b.first), b.first);
        });
        long tau_v = by_distance[1].first;  // nearest non-base member
        const pool_entry* ventry = by_distance[1].second;

        auto claimed_entries = [&](long tau) {
            std::vector<mpz_class> v(ncoord);
            for (size_t i = 0; i < ncoord; ++i) v[i] = base_entries[i] + tau * scaled_delta[i];
            return v;
        };
        auto entries_valid = [&](const std::vector<mpz_class>& v) {
            for (size_t i = 1; i < m_base; ++i)  // g_1 is unconstrained
                if (v[i] < 1) return false;
            for (size_t i = m_base; i < ncoord; ++i)
                if (v[i] < 1) return false;
            // a claimed period that is a repeated shorter cycle cannot be
            // anyone's minimal period; the line's domain ends there
            for (size_t cycle = 1; cycle < len_base; ++cycle) {
                if (len_base % cycle != 0) continue;
                bool repeats = true;
                for (size_t i = cycle; i < len_base && repeats; ++i)
                    repeats = v[m_base + i] == v[m_base + i % cycle];
                if (repeats) return false;
            }
            return true;
        };

        std::optional<family_line> accepted;
        for (const auto& [tau_w, w] : by_distance) {
            if (tau_w == 0 || tau_w == tau_v) continue;
            auto poly = detail::integer_quadratic(base.x, tau_v, ventry->x, tau_w, w->x);
            if (!poly) continue;
            std::vector<line_member> on_poly;
            for (const auto& [tau, e] : members) {
                if (detail::eval_quadratic(*poly, tau) != e->x) continue;
                line_member lm;
                lm.t = tau;
                lm.x = e->x;
                lm.theta = e->theta;
                lm.entries = e->entry_vector();
                on_poly.push_back(std::move(lm));
            }
            if (on_poly.size() < static_cast<size_t>(cfg.min_line_members)) continue;
            std::sort(on_poly.begin(), on_poly.end(),
                      [](const line_member& a, const line_member& b) { return a.t < b.t; });
            family_line line;
            line.direction = scaled_delta;
            line.x_poly = *poly;
            line.members = std::move(on_poly);

            bool falsified = false;
            int square_free_budget = 64;
            long t_first = line.members.front().t, t_last = line.members.back().t;
            size_t next_member = 0;
            for (long tau = t_first; tau <= t_last && !falsified; ++tau) {
                if (next_member < line.members.size() && line.members[next_member].t == tau) {
                    ++next_member;
                    continue;
                }
                mpz_class xv = detail::eval_quadratic(*poly, tau);
                if (xv < 2) {
                    falsified = true;
                    break;
                }
                if (square_free_budget == 0) continue;
                --square_free_budget;
                if (!is_square_free(xv)) {
                    ++line.skipped_non_square_free;
                    if (line.skipped_values.size() < 64) line.skipped_values.push_back(xv);
                    continue;
                }
                if (cfg.fam_b * cfg.fam_b * xv <= cfg.window_max) {
                    falsified = true;  // square-free, in window, yet not a member
                } else {
                    auto oracle = detail::family_entries_oracle(cfg, xv, m_base, len_base);
                    if (!oracle || *oracle != claimed_entries(tau)) falsified = true;
                }
            }
            if (falsified) continue;

            for (int dir : {+1, -1}) {
                long edge = dir > 0 ? t_last : t_first;
                for (long step = 1; step <= 64 && !falsified; ++step) {
                    long tau = edge + dir * step;
                    auto claim = claimed_entries(tau);
                    if (!entries_valid(claim)) break;
                    mpz_class xv = detail::eval_quadratic(*poly, tau);
                    if (xv < 2) break;
                    if (!is_square_free(xv)) continue;
                    auto oracle = detail::family_entries_oracle(cfg, xv, m_base, len_base);
                    if (oracle && *oracle == claim)
                        ++line.confirmed_predictions;
                    else
                        falsified = true;
                    break;
                }
                if (falsified) break;
            }
            if (falsified) continue;
            if (line.members.size() + line.confirmed_predictions <
                static_cast<size_t>(cfg.min_line_members) + 1)
                continue;
            accepted = std::move(line);
            break;
        }
        if (accepted) lines.push_back(std::move(*accepted));
    }

    std::sort(lines.begin(), lines.end(), [](const family_line& a, const family_line& b) {
        if (a.direction != b.direction) return a.direction < b.direction;
        return a.x_poly < b.x_poly;
    });
    return lines;
}

// Coordinates eligible for the independence search over member vectors laid
// out as (g_1..g_m, k_1..k_L, x): the preperiod entries, the period entries at
// odd positions, and the radicand. The palindromic normal form ties the
// even-position period entries to the rest of the period (each non-middle
// entry pairs with its mirror of equal index parity and the closing entry is
// 2 g_1), so only odd positions count as free directions.
inline std::vector<size_t> independence_coordinates(size_t m, size_t period_len) {
    std::vector<size_t> coords;
    for (size_t i = 0; i < m; ++i) coords.push_back(i);
    for (size_t i = 0; i < period_len; ++i)
        if (i % 2 == 0) coords.push_back(m + i);  // k_1, k_3, ... (1-based odd)
    coords.push_back(m + period_len);             // x
    return coords;
}

// Maximum cardinality r of an eligible coordinate subset S such that every
// j in S admits members u, w agreeing on S \ {j} and differing at j. Exact
// subset search; the base vector always participates.
inline int independence_dimension(const std::vector<mpz_class>& base_vec,
                                  const std::vector<std::vector<mpz_class>>& members,
                                  const std::vector<size_t>& eligible) {
    std::vector<std::vector<mpz_class>> vecs;
    vecs.push_back(base_vec);
    for (const auto& v : members)
        if (std::find(vecs.begin(), vecs.end(), v) == vecs.end()) vecs.push_back(v);

    std::vector<size_t> varying;
    for (size_t j : eligible)
        for (const auto& v : vecs)
            if (v[j] != base_vec[j]) {
                varying.push_back(j);
                break;
            }

    const size_t k = varying.size();
    int best = 0;
    for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
        std::vector<size_t> subset;
        for (size_t i = 0; i < k; ++i)
            if (mask & (1u << i)) subset.push_back(varying[i]);
        if (static_cast<int>(subset.size()) <= best) continue;
        bool ok = true;
        for (size_t j : subset) {
            std::map<std::vector<mpz_class>, mpz_class> proj;
            bool witness = false;
            for (const auto& v : vecs) {
                std::vector<mpz_class> key;
                key.reserve(subset.size() - 1);
                for (size_t i : subset)
                    if (i != j) key.push_back(v[i]);
                auto [it, fresh] = proj.emplace(std::move(key), v[j]);
                if (!fresh && it->second != v[j]) {
                    witness = true;
                    break;
                }
            }
            if (!witness) {
                ok = false;
                break;
            }
        }
        if (ok) best = static_cast<int>(subset.size());
    }
    return best;
}

// Estimated arithmetic complexity of the torus with modulus theta: the
// independence dimension over the members of all fitted family lines, at
// least 1 and at most the total entry count n.
inline complexity_report arithmetic_complexity(const quadratic_irrational& theta, search_config cfg,
                                               expansion_store* store = nullptr) {
    cfg.fam_a = theta.a;
    cfg.fam_b = theta.b;
    cfg.fam_c = theta.c;
    cf_expansion exp = expand(theta);

    complexity_report rep;
    rep.theta = theta;
    rep.m = exp.m();
    rep.period_len = exp.period_length();
    rep.diagnostics.window_max = cfg.window_max;

    if (theta.big_d() > cfg.window_max) {
        rep.diagnostics.window_below_base = true;
        rep.c = 1;
        std::vector<mpz_class> base_vec(exp.preperiod);
        base_vec.insert(base_vec.end(), exp.period.begin(), exp.period.end());
        base_vec.push_back(theta.d);
        rep.members_used.push_back(std::move(base_vec));
        return rep;
    }

    auto pool = enumerate_window(cfg, theta, exp, store);
    rep.diagnostics.pool_size = pool.size();

    const pool_entry* base = nullptr;
    for (const auto& e : pool)
        if (e.theta == theta) base = &e;
    std::vector<family_line> lines;
    if (base) lines = fit_lines_through_base(cfg, *base, pool);
    rep.diagnostics.line_count = lines.size();
    for (const auto& l : lines) rep.diagnostics.skipped_non_square_free += l.skipped_non_square_free;

    std::vector<mpz_class> base_vec(exp.preperiod);
    base_vec.insert(base_vec.end(), exp.period.begin(), exp.period.end());
    base_vec.push_back(theta.d);

    std::vector<std::vector<mpz_class>> members;
    for (const auto& l : lines)
        for (const auto& lm : l.members) {
            std::vector<mpz_class> v = lm.entries;
            v.push_back(lm.x);
            if (std::find(members.begin(), members.end(), v) == members.end())
                members.push_back(std::move(v));
        }
    std::sort(members.begin(), members.end());

    int r = independence_dimension(base_vec, members,
                                   independence_coordinates(rep.m, rep.period_len));
    int n = static_cast<int>(rep.m + rep.period_len);
    rep.c = std::clamp(std::max(r, 1), 1, n);
    rep.witness_lines = std::move(lines);
    rep.members_used = std::move(members);
    if (rep.members_used.empty()) rep.members_used.push_back(base_vec);
    return rep;
}

}  // namespace torusrank
