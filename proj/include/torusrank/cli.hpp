#pragma once

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <memory>
#include <sstream>

#include "torusrank/cache.hpp"
#include "torusrank/serialize.hpp"

namespace torusrank {

struct cli_result {
    int exit_code = 0;
    std::string out;
    std::string err;
};

namespace cli_detail {

inline mpz_class parse_mpz(const std::string& s) {
    try {
        return mpz_class(s);
    } catch (const std::exception&) {
        throw std::invalid_argument("invalid integer: " + s);
    }
}

struct theta_flags {
    std::string a = "0", b = "1", c = "1", d;

    void attach(CLI::App* cmd, bool second = false) {
        const char* suffix = second ? "2" : "";
        cmd->add_option(std::string("--a") + suffix, a, "rational part numerator");
        cmd->add_option(std::string("--b") + suffix, b, "irrational part coefficient");
        cmd->add_option(std::string("--c") + suffix, c, "denominator");
        cmd->add_option(std::string("--d") + suffix, d, "square-free radicand")->required();
    }

    quadratic_irrational value(bool allow_large) const {
        mpz_class dd = parse_mpz(d);
        if (!allow_large && dd > mpz_class("9223372036854775807"))
            throw std::invalid_argument("d exceeds 2^63 - 1; pass --allow-large-d to override");
        return canonicalize(parse_mpz(a), parse_mpz(b), parse_mpz(c), dd);
    }
};

inline std::string csv_quote(const std::string& s) { return "\"" + s + "\""; }

}  // namespace cli_detail

// Executes one CLI invocation. argv excludes the program name.
inline cli_result run_cli(const std::vector<std::string>& argv) {
    using cli_detail::parse_mpz;
    cli_result result;
    std::ostringstream out, err;

    CLI::App app{"exact continued fractions of quadratic irrationals, entry-family systems and rank estimates"};
    app.require_subcommand(1);

    std::string format = "text";
    app.add_option("--format", format, "output format: text, json or csv")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    std::string cache_path;
    app.add_option("--cache", cache_path, "expansion cache path (JSONL)");
    bool allow_large_d = false;
    app.add_flag("--allow-large-d", allow_large_d, "accept radicands beyond 2^63");

    // expand
    auto* cmd_expand = app.add_subcommand("expand", "continued fraction of (a + b*sqrt(d))/c");
    cli_detail::theta_flags expand_theta;
    expand_theta.attach(cmd_expand);

    // convergents
    auto* cmd_conv = app.add_subcommand("convergents", "partial fractions A_i/B_i");
    cli_detail::theta_flags conv_theta;
    conv_theta.attach(cmd_conv);
    unsigned long conv_count = 0;
    cmd_conv->add_option("--count", conv_count, "number of convergents")->required();

    // euler
    auto* cmd_euler = app.add_subcommand("euler", "entry-variable polynomial system at the base expansion");
    cli_detail::theta_flags euler_theta;
    euler_theta.attach(cmd_euler);

    // complexity
    auto* cmd_cx = app.add_subcommand("complexity", "arithmetic complexity estimate");
    cli_detail::theta_flags cx_theta;
    cx_theta.attach(cmd_cx);
    std::string cx_window;
    cmd_cx->add_option("--window", cx_window, "largest b^2*x scanned (default 10^6)");
    bool cx_single = false;
    cmd_cx->add_flag("--single-thread", cx_single, "deterministic single-threaded scan");

    // morita / iso
    auto* cmd_morita = app.add_subcommand("morita", "Morita equivalence of two tori");
    cli_detail::theta_flags morita_t1, morita_t2;
    morita_t1.attach(cmd_morita);
    morita_t2.attach(cmd_morita, true);
    auto* cmd_iso = app.add_subcommand("iso", "isomorphism of two tori");
    cli_detail::theta_flags iso_t1, iso_t2;
    iso_t1.attach(cmd_iso);
    iso_t2.attach(cmd_iso, true);

    // rank
    auto* cmd_rank = app.add_subcommand("rank", "rank estimate and bound");
    std::string rank_d, rank_a = "0", rank_b = "1", rank_c = "1", rank_curve_b, rank_cm_p, rank_window;
    cmd_rank->add_option("--d", rank_d, "explicit torus radicand");
    cmd_rank->add_option("--a", rank_a, "explicit torus rational part");
    cmd_rank->add_option("--b", rank_b, "explicit torus irrational coefficient");
    cmd_rank->add_option("--c", rank_c, "explicit torus denominator");
    cmd_rank->add_option("--curve-b", rank_curve_b, "rational family parameter b >= 3");
    cmd_rank->add_option("--cm-p", rank_cm_p, "CM prime p = 3 mod 4");
    cmd_rank->add_option("--window", rank_window, "complexity window override");
    bool rank_single = false;
    cmd_rank->add_flag("--single-thread", rank_single, "deterministic single-threaded scan");

    // table1
    auto* cmd_table = app.add_subcommand("table1", "reproduce the thirteen reference rows");
    std::string table_window, table_windows_file;
    cmd_table->add_option("--window", table_window, "default complexity window");
    cmd_table->add_option("--windows-file", table_windows_file, "JSON map of per-prime window overrides");
    bool table_exp_only = false;
    cmd_table->add_flag("--expansions-only", table_exp_only, "skip the complexity columns");
    bool table_single = false;
    cmd_table->add_flag("--single-thread", table_single, "deterministic single-threaded scan");

    // class-number
    auto* cmd_h = app.add_subcommand("class-number", "class number of Q(sqrt(-p)) by reduced forms");
    std::string h_p;
    cmd_h->add_option("--p", h_p, "prime p = 3 mod 4")->required();

    // dimgroup
    auto* cmd_dg = app.add_subcommand("dimgroup", "rank of the dimension group of a circle subgroup");
    std::vector<std::string> dg_roots, dg_angles;
    cmd_dg->add_option("--root", dg_roots, "root-of-unity angle p/q in lowest terms (repeatable)");
    cmd_dg->add_option("--angle", dg_angles, "irrational angle a,b,c,d (repeatable)");

    std::vector<std::string> args = argv;
    std::vector<const char*> cargv;
    cargv.push_back("torusrank");
    for (const auto& s : args) cargv.push_back(s.c_str());
    try {
        app.parse(static_cast<int>(cargv.size()), cargv.data());
    } catch (const CLI::CallForHelp& e) {
        result.out = app.help();
        result.exit_code = 0;
        return result;
    } catch (const CLI::ParseError& e) {
        result.err = std::string("error: ") + e.what() + "\n";
        result.exit_code = 1;
        return result;
    }

    auto open_cache = [&]() -> std::unique_ptr<jsonl_expansion_cache> {
        std::string path = cache_path;
        if (path.empty())
            if (const char* env = std::getenv("TORUSRANK_CACHE")) path = env;
        if (path.empty()) path = "./cfrac-cache.jsonl";
        return std::make_unique<jsonl_expansion_cache>(path);
    };

    int exit_code = 0;
    try {
        if (cmd_expand->parsed()) {
            auto theta = expand_theta.value(allow_large_d);
            auto exp = expand(theta);
            if (format == "json")
                out << expansion_json(exp).dump() << "\n";
            else
                out << bracket_form(exp.preperiod, exp.period) << "\n";
        } else if (cmd_conv->parsed()) {
            auto theta = conv_theta.value(allow_large_d);
            if (conv_count < 1) throw std::invalid_argument("--count must be at least 1");
            auto table = convergents(expand(theta), conv_count);
            if (format == "json") {
                out << to_json(table).dump() << "\n";
            } else if (format == "csv") {
                out << "i,A,B\n";
                for (size_t i = 0; i < table.A.size(); ++i)
                    out << i << "," << table.A[i] << "," << table.B[i] << "\n";
            } else {
                for (size_t i = 0; i < table.A.size(); ++i)
                    out << table.A[i] << "/" << table.B[i] << "\n";
            }
        } else if (cmd_euler->parsed()) {
            auto theta = euler_theta.value(allow_large_d);
            auto sys = build_euler_system(theta, expand(theta));
            if (format == "json") {
                out << to_json(sys).dump() << "\n";
            } else {
                out << "variables:";
                for (const auto& v : sys.variables) out << " " << v;
                out << "\nc1 = " << sys.c1 << ", c2 = " << sys.c2 << ", scale = " << sys.scale_num
                    << "/" << sys.scale_den << "\n";
                out << "dimension upper bound = " << rational_dimension_upper_bound(sys) << "\n";
            }
        } else if (cmd_cx->parsed()) {
            auto theta = cx_theta.value(allow_large_d);
            search_config cfg;
            cfg.single_thread = cx_single;
            if (!cx_window.empty()) cfg.window_max = parse_mpz(cx_window);
            auto cache = open_cache();
            auto rep = arithmetic_complexity(theta, cfg, cache.get());
            cache->flush();
            if (format == "json")
                out << to_json(rep).dump() << "\n";
            else
                out << "c = " << rep.c << " (m=" << rep.m << ", period=" << rep.period_len
                    << ", lines=" << rep.diagnostics.line_count
                    << ", pool=" << rep.diagnostics.pool_size << ", window=" << cfg.window_max
                    << ")\n";
        } else if (cmd_morita->parsed() || cmd_iso->parsed()) {
            bool is_morita = cmd_morita->parsed();
            auto& f1 = is_morita ? morita_t1 : iso_t1;
            auto& f2 = is_morita ? morita_t2 : iso_t2;
            auto t1 = f1.value(allow_large_d);
            auto t2 = f2.value(allow_large_d);
            bool val = is_morita ? morita_equivalent(t1, t2) : isomorphic_tori(t1, t2);
            if (format == "json") {
                json j;
                j[is_morita ? "morita_equivalent" : "isomorphic"] = val;
                out << j.dump() << "\n";
            } else {
                out << (val ? "true" : "false") << "\n";
            }
        } else if (cmd_rank->parsed()) {
            int sources = (!rank_d.empty()) + (!rank_curve_b.empty()) + (!rank_cm_p.empty());
            if (sources != 1)
                throw std::invalid_argument("pass exactly one of --d, --curve-b, --cm-p");
            curve_descriptor desc;
            if (!rank_d.empty()) {
                desc = curve_descriptor::explicit_theta_of(
                    canonicalize(parse_mpz(rank_a), parse_mpz(rank_b), parse_mpz(rank_c), parse_mpz(rank_d)));
            } else if (!rank_curve_b.empty()) {
                desc = curve_descriptor::rational_family(parse_mpz(rank_curve_b));
            } else {
                desc = curve_descriptor::cm(parse_mpz(rank_cm_p));
            }
            search_config cfg;
            cfg.single_thread = rank_single;
            if (!rank_window.empty()) cfg.window_max = parse_mpz(rank_window);
            auto cache = open_cache();
            auto rep = rank_report(desc, cfg, cache.get());
            cache->flush();
            if (format == "json")
                out << to_json(rep).dump() << "\n";
            else
                out << bracket_form(rep.expansion.preperiod, rep.expansion.period) << " n=" << rep.n
                    << " c=" << rep.c << " rank_estimate=" << rep.rank_estimate
                    << " rank_bound=" << rep.rank_bound << "\n";
        } else if (cmd_table->parsed()) {
            search_config cfg;
            cfg.single_thread = table_single;
            if (!table_window.empty()) cfg.window_max = parse_mpz(table_window);
            std::map<unsigned, mpz_class> overrides;
            if (!table_windows_file.empty()) {
                std::ifstream in(table_windows_file);
                if (!in) throw std::invalid_argument("cannot open windows file: " + table_windows_file);
                json j = json::parse(in);
                for (auto it = j.begin(); it != j.end(); ++it)
                    overrides[static_cast<unsigned>(std::stoul(it.key()))] = int_from_json(it.value());
            }
            auto cache = open_cache();
            auto rep = table1_reproduce(cfg, !table_exp_only, overrides, cache.get());
            cache->flush();
            bool with_c = !table_exp_only;
            if (format == "json") {
                json j;
                json rows = json::array();
                for (const auto& r : rep.rows) rows.push_back(to_json(r, with_c));
                j["rows"] = rows;
                j["all_match"] = rep.all_match;
                out << j.dump() << "\n";
            } else if (format == "csv") {
                out << "p,rk_Q,sqrt_p_cf,c\n";
                for (const auto& r : rep.rows) {
                    int rk = with_c ? r.rank_estimate : r.expected_rk_q;
                    int c = with_c ? r.c : r.expected_c;
                    out << r.p << "," << rk << ","
                        << cli_detail::csv_quote(bracket_form(r.preperiod, r.period)) << "," << c << "\n";
                }
            } else {
                for (const auto& r : rep.rows) {
                    out << r.p << "  " << bracket_form(r.preperiod, r.period)
                        << (r.expansion_match ? "" : "  [expansion mismatch]");
                    if (with_c)
                        out << "  c=" << r.c << (r.c_match ? "" : " [expected " + std::to_string(r.expected_c) + "]")
                            << "  rk_Q=" << r.rank_estimate
                            << (r.rank_match ? "" : " [expected " + std::to_string(r.expected_rk_q) + "]");
                    out << "\n";
                }
                out << (rep.all_match ? "all rows match\n" : "MISMATCH\n");
            }
            if (!rep.all_match) exit_code = 2;
        } else if (cmd_h->parsed()) {
            mpz_class h = class_number_imag_quadratic(parse_mpz(h_p));
            if (format == "json") {
                json j;
                j["p"] = json_int(parse_mpz(h_p));
                j["h"] = json_int(h);
                out << j.dump() << "\n";
            } else {
                out << h << "\n";
            }
        } else if (cmd_dg->parsed()) {
            generator_set gens;
            for (const auto& r : dg_roots) {
                auto slash = r.find('/');
                if (slash == std::string::npos) throw std::invalid_argument("root angle must be p/q");
                gens.generators.push_back(root_of_unity_generator(parse_mpz(r.substr(0, slash)),
                                                                  parse_mpz(r.substr(slash + 1))));
            }
            for (const auto& a : dg_angles) {
                std::vector<mpz_class> parts;
                std::stringstream ss(a);
                std::string tok;
                while (std::getline(ss, tok, ',')) parts.push_back(parse_mpz(tok));
                if (parts.size() != 4) throw std::invalid_argument("angle must be a,b,c,d");
                gens.generators.push_back(
                    irrational_generator(canonicalize(parts[0], parts[1], parts[2], parts[3])));
            }
            mpz_class rank = dimension_group_rank(gens);
            if (format == "json") {
                json j;
                j["s"] = gens.s();
                j["t"] = gens.t();
                j["rank"] = json_int(rank);
                out << j.dump() << "\n";
            } else {
                out << rank << "\n";
            }
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        exit_code = 1;
    }

    result.exit_code = exit_code;
    result.out = out.str();
    result.err = err.str();
    return result;
}

}  // namespace torusrank
