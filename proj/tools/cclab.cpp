#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "cclab/certificate.hpp"
#include "cclab/exact.hpp"
#include "cclab/instance.hpp"
#include "cclab/json_io.hpp"
#include "cclab/lp.hpp"
#include "cclab/pivot.hpp"
#include "cclab/rounding.hpp"

namespace {

using namespace cclab;

constexpr int exit_ok = 0;
constexpr int exit_usage = 1;
constexpr int exit_parse = 2;
constexpr int exit_solver = 3;
constexpr int exit_violation = 4;

struct CliError {
    int code;
    std::string message;
};

Instance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CliError{exit_parse, "cannot open " + path};
    try {
        return parse_instance(in);
    } catch (const ParseError& e) {
        throw CliError{exit_parse, path + ": " + e.what()};
    }
}

RoundingScheme load_scheme(const std::string& name, const std::string& file) {
    if (!file.empty()) {
        std::ifstream in(file);
        if (!in) throw CliError{exit_parse, "cannot open " + file};
        json j;
        try {
            in >> j;
            return scheme_from_json(j);
        } catch (const std::exception& e) {
            throw CliError{exit_parse, file + ": " + e.what()};
        }
    }
    try {
        return preset(name);
    } catch (const std::exception& e) {
        throw CliError{exit_usage, e.what()};
    }
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        if (!content.empty() && content.back() != '\n') std::cout << "\n";
        return;
    }
    std::ofstream out(path);
    if (!out) throw CliError{exit_usage, "cannot write " + path};
    out << content;
}

json run_config(const std::string& subcommand) {
    return json{{"tool_version", tool_version}, {"subcommand", subcommand}};
}

// --- gen -------------------------------------------------------------------

struct GenArgs {
    std::string flavor = "cc";
    int n = 8, k = 2, L = 2;
    double noise = 0.0;
    uint64_t seed = 1;
    std::string output;
};

int cmd_gen(const GenArgs& a) {
    Flavor flavor;
    if (a.flavor == "cc") flavor = Flavor::CC;
    else if (a.flavor == "wcc") flavor = Flavor::WCC;
    else if (a.flavor == "ccc") flavor = Flavor::CCC;
    else throw CliError{exit_usage, "flavor must be cc, wcc, or ccc"};
    PlantedInstance p;
    try {
        p = generate_planted(a.n, a.k, a.noise, a.seed, flavor, a.L);
    } catch (const std::invalid_argument& e) {
        throw CliError{exit_usage, e.what()};
    }
    write_output(a.output, serialize_instance(p.instance));
    std::cerr << "planted_cost " << p.planted_cost << "\n";
    return exit_ok;
}

// --- validate --------------------------------------------------------------

int cmd_validate(const std::string& input) {
    Instance inst = load_instance(input);
    json j = run_config("validate");
    j["n"] = instance_size(inst);
    j["instance_hash"] = instance_hash(inst);
    j["valid"] = true;
    std::cout << j.dump(2) << "\n";
    return exit_ok;
}

// --- lp --------------------------------------------------------------------

int cmd_lp(const std::string& input, const std::string& output) {
    Instance inst = load_instance(input);
    json j;
    try {
        if (auto* cc = std::get_if<CCInstance>(&inst)) {
            LpSolution sol = solve_cc_lp(*cc);
            sol.max_residual = max_residual(check_feasibility(sol));
            j = lp_solution_to_json(sol);
        } else if (auto* wcc = std::get_if<WCCInstance>(&inst)) {
            LpSolution sol = solve_wcc_lp(*wcc);
            sol.max_residual = max_residual(check_feasibility(sol));
            j = lp_solution_to_json(sol);
        } else {
            CCCLpSolution sol = solve_ccc_lp(std::get<CCCInstance>(inst));
            sol.max_residual = max_residual(check_feasibility(sol));
            j = ccc_lp_solution_to_json(sol);
        }
    } catch (const LpError& e) {
        throw CliError{exit_solver, e.what()};
    }
    j["tool_version"] = tool_version;
    j["instance_hash"] = instance_hash(inst);
    write_output(output, j.dump(2));
    return exit_ok;
}

// --- solve -----------------------------------------------------------------

struct SolveArgs {
    std::string input, scheme = "", scheme_file, output;
    int trials = 1000;
    uint64_t seed = 1;
    bool exact = false;
};

int cmd_solve(const SolveArgs& a) {
    Instance inst = load_instance(a.input);
    json j = run_config("solve");
    j["instance_hash"] = instance_hash(inst);
    j["seed"] = a.seed;
    j["trials"] = a.trials;

    try {
        if (auto* ccc = std::get_if<CCCInstance>(&inst)) {
            RoundingScheme scheme =
                load_scheme(a.scheme.empty() ? "ccc_neutral_scheme" : a.scheme, a.scheme_file);
            j["scheme"] = scheme.name;
            CCCLpSolution sol = solve_ccc_lp(*ccc);
            j["lp_objective"] = sol.objective;
            MonteCarloStats st = monte_carlo_ccc(*ccc, sol, scheme, a.trials, a.seed);
            j["stats"] = stats_to_json(st);
            CounterRng rng(a.seed, 0);
            j["sample_run"] = chromatic_clustering_to_json(lp_ccc(*ccc, sol, scheme, rng));
            if (sol.objective > 1e-12) j["ratio_mean_lp"] = st.mean / sol.objective;
            else if (st.mean <= 1e-12) j["ratio_mean_lp"] = "optimal, cost 0";
            if (a.exact) {
                ExactResult ex = exact_ccc(*ccc);
                j["exact"] = exact_result_to_json(ex);
                if (ex.cost > 1e-12) j["ratio_mean_opt"] = st.mean / ex.cost;
            }
        } else {
            RoundingScheme scheme =
                load_scheme(a.scheme.empty() ? "wcc_tight" : a.scheme, a.scheme_file);
            j["scheme"] = scheme.name;
            LpSolution sol;
            MonteCarloStats st;
            if (auto* cc = std::get_if<CCInstance>(&inst)) {
                sol = solve_cc_lp(*cc);
                st = monte_carlo_pivot(*cc, sol, scheme, a.trials, a.seed);
                if (a.exact) {
                    ExactResult ex = exact_cc(*cc);
                    j["exact"] = exact_result_to_json(ex);
                    if (ex.cost > 1e-12) j["ratio_mean_opt"] = st.mean / ex.cost;
                }
            } else {
                auto& wcc = std::get<WCCInstance>(inst);
                sol = solve_wcc_lp(wcc);
                st = monte_carlo_pivot(wcc, sol, scheme, a.trials, a.seed);
                if (a.exact) {
                    ExactResult ex = exact_cc(wcc);
                    j["exact"] = exact_result_to_json(ex);
                    if (ex.cost > 1e-12) j["ratio_mean_opt"] = st.mean / ex.cost;
                }
            }
            j["lp_objective"] = sol.objective;
            j["stats"] = stats_to_json(st);
            if (sol.objective > 1e-12) j["ratio_mean_lp"] = st.mean / sol.objective;
            else if (st.mean <= 1e-12) j["ratio_mean_lp"] = "optimal, cost 0";
        }
    } catch (const LpError& e) {
        throw CliError{exit_solver, e.what()};
    } catch (const std::invalid_argument& e) {
        throw CliError{exit_usage, e.what()};
    }
    write_output(a.output, j.dump(2));
    return exit_ok;
}

// --- exact -----------------------------------------------------------------

int cmd_exact(const std::string& input, const std::string& output) {
    Instance inst = load_instance(input);
    ExactResult res;
    try {
        if (auto* cc = std::get_if<CCInstance>(&inst)) res = exact_cc(*cc);
        else if (auto* wcc = std::get_if<WCCInstance>(&inst)) res = exact_cc(*wcc);
        else res = exact_ccc(std::get<CCCInstance>(inst));
    } catch (const std::invalid_argument& e) {
        throw CliError{exit_usage, e.what()};
    }
    json j = exact_result_to_json(res);
    j["tool_version"] = tool_version;
    j["instance_hash"] = instance_hash(inst);
    write_output(output, j.dump(2));
    return exit_ok;
}

// --- certify ---------------------------------------------------------------

struct CertifyArgs {
    std::string mode = "wcc", scheme, scheme_file, output, region_csv;
    double alpha = 10.0 / 3;
    double step = 0.01;
    int workers = 0;
    bool tables = false;
};

int cmd_certify(const CertifyArgs& a) {
    RoundingScheme scheme = load_scheme(
        a.scheme.empty() ? (a.mode == "ccc" ? "ccc_neutral_scheme" : "wcc_tight") : a.scheme,
        a.scheme_file);
    CertificateReport rep;
    try {
        if (a.mode == "wcc") rep = certify_wcc(scheme, a.alpha, a.step, a.workers);
        else if (a.mode == "ccc") rep = certify_ccc(scheme, a.alpha, a.step, a.workers);
        else throw CliError{exit_usage, "mode must be wcc or ccc"};
    } catch (const std::invalid_argument& e) {
        throw CliError{exit_usage, e.what()};
    }
    json j = certificate_report_to_json(rep);
    j["scheme"] = scheme.name;
    if (a.tables && a.mode == "wcc") {
        Rat alpha_rat = a.alpha == 6.0 ? Rat(6) : Rat(10, 3);
        Appendix app = a.alpha == 6.0 ? Appendix::A : Appendix::B;
        j["extremal_tables"] = extremal_table_to_json(extremal_tables(scheme, alpha_rat, app));
    }
    if (!a.region_csv.empty())
        write_output(a.region_csv,
                     region_points_to_csv(violation_region(scheme.fplus, a.alpha, a.step)));
    write_output(a.output, j.dump(2));
    return rep.certified() ? exit_ok : exit_violation;
}

// --- lowerbound ------------------------------------------------------------

struct LowerBoundArgs {
    std::string mode = "wcc", output;
    std::optional<double> alpha;
    std::vector<double> bisect;
};

int cmd_lowerbound(const LowerBoundArgs& a) {
    auto check = [&](double alpha) {
        if (a.mode == "wcc") return lb_wcc(alpha);
        if (a.mode == "ccc") return lb_ccc(alpha);
        throw CliError{exit_usage, "mode must be wcc or ccc"};
    };
    json j = run_config("lowerbound");
    j["mode"] = a.mode;
    try {
        if (!a.bisect.empty()) {
            if (a.bisect.size() != 2) throw CliError{exit_usage, "--bisect needs lo hi"};
            double thr = lb_bisect(check, a.bisect[0], a.bisect[1]);
            j["threshold"] = thr;
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.4f", thr);
            std::cerr << "threshold " << buf << "\n";
        } else if (a.alpha) {
            LowerBoundReport rep = check(*a.alpha);
            j.update(lower_bound_report_to_json(rep));
            std::cerr << (rep.feasible ? "feasible" : "infeasible") << "\n";
        } else {
            throw CliError{exit_usage, "need --alpha or --bisect"};
        }
    } catch (const std::invalid_argument& e) {
        throw CliError{exit_usage, e.what()};
    }
    write_output(a.output, j.dump(2));
    return exit_ok;
}

// --- region ----------------------------------------------------------------

struct RegionArgs {
    std::string scheme = "ccc_neutral_scheme", scheme_file, output;
    double alpha = 2.15;
    double resolution = 0.001;
};

int cmd_region(const RegionArgs& a) {
    RoundingScheme scheme = load_scheme(a.scheme, a.scheme_file);
    auto pts = violation_region(scheme.fplus, a.alpha, a.resolution);
    write_output(a.output, region_points_to_csv(pts));
    std::cerr << pts.size() << " points\n";
    return exit_ok;
}

// --- bench -----------------------------------------------------------------

struct BenchArgs {
    int n = 10;
    uint64_t seed = 1;
    std::string flavor = "cc";
};

int cmd_bench(const BenchArgs& a) {
    Flavor flavor = a.flavor == "wcc" ? Flavor::WCC
                    : a.flavor == "ccc" ? Flavor::CCC
                                        : Flavor::CC;
    auto t0 = std::chrono::steady_clock::now();
    PlantedInstance p = generate_planted(a.n, std::max(2, a.n / 3), 0.2, a.seed, flavor, 3);
    double lp_obj = 0;
    if (auto* cc = std::get_if<CCInstance>(&p.instance)) lp_obj = solve_cc_lp(*cc).objective;
    else if (auto* wcc = std::get_if<WCCInstance>(&p.instance)) lp_obj = solve_wcc_lp(*wcc).objective;
    else lp_obj = solve_ccc_lp(std::get<CCCInstance>(p.instance)).objective;
    auto t1 = std::chrono::steady_clock::now();
    double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    json j = run_config("bench");
    j["flavor"] = a.flavor;
    j["n"] = a.n;
    j["lp_objective"] = lp_obj;
    j["elapsed_ms"] = ms;
    std::cout << j.dump(2) << "\n";
    return exit_ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"correlation clustering LP-rounding toolkit"};
    app.require_subcommand(1);

    GenArgs gen;
    auto* sc_gen = app.add_subcommand("gen", "generate a planted instance");
    sc_gen->add_option("--flavor", gen.flavor, "cc | wcc | ccc");
    sc_gen->add_option("-n", gen.n, "vertex count");
    sc_gen->add_option("-k", gen.k, "planted clusters");
    sc_gen->add_option("-L", gen.L, "colors (ccc)");
    sc_gen->add_option("--noise", gen.noise, "flip probability");
    sc_gen->add_option("--seed", gen.seed, "rng seed");
    sc_gen->add_option("-o,--output", gen.output, "output path");

    std::string in_path, out_path;
    auto* sc_validate = app.add_subcommand("validate", "parse and validate an instance");
    sc_validate->add_option("input", in_path, "instance file")->required();

    auto* sc_lp = app.add_subcommand("lp", "solve the LP relaxation");
    sc_lp->add_option("input", in_path, "instance file")->required();
    sc_lp->add_option("-o,--output", out_path, "report path");

    SolveArgs solve;
    auto* sc_solve = app.add_subcommand("solve", "LP + randomized rounding");
    sc_solve->add_option("input", solve.input, "instance file")->required();
    sc_solve->add_option("--scheme", solve.scheme, "rounding preset name");
    sc_solve->add_option("--scheme-file", solve.scheme_file, "custom scheme JSON");
    sc_solve->add_option("--trials", solve.trials, "Monte-Carlo trials");
    sc_solve->add_option("--seed", solve.seed, "rng seed");
    sc_solve->add_flag("--exact", solve.exact, "also compute the exact optimum");
    sc_solve->add_option("-o,--output", solve.output, "report path");

    auto* sc_exact = app.add_subcommand("exact", "brute-force optimum");
    sc_exact->add_option("input", in_path, "instance file")->required();
    sc_exact->add_option("-o,--output", out_path, "report path");

    CertifyArgs certify;
    auto* sc_certify = app.add_subcommand("certify", "triple-based approximation certificate");
    sc_certify->add_option("--mode", certify.mode, "wcc | ccc");
    sc_certify->add_option("--scheme", certify.scheme, "rounding preset name");
    sc_certify->add_option("--scheme-file", certify.scheme_file, "custom scheme JSON");
    sc_certify->add_option("--alpha", certify.alpha, "factor to certify");
    sc_certify->add_option("--step", certify.step, "grid step");
    sc_certify->add_option("--workers", certify.workers, "worker threads (default CCLAB_WORKERS)");
    sc_certify->add_flag("--tables", certify.tables, "include extremal tables");
    sc_certify->add_option("--region", certify.region_csv, "also write violation-region CSV");
    sc_certify->add_option("-o,--output", certify.output, "report path");

    LowerBoundArgs lower;
    auto* sc_lower = app.add_subcommand("lowerbound", "lower-bound feasibility check");
    sc_lower->add_option("--mode", lower.mode, "wcc | ccc");
    double lb_alpha = 0;
    auto* lb_alpha_opt = sc_lower->add_option("--alpha", lb_alpha, "single alpha check");
    sc_lower->add_option("--bisect", lower.bisect, "threshold search over [lo, hi]")->expected(2);
    sc_lower->add_option("-o,--output", lower.output, "report path");

    RegionArgs region;
    auto* sc_region = app.add_subcommand("region", "emit the f-circ violation region as CSV");
    sc_region->add_option("--scheme", region.scheme, "rounding preset name");
    sc_region->add_option("--scheme-file", region.scheme_file, "custom scheme JSON");
    sc_region->add_option("--alpha", region.alpha, "factor");
    sc_region->add_option("--resolution", region.resolution, "grid resolution");
    sc_region->add_option("-o,--output", region.output, "CSV path");

    BenchArgs bench;
    auto* sc_bench = app.add_subcommand("bench", "time the LP solve on a generated instance");
    sc_bench->add_option("-n", bench.n, "vertex count");
    sc_bench->add_option("--flavor", bench.flavor, "cc | wcc | ccc");
    sc_bench->add_option("--seed", bench.seed, "rng seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? exit_ok : exit_usage;
    }

    try {
        if (sc_gen->parsed()) return cmd_gen(gen);
        if (sc_validate->parsed()) return cmd_validate(in_path);
        if (sc_lp->parsed()) return cmd_lp(in_path, out_path);
        if (sc_solve->parsed()) return cmd_solve(solve);
        if (sc_exact->parsed()) return cmd_exact(in_path, out_path);
        if (sc_certify->parsed()) return cmd_certify(certify);
        if (sc_lower->parsed()) {
            if (lb_alpha_opt->count() > 0) lower.alpha = lb_alpha;
            return cmd_lowerbound(lower);
        }
        if (sc_region->parsed()) return cmd_region(region);
        if (sc_bench->parsed()) return cmd_bench(bench);
    } catch (const CliError& e) {
        std::cerr << "error: " << e.message << "\n";
        return e.code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_solver;
    }
    return exit_usage;
}
