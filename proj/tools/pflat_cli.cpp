// Command-line front end: analyze a single subalgebra, enumerate all proper
// subsets, print the invariant polynomial with its detected linear factor,
// or run a named verification suite.
//
// Exit codes: 0 success, 1 suite failure, 2 usage error.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <string>

#include "pflat/report.hpp"
#include "pflat/verification.hpp"

namespace {

using namespace pflat;

struct CommonArgs {
    std::string field = "r";
    int n = 0;
    std::string subset = "empty";
    std::string structure = "parabolic";
    int symbolic_cap = kDefaultSymbolicCap;
    int branch_depth = 8;
    int threads = default_thread_count();
    int trials = 5;
    unsigned seed = 12345;
    bool as_json = false;
    bool dump = false;
};

Field parse_field(const std::string& f) {
    if (f == "r" || f == "R") return Field::R;
    if (f == "h" || f == "H") return Field::H;
    throw CLI::ValidationError("--field", "expected r or h");
}

Structure parse_structure(const std::string& s) {
    if (s == "parabolic") return Structure::Parabolic;
    if (s == "solvable") return Structure::Solvable;
    throw CLI::ValidationError("--structure", "expected parabolic or solvable");
}

DecideOptions options_of(const CommonArgs& args) {
    DecideOptions opts;
    opts.symbolic_cap = args.symbolic_cap;
    opts.branch_depth = args.branch_depth;
    opts.oracle_trials = args.trials;
    opts.seed = args.seed;
    return opts;
}

void add_common_flags(CLI::App* cmd, CommonArgs& args, bool needs_subset) {
    cmd->add_option("--field", args.field, "ground field: r or h")->required();
    cmd->add_option("--n", args.n, "matrix size n of sl(n,K)")->required()->check(CLI::Range(2, 16));
    if (needs_subset)
        cmd->add_option("--subset", args.subset,
                        "simple-root subset, comma separated (e.g. 1,3,5) or 'empty'")
            ->required();
    cmd->add_option("--structure", args.structure, "parabolic or solvable")
        ->check(CLI::IsMember({"parabolic", "solvable"}));
    cmd->add_option("--symbolic-cap", args.symbolic_cap,
                    "largest symbolic determinant size for the invariant");
    cmd->add_option("--branch-depth", args.branch_depth, "solver branch depth limit");
    cmd->add_option("--threads", args.threads, "worker threads (results are thread-count independent)");
    cmd->add_option("--trials", args.trials, "probabilistic oracle sample count");
    cmd->add_option("--seed", args.seed, "seed for sampled checks");
    cmd->add_flag("--json", args.as_json, "emit JSON instead of text");
    cmd->add_flag("--dump-tensors", args.dump, "also dump the connection and curvature tensors");
}

int run_analyze(const CommonArgs& args) {
    Field field = parse_field(args.field);
    Structure structure = parse_structure(args.structure);
    SimpleRootSubset subset = SimpleRootSubset::parse(args.n, args.subset);
    auto model = build_algebra(field, args.n);
    Connection canonical = canonical_connection(model);
    DecisionReport rep = decide(canonical, subset, structure, options_of(args));

    json j = verdict_to_json(rep);
    j["diagram"] = rep.dynkin;
    if (args.dump) {
        Subalgebra sub = structure == Structure::Parabolic ? parabolic(model, subset)
                                                           : solvable_part(model, subset);
        Connection induced = induced_connection(canonical, sub);
        CurvaturePack pack(induced);
        j["tensors"] = dump_tensors(induced, pack);
    }
    if (args.as_json) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << render_report(rep);
        if (args.dump) std::cout << j["tensors"].dump(2) << "\n";
    }
    return 0;
}

int run_enumerate(const CommonArgs& args) {
    Field field = parse_field(args.field);
    Structure structure = parse_structure(args.structure);
    auto model = build_algebra(field, args.n);
    Connection canonical = canonical_connection(model);
    EnumerationResult res = enumerate_all(canonical, structure, options_of(args), args.threads);
    json j = enumeration_to_json(res);
    if (args.dump) {
        for (std::size_t i = 0; i < res.rows.size(); ++i) {
            Subalgebra sub = structure == Structure::Parabolic
                                 ? parabolic(model, res.rows[i].subset)
                                 : solvable_part(model, res.rows[i].subset);
            Connection induced = induced_connection(canonical, sub);
            CurvaturePack pack(induced);
            j["rows"][i]["tensors"] = dump_tensors(induced, pack);
        }
    }
    if (args.as_json || args.dump)
        std::cout << j.dump(2) << "\n";
    else
        std::cout << render_enumeration(res);
    return 0;
}

int run_invariant(const CommonArgs& args) {
    Field field = parse_field(args.field);
    Structure structure = parse_structure(args.structure);
    SimpleRootSubset subset = SimpleRootSubset::parse(args.n, args.subset);
    auto model = build_algebra(field, args.n);
    Connection canonical = canonical_connection(model);
    Subalgebra sub = structure == Structure::Parabolic ? parabolic(model, subset)
                                                       : solvable_part(model, subset);
    Connection induced = induced_connection(canonical, sub);
    CurvaturePack pack(induced);
    Representation rep = build_rep_symmetric(induced, pack);

    MultiPoly phi;
    try {
        phi = invariant_poly(rep, DetStrategy::MinorExpansion, args.symbolic_cap);
    } catch (const SizeCapExceeded& e) {
        std::cerr << "error: " << e.what()
                  << "\nhint: the probabilistic hyperplane oracle (analyze --trials N) still "
                     "applies beyond the cap\n";
        return 2;
    }

    // Candidate factor from the recipe witness, scaled to integer
    // coefficients: -n * (xi . x + x_{m+1}).
    const int sz = sub.dim() + 1;
    CoordVec xi = candidate_witnesses(structure, subset, sub).front();
    MultiPoly ell = MultiPoly::variable(sz, sz - 1, Rational(-args.n));
    for (int i = 0; i < sub.dim(); ++i)
        if (!xi[i].is_zero()) ell += MultiPoly::variable(sz, i, Rational(-args.n) * xi[i]);
    auto [divides, quotient] = linear_factor_divides(phi, ell);

    std::vector<std::string> var_names;
    for (int i = 0; i < sub.dim(); ++i) var_names.push_back("x_" + sub.name(i));
    var_names.push_back("z");

    json j;
    j["field"] = field_tag(field);
    j["n"] = args.n;
    j["subset"] = subset.indices;
    j["structure"] = structure_tag(structure);
    j["dim"] = sub.dim();
    j["invariant"] = poly_to_json(phi);
    j["invariant_pretty"] = phi.str(var_names);
    j["candidate_factor"] = ell.str(var_names);
    j["divides"] = divides;
    if (divides && quotient) {
        auto deg = quotient->degree();
        j["quotient_degree"] = deg ? *deg : -1;
        j["quotient"] = poly_to_json(*quotient);
    }
    if (args.dump) j["tensors"] = dump_tensors(induced, pack);
    if (args.as_json) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "invariant (dim " << sub.dim() << "): " << j["invariant_pretty"].get<std::string>()
                  << "\ncandidate factor: " << j["candidate_factor"].get<std::string>()
                  << "\ndivides: " << (divides ? "yes" : "no");
        if (divides && quotient) std::cout << ", quotient degree " << j["quotient_degree"];
        std::cout << "\n";
    }
    return 0;
}

int run_verify_suite(const std::string& suite, int threads, bool as_json, bool dump) {
    as_json = as_json || dump; // tensor dumps only make sense as JSON
    const auto& suites = verification::suite_table();
    auto it = suites.find(suite);
    if (it == suites.end()) {
        std::cerr << "error: unknown suite '" << suite << "'; available:";
        for (const auto& [name, members] : suites) std::cerr << " " << name;
        std::cerr << "\n";
        return 2;
    }
    bool all_ok = true;
    json rows = json::array();
    for (const std::string& member : it->second) {
        for (const auto& crit : verification::all_criteria()) {
            if (crit.name != member) continue;
            verification::CheckResult res = crit.run(threads);
            all_ok = all_ok && res.passed;
            if (as_json) {
                rows.push_back({{"check", res.name},
                                {"passed", res.passed},
                                {"seconds", res.seconds},
                                {"detail", res.detail}});
            } else {
                std::printf("[%s] %-22s (%.2fs) %s\n", res.passed ? "PASS" : "FAIL",
                            res.name.c_str(), res.seconds, res.detail.c_str());
            }
        }
    }
    json out{{"suite", suite}, {"passed", all_ok}, {"checks", rows}};
    if (dump) {
        // Tensor dumps of the small canonical connections covered by the suites.
        json tensors = json::object();
        for (auto [f, n] : {std::pair{Field::R, 2}, {Field::R, 3}, {Field::H, 2}}) {
            const Connection& conn = verification::cached_canonical(f, n);
            CurvaturePack pack(conn);
            tensors["sl(" + std::to_string(n) + "," + field_tag(f) + ")"] =
                dump_tensors(conn, pack);
        }
        out["tensors"] = std::move(tensors);
    }
    if (as_json || dump)
        std::cout << out.dump(2) << "\n";
    else
        std::printf("suite %s: %s\n", suite.c_str(), all_ok ? "pass" : "FAIL");
    return all_ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact-arithmetic flatness analysis of parabolic and solvable subalgebras of "
                 "sl(n,R) and sl(n,H)"};
    app.require_subcommand(1);

    CommonArgs analyze_args, enumerate_args, invariant_args;
    std::string suite_name;
    int suite_threads = pflat::default_thread_count();
    bool suite_json = false;

    CLI::App* analyze = app.add_subcommand("analyze", "decide one subalgebra");
    add_common_flags(analyze, analyze_args, true);

    CLI::App* enumerate = app.add_subcommand("enumerate", "decide every proper subset");
    add_common_flags(enumerate, enumerate_args, false);

    CLI::App* invariant =
        app.add_subcommand("invariant", "invariant polynomial and its linear factor");
    add_common_flags(invariant, invariant_args, true);

    CLI::App* verify = app.add_subcommand("verify-suite", "run a named verification suite");
    verify->add_option("suite", suite_name, "sl-r-small | sl-h-small | theorem1 | solvable-all | tensors")
        ->required();
    verify->add_option("--threads", suite_threads, "worker threads");
    verify->add_flag("--json", suite_json, "emit JSON");
    bool suite_dump = false;
    verify->add_flag("--dump-tensors", suite_dump,
                     "include tensor dumps of the small canonical connections");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (analyze->parsed()) return run_analyze(analyze_args);
        if (enumerate->parsed()) return run_enumerate(enumerate_args);
        if (invariant->parsed()) return run_invariant(invariant_args);
        if (verify->parsed())
            return run_verify_suite(suite_name, suite_threads, suite_json, suite_dump);
    } catch (const pflat::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
