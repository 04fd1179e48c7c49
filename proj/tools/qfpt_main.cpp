// Command-line front end: solves a configured system, writes the sampled
// curves as CSV, and prints the validity summary as key=value lines.
//
// Exit codes: 0 success, 1 invalid configuration, 2 solver failure,
// 3 validity violation / cross-pipeline disagreement.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "qfpt/config.hpp"
#include "qfpt/parallel.hpp"
#include "qfpt/pipelines.hpp"

namespace {

using namespace qfpt;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

std::string fmt_csv(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

void write_csv(const std::string& path, const FptSolution& sol) {
    std::ofstream out(path, std::ios::binary);
    require(out.good(), Err::InvalidConfig, "cannot open output file '" + path + "'");
    out << "t,P_r,P_fp\n";
    for (std::size_t i = 0; i < sol.times.size(); ++i) {
        out << fmt_csv(sol.times[i]) << ',' << fmt_csv(sol.restricted[i]) << ','
            << fmt_csv(sol.first_passage[i]) << '\n';
    }
}

std::string report_text(const FptSolution& sol) {
    std::string text;
    const auto& r = sol.report;
    text += "T=" + (r.time_domain_end ? fmt(*r.time_domain_end) : std::string("none")) + "\n";
    text += "normalization_residual=" + fmt(r.normalization_residual) + "\n";
    text += "positivity_violation=" + fmt(r.positivity_violation) + "\n";
    text += "monotonicity_violation=" + fmt(r.monotonicity_violation) + "\n";
    text += "pfp_monotonic=" + std::string(r.first_passage_monotonic ? "1" : "0") + "\n";
    text += "mean_fpt=" + (sol.mean ? fmt(*sol.mean) : std::string("none")) + "\n";
    text += "conditions_pass=" + std::string(r.passes() ? "1" : "0") + "\n";
    return text;
}

TightBindingChain chain_from(const RunConfig& config) {
    TightBindingChain chain;
    chain.n_sites = config.sites;
    chain.site_energies = config.site_energies;
    chain.couplings = config.couplings;
    return chain;
}

FptSolution solve_one(const RunConfig& config, Pipeline pipeline) {
    const TimeGrid grid = TimeGrid::from_step(config.t_max, config.step);
    switch (config.system) {
        case SystemKind::Chain: {
            const TightBindingChain chain = chain_from(config);
            const Partition partition{config.boundary};
            const InitialState start{config.start};
            if (pipeline == Pipeline::Exact) {
                return run_exact_pipeline(chain, partition, start, grid, config.search_max);
            }
            return run_volterra_pipeline(chain, partition, start, grid, config.search_max);
        }
        case SystemKind::Lattice: {
            LatticeMethod method = LatticeMethod::Volterra;
            if (pipeline == Pipeline::LatticeSeries) method = LatticeMethod::Series;
            if (pipeline == Pipeline::LatticeInversion) method = LatticeMethod::NumericInversion;
            return run_lattice_pipeline(method, grid, config.series_order, config.inversion_nodes);
        }
        case SystemKind::Classical2:
            return run_classical_pipeline(config.rate, grid);
    }
    fail(Err::InvalidConfig, "unreachable system kind");
}

int cmd_solve(const RunConfig& config) {
    if (config.pipeline == Pipeline::Both) {
        const FptSolution exact = solve_one(config, Pipeline::Exact);
        const FptSolution numeric = solve_one(config, Pipeline::Volterra);
        double diff_pr = 0.0, diff_pfp = 0.0;
        for (std::size_t i = 0; i < exact.times.size(); ++i) {
            diff_pr = std::max(diff_pr, std::abs(exact.restricted[i] - numeric.restricted[i]));
            diff_pfp = std::max(diff_pfp, std::abs(exact.first_passage[i] - numeric.first_passage[i]));
        }
        write_csv(config.output, exact);
        std::cout << report_text(exact);
        std::cout << "max_abs_diff_Pr=" << fmt(diff_pr) << "\n";
        std::cout << "max_abs_diff_Pfp=" << fmt(diff_pfp) << "\n";
        const double bound = 10.0 * config.step * config.step;
        if (diff_pr > bound || diff_pfp > bound) return 3;
        return exact.report.passes() ? 0 : 3;
    }
    const FptSolution sol = solve_one(config, config.pipeline);
    write_csv(config.output, sol);
    std::cout << report_text(sol);
    return sol.report.passes() ? 0 : 3;
}

int cmd_compare(const RunConfig& config) {
    require(config.system == SystemKind::Chain, Err::InvalidConfig,
            "compare needs a chain system (exact pipeline is finite-chain only)");
    const FptSolution exact = solve_one(config, Pipeline::Exact);
    const FptSolution numeric = solve_one(config, Pipeline::Volterra);
    double diff_pr = 0.0, diff_pfp = 0.0;
    for (std::size_t i = 0; i < exact.times.size(); ++i) {
        diff_pr = std::max(diff_pr, std::abs(exact.restricted[i] - numeric.restricted[i]));
        diff_pfp = std::max(diff_pfp, std::abs(exact.first_passage[i] - numeric.first_passage[i]));
    }
    std::cout << "max_abs_diff_Pr=" << fmt(diff_pr) << "\n";
    std::cout << "max_abs_diff_Pfp=" << fmt(diff_pfp) << "\n";
    const double bound = 10.0 * config.step * config.step;
    std::cout << "bound=" << fmt(bound) << "\n";
    return (diff_pr > bound || diff_pfp > bound) ? 3 : 0;
}

int cmd_report(const RunConfig& config) {
    const Pipeline pipeline =
        (config.pipeline == Pipeline::Both) ? Pipeline::Exact : config.pipeline;
    const FptSolution sol = solve_one(config, pipeline);
    std::ofstream out(config.output, std::ios::binary);
    require(out.good(), Err::InvalidConfig, "cannot open output file '" + config.output + "'");
    out << report_text(sol);
    std::cout << report_text(sol);
    return sol.report.passes() ? 0 : 3;
}

int exit_code_for(const SolverError& error) {
    switch (error.code()) {
        case Err::InvalidConfig:
        case Err::Precondition:
        case Err::MultiDoorway:
        case Err::Disconnected:
        case Err::UnsupportedFiniteOp:
            return 1;
        default:
            return 2;
    }
}

struct CliOptions {
    RunConfig config;
    std::string config_path;
    std::string dump_config_path;
    int threads = 0;
};

void add_common_options(CLI::App* cmd, CliOptions& opts) {
    cmd->add_option("system", opts.config.system, "system kind: chain, lattice, classical2")
        ->required()
        ->transform(CLI::CheckedTransformer(
            std::map<std::string, SystemKind>{{"chain", SystemKind::Chain},
                                              {"lattice", SystemKind::Lattice},
                                              {"classical2", SystemKind::Classical2}}));
    cmd->add_option("--sites", opts.config.sites, "number of chain sites");
    cmd->add_option("--boundary", opts.config.boundary, "last site of omega");
    cmd->add_option("--start", opts.config.start, "initial site (inside omega)");
    cmd->add_option("--energies", opts.config.site_energies, "site energies (default 0)")
        ->delimiter(',');
    cmd->add_option("--couplings", opts.config.couplings, "bond couplings (default 1)")
        ->delimiter(',');
    cmd->add_option("--rate", opts.config.rate, "classical hop rate");
    cmd->add_option("--pipeline", opts.config.pipeline,
                    "exact, volterra, both, lattice-series, lattice-inversion")
        ->transform(CLI::CheckedTransformer(std::map<std::string, Pipeline>{
            {"exact", Pipeline::Exact},
            {"volterra", Pipeline::Volterra},
            {"both", Pipeline::Both},
            {"lattice-series", Pipeline::LatticeSeries},
            {"lattice-inversion", Pipeline::LatticeInversion}}));
    cmd->add_option("--tmax", opts.config.t_max, "end of the time grid");
    cmd->add_option("--step", opts.config.step, "grid step h");
    cmd->add_option("--order", opts.config.series_order, "small-time series order");
    cmd->add_option("--nodes", opts.config.inversion_nodes, "Laplace inversion nodes");
    cmd->add_option("--search-max", opts.config.search_max, "upper limit of the zero search");
    cmd->add_option("--output", opts.config.output, "output file path");
    cmd->add_option("--dump-config", opts.dump_config_path, "write the effective config here");
    cmd->add_option("--threads", opts.threads, "worker threads (default: all)");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"first-passage-time solver for tight-binding chains"};
    app.require_subcommand(1);

    CliOptions opts;

    // A config file provides the base values; explicit flags override them.
    // Pre-scan so the file is loaded before CLI11 binds the flag values.
    for (int i = 1; i + 1 < argc; ++i) {
        if (std::string(argv[i]) == "--config") {
            opts.config_path = argv[i + 1];
        }
    }
    if (!opts.config_path.empty()) {
        try {
            opts.config = RunConfig::from_file(opts.config_path);
        } catch (const SolverError& error) {
            std::cerr << "error: " << error.what() << "\n";
            return 1;
        }
    }

    CLI::App* solve = app.add_subcommand("solve", "solve one system and write CSV");
    CLI::App* compare = app.add_subcommand("compare", "run exact and volterra pipelines and diff");
    CLI::App* report = app.add_subcommand("report", "write the validity report");
    CliOptions solve_opts = opts, compare_opts = opts, report_opts = opts;
    add_common_options(solve, solve_opts);
    add_common_options(compare, compare_opts);
    add_common_options(report, report_opts);
    std::string config_path_sink;
    for (CLI::App* cmd : {solve, compare, report}) {
        cmd->add_option("--config", config_path_sink, "read base configuration from file");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    CliOptions* active = nullptr;
    int (*run)(const RunConfig&) = nullptr;
    if (solve->parsed()) {
        active = &solve_opts;
        run = cmd_solve;
    } else if (compare->parsed()) {
        active = &compare_opts;
        compare_opts.config.pipeline = Pipeline::Both;
        run = cmd_compare;
    } else {
        active = &report_opts;
        run = cmd_report;
    }

    try {
        par::set_threads(active->threads);
        if (!active->dump_config_path.empty()) {
            std::ofstream out(active->dump_config_path, std::ios::binary);
            require(out.good(), Err::InvalidConfig,
                    "cannot open dump-config file '" + active->dump_config_path + "'");
            out << active->config.to_text();
        }
        if (run == cmd_compare) {
            // compare always runs both pipelines; config validation sees the
            // chain-pipeline rules.
            active->config.pipeline = Pipeline::Both;
        }
        active->config.validate();
        return run(active->config);
    } catch (const SolverError& error) {
        std::cerr << "error: " << error.what() << "\n";
        return exit_code_for(error);
    } catch (const std::exception& error) {
        std::cerr << "error: " << error.what() << "\n";
        return 2;
    }
}
