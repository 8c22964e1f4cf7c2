#pragma once

#include <clocale>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gate/bench.hpp"
#include "gate/fit.hpp"
#include "gate/io.hpp"
#include "gate/model.hpp"

namespace gate::cli {

// Simulation presets matching the benchmark designs at desk scale.
inline bench::SimulationConfig figure_preset(const std::string& name) {
    bench::SimulationConfig cfg;
    if (name == "gate1-k1") {
        cfg.K = 1;
    } else if (name == "gate1-k2") {
        cfg.K = 2;
    } else if (name == "gate1-k3") {
        cfg.K = 3;
    } else if (name == "gate2-k3-lo") {
        cfg.K = 3;
        cfg.pi1_grid = {0.25};
        cfg.methods = {fit::Method::gate2, fit::Method::bb};
    } else if (name == "gate2-k3-hi") {
        cfg.K = 3;
        cfg.pi1_grid = {0.756};
        cfg.methods = {fit::Method::gate2, fit::Method::bb};
    } else {
        throw std::invalid_argument(
            "unknown figure preset '" + name +
            "' (known: gate1-k1, gate1-k2, gate1-k3, gate2-k3-lo, gate2-k3-hi)");
    }
    return cfg;
}

namespace detail {

struct Logger {
    bool quiet = false;
    bool json = false;

    void info(const std::string& msg) const {
        if (quiet) return;
        if (json)
            std::cerr << "{\"level\":\"info\",\"msg\":" << nlohmann::json(msg).dump() << "}\n";
        else
            std::cerr << msg << '\n';
    }
    void error(const std::string& msg) const {
        if (json)
            std::cerr << "{\"level\":\"error\",\"msg\":" << nlohmann::json(msg).dump() << "}\n";
        else
            std::cerr << "error: " << msg << '\n';
    }
};

struct GibbsCliOpts {
    std::string config_path;
    std::size_t k = 1;
    double sigma2 = 1.0;
    std::size_t iters = 20000;
    std::size_t burn_in = 10000;
    std::size_t thin = 20;
    std::size_t chains = 3;
    std::uint64_t seed = 20260816;

    void register_on(CLI::App* sub) {
        sub->add_option("--gibbs-config", config_path, "Gibbs sampler config JSON")
            ->check(CLI::ExistingFile);
        sub->add_option("--k", k, "number of alternative mixture components");
        sub->add_option("--sigma2", sigma2, "observation variance (fixed, not sampled)");
        sub->add_option("--iters", iters, "sweeps per chain");
        sub->add_option("--burn-in", burn_in, "discarded initial sweeps");
        sub->add_option("--thin", thin, "keep every thin-th sweep after burn-in");
        sub->add_option("--chains", chains, "independent chains");
        sub->add_option("--seed", seed, "master RNG seed");
    }

    // file config first, then explicit flags on top
    fit::GibbsConfig assemble(const CLI::App* sub) const {
        fit::GibbsConfig cfg;
        if (!config_path.empty())
            cfg = io::gibbs_config_from_json(io::load_json(config_path), config_path);
        if (sub->count("--k")) cfg.K = k;
        if (sub->count("--sigma2")) cfg.sigma2 = sigma2;
        if (sub->count("--iters")) cfg.iters = iters;
        if (sub->count("--burn-in")) cfg.burn_in = burn_in;
        if (sub->count("--thin")) cfg.thin = thin;
        if (sub->count("--chains")) cfg.chains = chains;
        if (sub->count("--seed")) cfg.seed = seed;
        cfg.validate();
        return cfg;
    }
};

inline int run_test(const std::string& data_path, const std::string& method_str, double alpha,
                    double eta, const std::string& params_path, const fit::GibbsConfig& gibbs,
                    const std::string& out_path, const Logger& log) {
    const auto data = io::read_grouped_csv(data_path);
    const fit::Method method = fit::method_from_name(method_str);

    std::optional<model::GammParams> oracle;
    if (!params_path.empty()) {
        oracle = io::read_params_json(params_path);
        oracle->validate(data.m());
    } else {
        log.info("no --params given, fitting the hierarchical model first (" +
                 std::to_string(gibbs.chains) + " chains x " + std::to_string(gibbs.iters) +
                 " sweeps)");
    }

    const auto res = fit::fit_then_test(data, gibbs, alpha, eta, method,
                                        oracle ? &*oracle : nullptr);
    const auto table = model::build_lfdr_table(data, res.params_used);
    const auto report = io::test_report(data, table, res.decisions, res.params_used, method,
                                        alpha, eta, !oracle);
    io::write_text_file(out_path, io::dump_json17(report));

    std::size_t groups_hit = 0;
    for (auto f : res.decisions.delta_group) groups_hit += f ? 1 : 0;
    log.info(method_str + ": rejected " + std::to_string(res.decisions.rejections()) + " of " +
             std::to_string(data.total()) + " hypotheses across " + std::to_string(groups_hit) +
             " of " + std::to_string(data.m()) + " groups; report written to " + out_path);
    return 0;
}

inline int run_fit(const std::string& data_path, const std::string& true_params_path,
                   const fit::GibbsConfig& gibbs, const std::string& out_path,
                   const std::string& trace_path, const Logger& log) {
    const auto data = io::read_grouped_csv(data_path);

    if (!true_params_path.empty()) {
        const auto params = io::read_params_json(true_params_path);
        params.validate(data.m());
        io::json echo = io::params_to_json(params);
        echo["retained"] = 0;
        io::write_text_file(out_path, io::dump_json17(echo));
        fit::GibbsConfig header_cfg = gibbs;
        header_cfg.K = params.densities.alt_weights.size();
        io::write_text_file(trace_path, io::trace_csv_string({}, header_cfg));
        log.info("true parameters echoed to " + out_path + " (no sampling)");
        return 0;
    }

    const auto chains = fit::gibbs_run(data, gibbs);
    const auto summary = fit::posterior_medians(chains);
    io::write_text_file(out_path, io::dump_json17(io::summary_to_json(summary, gibbs.sigma2)));
    io::write_text_file(trace_path, io::trace_csv_string(chains, gibbs));

    std::string mu_str;
    for (double v : summary.mu) mu_str += (mu_str.empty() ? "" : ", ") + io::fmt10(v);
    log.info("posterior medians: pi1=" + io::fmt10(summary.pi1) + " pi2=" +
             io::fmt10(summary.pi2) + " mu=[" + mu_str + "] from " +
             std::to_string(summary.retained) + " retained draws; summary " + out_path +
             ", trace " + trace_path);
    return 0;
}

inline int run_simulate(const bench::SimulationConfig& cfg, const std::string& out_base,
                        const Logger& log) {
    const auto report = bench::run_benchmark(cfg);
    io::write_text_file(out_base + ".csv", io::metrics_csv_string(report));
    io::write_text_file(out_base + ".json", io::dump_json17(io::metrics_to_json(report)));
    log.info("benchmark finished in " + io::fmt10(report.wall_clock_seconds) + " s; wrote " +
             out_base + ".csv and " + out_base + ".json");
    return 0;
}

}  // namespace detail

// Entry point shared by the binary and the test suite; args exclude argv[0].
inline int cli_main(const std::vector<std::string>& args) {
    std::setlocale(LC_NUMERIC, "C");

    CLI::App app{"Lfdr-based multiple testing for one-way grouped hypotheses"};
    app.require_subcommand(1);
    app.fallthrough();

    detail::Logger log;
    app.add_flag("--quiet", log.quiet, "suppress progress output");
    app.add_flag("--json-logs", log.json, "emit log lines as JSON objects");

    static const std::vector<std::string> method_names{"gate1", "gate2", "naive",
                                                       "sc",    "gbh",   "bb"};

    // test
    auto* test = app.add_subcommand("test", "run a testing procedure on grouped z-scores");
    std::string test_data, test_method = "gate1", test_params, test_out = "report.json";
    double test_alpha = 0.05, test_eta = 0.025;
    detail::GibbsCliOpts test_gibbs;
    test->add_option("data", test_data, "input CSV (group_id,unit_id,z)")
        ->required()
        ->check(CLI::ExistingFile);
    test->add_option("--method", test_method, "procedure to run")
        ->check(CLI::IsMember(method_names));
    test->add_option("--alpha", test_alpha, "FDR level");
    test->add_option("--eta", test_eta, "group-level FDR level (gate2 only)");
    test->add_option("--params", test_params, "model parameters JSON; omit to fit from data")
        ->check(CLI::ExistingFile);
    test->add_option("-o,--output", test_out, "report JSON path");
    test_gibbs.register_on(test);

    // fit
    auto* fitcmd = app.add_subcommand("fit", "fit the hierarchical model by Gibbs sampling");
    std::string fit_data, fit_true_params, fit_out = "summary.json", fit_trace = "trace.csv";
    detail::GibbsCliOpts fit_gibbs;
    fitcmd->add_option("data", fit_data, "input CSV (group_id,unit_id,z)")
        ->required()
        ->check(CLI::ExistingFile);
    fitcmd->add_option("--use-true-params", fit_true_params,
                       "skip sampling and echo these parameters")
        ->check(CLI::ExistingFile);
    fitcmd->add_option("-o,--output", fit_out, "summary JSON path");
    fitcmd->add_option("--trace", fit_trace, "retained-draws CSV path");
    fit_gibbs.register_on(fitcmd);

    // simulate
    auto* sim = app.add_subcommand("simulate", "run the Monte Carlo benchmark");
    std::string sim_config, sim_figure, sim_methods, sim_out = "metrics";
    std::size_t sim_m = 0, sim_n = 0, sim_k = 0, sim_reps = 0;
    double sim_alpha = 0, sim_eta = 0, sim_pi2 = 0;
    std::uint64_t sim_seed = 0;
    bool sim_data_driven = false;
    auto* sim_config_opt =
        sim->add_option("--config", sim_config, "SimulationConfig JSON")->check(CLI::ExistingFile);
    sim->add_option("--figure", sim_figure, "named preset (gate1-k{1,2,3}, gate2-k3-{lo,hi})")
        ->excludes(sim_config_opt);
    sim->add_option("--m", sim_m, "groups per replication");
    sim->add_option("--n", sim_n, "hypotheses per group");
    sim->add_option("--k", sim_k, "alternative mixture preset (1, 2 or 3 components)");
    sim->add_option("--pi2", sim_pi2, "within-group signal rate");
    sim->add_option("--alpha", sim_alpha, "FDR level");
    sim->add_option("--eta", sim_eta, "group-level FDR level for gate2");
    sim->add_option("--replications", sim_reps, "Monte Carlo replications per grid point");
    sim->add_option("--seed", sim_seed, "master RNG seed");
    sim->add_option("--methods", sim_methods, "comma-separated method list");
    sim->add_flag("--data-driven", sim_data_driven,
                  "estimate parameters per replication instead of using the truth");
    sim->add_option("-o,--output", sim_out, "output basename (writes .csv and .json)");

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("gate");
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());

        if (*test)
            return detail::run_test(test_data, test_method, test_alpha, test_eta, test_params,
                                    test_gibbs.assemble(test), test_out, log);
        if (*fitcmd)
            return detail::run_fit(fit_data, fit_true_params, fit_gibbs.assemble(fitcmd), fit_out,
                                   fit_trace, log);
        if (*sim) {
            bench::SimulationConfig cfg;
            if (!sim_figure.empty()) cfg = figure_preset(sim_figure);
            if (!sim_config.empty())
                cfg = io::sim_config_from_json(io::load_json(sim_config), sim_config);
            if (sim->count("--m")) cfg.m = sim_m;
            if (sim->count("--n")) cfg.n = sim_n;
            if (sim->count("--k")) cfg.K = sim_k;
            if (sim->count("--pi2")) cfg.pi2 = sim_pi2;
            if (sim->count("--alpha")) cfg.alpha = sim_alpha;
            if (sim->count("--eta")) cfg.eta = sim_eta;
            if (sim->count("--replications")) cfg.replications = sim_reps;
            if (sim->count("--seed")) cfg.seed = sim_seed;
            if (sim->count("--data-driven")) cfg.data_driven = sim_data_driven;
            if (sim->count("--methods")) {
                cfg.methods.clear();
                std::string cur;
                for (char c : sim_methods + ",") {
                    if (c == ',') {
                        if (!cur.empty()) cfg.methods.push_back(fit::method_from_name(cur));
                        cur.clear();
                    } else {
                        cur += c;
                    }
                }
            }
            cfg.validate();
            return detail::run_simulate(cfg, sim_out, log);
        }
        return 2;  // unreachable: a subcommand is required
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const io::ParseError& e) {
        log.error(e.what());
        return 3;
    } catch (const NumericError& e) {
        log.error(e.what());
        return 4;
    } catch (const std::invalid_argument& e) {
        log.error(e.what());
        return 2;
    } catch (const std::domain_error& e) {
        log.error(e.what());
        return 2;
    } catch (const std::exception& e) {
        log.error(e.what());
        return 4;
    }
}

inline int cli_main(int argc, const char* const* argv) {
    return cli_main(std::vector<std::string>(argv + 1, argv + argc));
}

}  // namespace gate::cli
