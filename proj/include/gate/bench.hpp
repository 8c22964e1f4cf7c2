#pragma once

#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "gate/baselines.hpp"
#include "gate/fit.hpp"
#include "gate/lfdr.hpp"
#include "gate/model.hpp"
#include "gate/parallel.hpp"
#include "gate/procedures.hpp"

namespace gate::bench {

using fit::Method;

// Canonical alternative-mixture presets used by the simulation designs.
inline std::pair<std::vector<double>, std::vector<double>> mixture_preset(std::size_t K) {
    switch (K) {
        case 1: return {{1.0}, {2.0}};
        case 2: return {{0.4, 0.6}, {-2.0, 2.5}};
        case 3: return {{0.4, 0.4, 0.2}, {-2.0, 2.0, 3.5}};
        default: throw std::invalid_argument("mixture presets exist for K in {1,2,3}");
    }
}

inline std::vector<double> lambda_grid(const std::vector<double>& pi1_grid, double pi2,
                                       std::size_t n) {
    std::vector<double> out;
    out.reserve(pi1_grid.size());
    for (double p : pi1_grid) out.push_back(model::lambda_group(p, pi2, n));
    return out;
}

inline std::vector<double> equispaced(double lo, double hi, std::size_t count) {
    if (count == 0) throw std::invalid_argument("grid needs at least one point");
    std::vector<double> g(count);
    if (count == 1) {
        g[0] = lo;
        return g;
    }
    for (std::size_t i = 0; i < count; ++i)
        g[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
    return g;
}

struct SimulationConfig {
    std::size_t m = 200;
    std::size_t n = 10;
    std::vector<double> pi1_grid = equispaced(0.05, 0.95, 10);
    double pi2 = 0.3;
    std::size_t K = 1;
    double alpha = 0.05;
    double eta = 0.025;
    std::size_t replications = 200;
    std::vector<Method> methods{Method::gate1, Method::naive, Method::sc, Method::gbh};
    std::uint64_t seed = 20260816;
    bool data_driven = false;
    fit::GibbsConfig gibbs;  // used only by data-driven runs

    SimulationConfig() {
        // reduced per-replication estimation budget for benchmark cells
        gibbs.iters = 2000;
        gibbs.burn_in = 1000;
        gibbs.thin = 5;
        gibbs.chains = 1;
    }

    void validate() const {
        if (m == 0 || n == 0) throw std::invalid_argument("m and n must be >= 1");
        if (pi1_grid.empty()) throw std::invalid_argument("pi1 grid must be nonempty");
        for (double p : pi1_grid)
            if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("pi1 grid values in (0,1)");
        if (!(pi2 > 0.0 && pi2 < 1.0)) throw std::invalid_argument("pi2 in (0,1)");
        if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha in (0,1)");
        if (!(eta > 0.0 && eta < 1.0)) throw std::invalid_argument("eta in (0,1)");
        if (replications == 0) throw std::invalid_argument("replications must be >= 1");
        if (methods.empty()) throw std::invalid_argument("method list must be nonempty");
        mixture_preset(K);
    }

    model::GammParams params_at(double pi1) const {
        model::GammParams p;
        p.pi1 = pi1;
        p.pi2 = {pi2};
        auto [w, mu] = mixture_preset(K);
        p.densities.alt_weights = std::move(w);
        p.densities.alt_means = std::move(mu);
        p.densities.alt_sd = 1.0;
        return p;
    }
};

struct MetricsCell {
    std::string method;
    double pi1 = 0.0;
    double lambda = 0.0;
    double bayes_fdr = 0.0;  // mean posterior FDR (total, or selective for the two-stage methods)
    double freq_fdr = 0.0;   // mean realized false discovery proportion against the latent truth
    double mean_rejections = 0.0;
    double mean_true_rejections = 0.0;
    double pfdr_between_mean = 0.0;  // mean group-level posterior FDR
    double mcse_bayes_fdr = 0.0;
    double mcse_freq_fdr = 0.0;
    double mcse_rejections = 0.0;
    double mcse_true_rejections = 0.0;
    std::size_t replications = 0;
};

struct MetricsReport {
    SimulationConfig config;
    std::vector<MetricsCell> cells;  // grid-major, then method, fixed order
    double wall_clock_seconds = 0.0; // never serialized into report files
};

namespace detail {

struct Accum {
    double bayes = 0, freq = 0, rej = 0, truerej = 0, between = 0;
};

struct MeanSd {
    double mean = 0, mcse = 0;
};

inline MeanSd mean_mcse(const std::vector<double>& v) {
    MeanSd r;
    const double n = static_cast<double>(v.size());
    for (double x : v) r.mean += x;
    r.mean /= n;
    if (v.size() > 1) {
        double ss = 0;
        for (double x : v) ss += (x - r.mean) * (x - r.mean);
        r.mcse = std::sqrt(ss / (n - 1.0) / n);
    }
    return r;
}

}  // namespace detail

// Monte Carlo benchmark: per grid point and replication, generate data, run
// every configured method, and score decisions against the latent truth and
// against the posterior table at the true parameters. Replications run
// concurrently into per-replication slots; the reduction is a fixed-order
// sum, so results do not depend on scheduling.
inline MetricsReport run_benchmark(const SimulationConfig& cfg) {
    cfg.validate();
    const auto t0 = std::chrono::steady_clock::now();

    MetricsReport report;
    report.config = cfg;

    const std::size_t M = cfg.methods.size();
    for (std::size_t gp = 0; gp < cfg.pi1_grid.size(); ++gp) {
        const double pi1 = cfg.pi1_grid[gp];
        const model::GammParams truth_params = cfg.params_at(pi1);

        std::vector<std::vector<detail::Accum>> slots(cfg.replications,
                                                      std::vector<detail::Accum>(M));
        parallel_for(cfg.replications, [&](std::size_t rep) {
            Rng rng(derive_seed(cfg.seed, gp, rep));
            auto [data, truth] = model::generate_dataset(cfg.m, cfg.n, truth_params, rng);
            const model::LfdrTable table = model::build_lfdr_table(data, truth_params);

            model::GammParams run_params = truth_params;
            if (cfg.data_driven) {
                fit::GibbsConfig gc = cfg.gibbs;
                gc.K = cfg.K;
                gc.seed = derive_seed(cfg.seed, gp, rep, 0xf17);
                run_params = fit::params_from_summary(
                    fit::posterior_medians(fit::gibbs_run(data, gc)), gc.sigma2);
            }

            for (std::size_t mi = 0; mi < M; ++mi) {
                const Method method = cfg.methods[mi];
                const procedures::DecisionSet dec =
                    fit::dispatch_method(method, data, run_params, cfg.alpha, cfg.eta);

                detail::Accum& a = slots[rep][mi];
                const bool selective = method == Method::gate2 || method == Method::bb;
                a.bayes = selective ? procedures::pfdr_selective(dec, table)
                                    : procedures::pfdr_total(dec, table);
                a.between = procedures::pfdr_between(dec, table);

                std::size_t R = 0, V = 0;
                std::size_t flat = 0;
                for (std::size_t i = 0; i < data.m(); ++i) {
                    for (std::size_t j = 0; j < data.n(i); ++j, ++flat) {
                        if (dec.delta_hyp[flat]) {
                            ++R;
                            if (!truth.theta_hyp(i, j)) ++V;
                        }
                    }
                }
                a.rej = static_cast<double>(R);
                a.truerej = static_cast<double>(R - V);
                a.freq = R > 0 ? static_cast<double>(V) / static_cast<double>(R) : 0.0;
            }
        });

        for (std::size_t mi = 0; mi < M; ++mi) {
            std::vector<double> bayes, freq, rej, truerej, between;
            bayes.reserve(cfg.replications);
            for (std::size_t rep = 0; rep < cfg.replications; ++rep) {
                bayes.push_back(slots[rep][mi].bayes);
                freq.push_back(slots[rep][mi].freq);
                rej.push_back(slots[rep][mi].rej);
                truerej.push_back(slots[rep][mi].truerej);
                between.push_back(slots[rep][mi].between);
            }
            MetricsCell cell;
            cell.method = fit::method_name(cfg.methods[mi]);
            cell.pi1 = pi1;
            cell.lambda = model::lambda_group(pi1, cfg.pi2, cfg.n);
            const auto b = detail::mean_mcse(bayes);
            const auto f = detail::mean_mcse(freq);
            const auto r = detail::mean_mcse(rej);
            const auto t = detail::mean_mcse(truerej);
            cell.bayes_fdr = b.mean;
            cell.mcse_bayes_fdr = b.mcse;
            cell.freq_fdr = f.mean;
            cell.mcse_freq_fdr = f.mcse;
            cell.mean_rejections = r.mean;
            cell.mcse_rejections = r.mcse;
            cell.mean_true_rejections = t.mean;
            cell.mcse_true_rejections = t.mcse;
            cell.pfdr_between_mean = detail::mean_mcse(between).mean;
            cell.replications = cfg.replications;
            report.cells.push_back(std::move(cell));
        }
    }

    report.wall_clock_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

}  // namespace gate::bench
