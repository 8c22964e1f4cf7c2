#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "gate/baselines.hpp"
#include "gate/lfdr.hpp"
#include "gate/model.hpp"
#include "gate/parallel.hpp"
#include "gate/procedures.hpp"
#include "gate/rng.hpp"

namespace gate::fit {

using model::GammParams;
using model::GroupedObservations;
using procedures::DecisionSet;

struct GibbsConfig {
    std::size_t K = 1;
    double sigma2 = 1.0;  // component variance, fixed
    double a1 = 1.0, b1 = 1.0;  // Beta prior on pi1
    double a2 = 1.0, b2 = 1.0;  // Beta prior on pi2
    std::vector<double> dirichlet;  // Dirichlet prior on weights; empty = all 1
    double sigma_mu2 = 100.0;       // prior variance of component means
    std::size_t iters = 20000;
    std::size_t burn_in = 10000;
    std::size_t thin = 20;
    std::size_t chains = 3;
    std::uint64_t seed = 1;

    void validate() const {
        if (K == 0) throw std::invalid_argument("K must be >= 1");
        if (!(sigma2 > 0.0) || !(sigma_mu2 > 0.0))
            throw std::invalid_argument("variances must be positive");
        if (!(a1 > 0.0 && b1 > 0.0 && a2 > 0.0 && b2 > 0.0))
            throw std::invalid_argument("Beta hyperparameters must be positive");
        if (!dirichlet.empty()) {
            if (dirichlet.size() != K)
                throw std::invalid_argument("Dirichlet prior must have K entries");
            for (double d : dirichlet)
                if (!(d > 0.0)) throw std::invalid_argument("Dirichlet entries must be positive");
        }
        if (burn_in >= iters) throw std::invalid_argument("burn_in must be below iters");
        if (thin == 0) throw std::invalid_argument("thin must be >= 1");
        if (chains == 0) throw std::invalid_argument("chains must be >= 1");
    }

    double dirichlet_at(std::size_t k) const { return dirichlet.empty() ? 1.0 : dirichlet[k]; }
};

struct GibbsState {
    std::vector<std::uint8_t> theta_group;  // per group
    std::vector<std::uint8_t> theta_cond;   // flat, per hypothesis
    std::vector<std::uint32_t> labels;      // flat, mixture component per hypothesis
    double pi1 = 0.5;
    double pi2 = 0.5;
    std::vector<double> eta;  // mixture weights
    std::vector<double> mu;   // component means
};

struct ParamDraw {
    double pi1;
    double pi2;
    std::vector<double> eta;
    std::vector<double> mu;
};

struct PosteriorSummary {
    double pi1 = 0.0;
    double pi2 = 0.0;
    std::vector<double> eta;
    std::vector<double> mu;
    std::size_t retained = 0;           // pooled retained draws
    std::vector<double> chain_spread;   // per parameter: max - min of chain medians
};

// --- Conjugate updates, split out so fixed latent states can be checked exactly.

struct BetaParams {
    double a, b;
};

inline BetaParams pi1_posterior(const GibbsConfig& cfg, std::size_t sum_theta_group,
                                std::size_t m) {
    return {cfg.a1 + static_cast<double>(sum_theta_group),
            cfg.b1 + static_cast<double>(m - sum_theta_group)};
}

// s_on / s_off: member indicators on/off summed over significant groups only.
inline BetaParams pi2_posterior(const GibbsConfig& cfg, std::size_t s_on, std::size_t s_off) {
    return {cfg.a2 + static_cast<double>(s_on), cfg.b2 + static_cast<double>(s_off)};
}

struct NormalParams {
    double mean, var;
};

// Flat-prior conditional for one component mean given its assigned signal
// observations; the prior only enters through the zero-count fallback.
inline NormalParams mu_posterior(const GibbsConfig& cfg, double sum_x, std::size_t count) {
    if (count == 0) return {0.0, cfg.sigma_mu2};
    return {sum_x / static_cast<double>(count), cfg.sigma2 / static_cast<double>(count)};
}

inline std::vector<double> eta_posterior(const GibbsConfig& cfg,
                                         const std::vector<std::uint32_t>& counts) {
    std::vector<double> a(counts.size());
    for (std::size_t k = 0; k < counts.size(); ++k)
        a[k] = cfg.dirichlet_at(k) + static_cast<double>(counts[k]);
    return a;
}

namespace detail {

inline model::DensitySpec density_from_state(const GibbsState& st, const GibbsConfig& cfg) {
    model::DensitySpec d;
    d.alt_weights = st.eta;
    d.alt_means = st.mu;
    d.alt_sd = std::sqrt(cfg.sigma2);
    return d;
}

struct GroupPosterior {
    double lfdr_group;
    std::vector<double> lfdr_cond;
};

// Group and conditional lfdrs at the current parameter values; shared by the
// sampling steps and the sampling-frequency property tests.
inline GroupPosterior group_posterior(const std::vector<double>& z, double pi1, double pi2,
                                      const model::DensitySpec& d) {
    const std::size_t n = z.size();
    GroupPosterior out;
    out.lfdr_cond.resize(n);
    std::vector<double> ls(n);
    double log_sum = 0.0;
    bool exact_zero = false;
    for (std::size_t j = 0; j < n; ++j) {
        ls[j] = model::lfdr_star(z[j], pi2, d);
        if (ls[j] == 0.0)
            exact_zero = true;
        else
            log_sum += std::log(ls[j]);
    }
    double L, one_minus_L;
    if (exact_zero) {
        L = 0.0;
        one_minus_L = 1.0;
    } else {
        L = std::exp(log_sum);
        one_minus_L = -std::expm1(log_sum);
    }
    const double lam = model::lambda_group(pi1, pi2, n);
    out.lfdr_group = (L <= 0.0) ? 0.0 : L / (L + lam * one_minus_L);
    const bool degenerate = one_minus_L < 1e-15;
    for (std::size_t j = 0; j < n; ++j) {
        out.lfdr_cond[j] =
            (degenerate || n == 1) ? 0.0 : std::clamp((ls[j] - L) / one_minus_L, 0.0, 1.0);
    }
    if (!std::isfinite(out.lfdr_group)) throw NumericError("non-finite group lfdr in sweep");
    return out;
}

}  // namespace detail

// One full sweep: group flags, member flags with the all-zero repair, the two
// Beta draws, component labels for every observation, component means from
// signal-assigned observations only, then the weight vector.
inline GibbsState gibbs_sweep(GibbsState st, const GroupedObservations& data,
                              const GibbsConfig& cfg, Rng& rng) {
    const std::size_t m = data.m();
    const model::DensitySpec d = detail::density_from_state(st, cfg);

    // (1) group flags
    std::vector<detail::GroupPosterior> post(m);
    for (std::size_t i = 0; i < m; ++i)
        post[i] = detail::group_posterior(data.groups[i].z, st.pi1, st.pi2, d);
    for (std::size_t i = 0; i < m; ++i)
        st.theta_group[i] = rng.bernoulli(1.0 - post[i].lfdr_group) ? 1 : 0;

    // (2) member flags within significant groups; keep at least one on
    std::size_t flat = 0;
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t ni = data.n(i);
        if (st.theta_group[i]) {
            bool any = false;
            for (std::size_t j = 0; j < ni; ++j) {
                const bool on = rng.bernoulli(1.0 - post[i].lfdr_cond[j]);
                st.theta_cond[flat + j] = on ? 1 : 0;
                any = any || on;
            }
            if (!any) {
                std::size_t best = 0;
                for (std::size_t j = 1; j < ni; ++j)
                    if (post[i].lfdr_cond[j] < post[i].lfdr_cond[best]) best = j;
                st.theta_cond[flat + best] = 1;
            }
        }
        flat += ni;
    }

    // (3) signal rates
    std::size_t sum_g = 0;
    for (auto v : st.theta_group) sum_g += (v != 0);
    std::size_t s_on = 0, s_off = 0;
    flat = 0;
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t ni = data.n(i);
        if (st.theta_group[i]) {
            for (std::size_t j = 0; j < ni; ++j)
                (st.theta_cond[flat + j] ? s_on : s_off) += 1;
        }
        flat += ni;
    }
    const BetaParams bp1 = pi1_posterior(cfg, sum_g, m);
    st.pi1 = rng.beta(bp1.a, bp1.b);
    const BetaParams bp2 = pi2_posterior(cfg, s_on, s_off);
    st.pi2 = rng.beta(bp2.a, bp2.b);

    // (4) component labels for every observation
    const double sd = std::sqrt(cfg.sigma2);
    std::vector<double> w(cfg.K);
    flat = 0;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < data.n(i); ++j, ++flat) {
            const double x = data.groups[i].z[j];
            double best = -std::numeric_limits<double>::infinity();
            for (std::size_t k = 0; k < cfg.K; ++k) {
                w[k] = std::log(st.eta[k]) + model::log_phi(x, st.mu[k], sd);
                best = std::max(best, w[k]);
            }
            if (!std::isfinite(best)) throw NumericError("non-finite label weights in sweep");
            for (std::size_t k = 0; k < cfg.K; ++k) w[k] = std::exp(w[k] - best);
            st.labels[flat] = static_cast<std::uint32_t>(rng.categorical(w));
        }
    }

    // (5)-(6) component means and weights from signal-assigned observations
    std::vector<double> sum_x(cfg.K, 0.0);
    std::vector<std::uint32_t> counts(cfg.K, 0);
    flat = 0;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < data.n(i); ++j, ++flat) {
            if (st.theta_group[i] && st.theta_cond[flat]) {
                sum_x[st.labels[flat]] += data.groups[i].z[j];
                counts[st.labels[flat]] += 1;
            }
        }
    }
    for (std::size_t k = 0; k < cfg.K; ++k) {
        const NormalParams np = mu_posterior(cfg, sum_x[k], counts[k]);
        st.mu[k] = rng.normal(np.mean, std::sqrt(np.var));
    }
    st.eta = rng.dirichlet(eta_posterior(cfg, counts));
    return st;
}

// Starting state: rates from their priors, means spread over the data's
// extreme quantiles (chain index shifts them so starts are over-dispersed),
// uniform weights, latent flags from one pass of steps 1 and 2.
inline GibbsState gibbs_init(const GroupedObservations& data, const GibbsConfig& cfg,
                             std::size_t chain, Rng& rng) {
    GibbsState st;
    const std::size_t m = data.m();
    st.theta_group.assign(m, 0);
    st.theta_cond.assign(data.total(), 0);
    st.labels.assign(data.total(), 0);
    st.pi1 = rng.beta(cfg.a1, cfg.b1);
    st.pi2 = rng.beta(cfg.a2, cfg.b2);
    st.eta.assign(cfg.K, 1.0 / static_cast<double>(cfg.K));

    std::vector<double> extreme;
    for (const auto& g : data.groups)
        for (double z : g.z)
            if (std::abs(z) > 2.0) extreme.push_back(z);
    if (extreme.size() < cfg.K) {
        extreme.clear();
        for (const auto& g : data.groups) extreme.insert(extreme.end(), g.z.begin(), g.z.end());
    }
    std::sort(extreme.begin(), extreme.end());
    st.mu.resize(cfg.K);
    for (std::size_t k = 0; k < cfg.K; ++k) {
        const double q = (static_cast<double>(k) + 0.5) / static_cast<double>(cfg.K);
        const std::size_t idx = std::min(extreme.size() - 1,
                                         static_cast<std::size_t>(q * extreme.size()));
        st.mu[k] = extreme[idx];
    }
    // chain 0 starts at the quantile spread, later chains shift by +-1, +-2, ...
    if (chain > 0) {
        const double shift = (chain % 2 == 1) ? static_cast<double>((chain + 1) / 2)
                                              : -static_cast<double>(chain / 2);
        for (double& v : st.mu) v += shift;
    }

    const model::DensitySpec d = detail::density_from_state(st, cfg);
    std::size_t flat = 0;
    for (std::size_t i = 0; i < m; ++i) {
        const auto post = detail::group_posterior(data.groups[i].z, st.pi1, st.pi2, d);
        st.theta_group[i] = rng.bernoulli(1.0 - post.lfdr_group) ? 1 : 0;
        const std::size_t ni = data.n(i);
        if (st.theta_group[i]) {
            bool any = false;
            for (std::size_t j = 0; j < ni; ++j) {
                const bool on = rng.bernoulli(1.0 - post.lfdr_cond[j]);
                st.theta_cond[flat + j] = on ? 1 : 0;
                any = any || on;
            }
            if (!any) {
                std::size_t best = 0;
                for (std::size_t j = 1; j < ni; ++j)
                    if (post.lfdr_cond[j] < post.lfdr_cond[best]) best = j;
                st.theta_cond[flat + best] = 1;
            }
        }
        flat += ni;
    }
    return st;
}

// Independent chains, each retaining (iters - burn_in) / thin parameter draws.
inline std::vector<std::vector<ParamDraw>> gibbs_run(const GroupedObservations& data,
                                                     const GibbsConfig& cfg) {
    data.validate();
    cfg.validate();
    std::vector<std::vector<ParamDraw>> chains(cfg.chains);
    parallel_for(cfg.chains, [&](std::size_t c) {
        Rng rng(derive_seed(cfg.seed, 0x9169, c));
        GibbsState st = gibbs_init(data, cfg, c, rng);
        auto& out = chains[c];
        out.reserve((cfg.iters - cfg.burn_in) / cfg.thin);
        for (std::size_t t = 1; t <= cfg.iters; ++t) {
            try {
                st = gibbs_sweep(std::move(st), data, cfg, rng);
            } catch (const NumericError& e) {
                throw NumericError("chain " + std::to_string(c) + " sweep " + std::to_string(t) +
                                   ": " + e.what());
            }
            if (t > cfg.burn_in && (t - cfg.burn_in) % cfg.thin == 0)
                out.push_back({st.pi1, st.pi2, st.eta, st.mu});
        }
    });
    return chains;
}

namespace detail {

inline double median(std::vector<double> v) {
    if (v.empty()) throw std::invalid_argument("median of nothing");
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// Sort each draw's components by mean so label switching across sweeps and
// chains cannot scramble the per-component medians.
inline ParamDraw aligned(const ParamDraw& d) {
    ParamDraw out = d;
    std::vector<std::size_t> order(d.mu.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return d.mu[a] < d.mu[b]; });
    for (std::size_t k = 0; k < order.size(); ++k) {
        out.mu[k] = d.mu[order[k]];
        out.eta[k] = d.eta[order[k]];
    }
    return out;
}

}  // namespace detail

inline PosteriorSummary posterior_medians(const std::vector<std::vector<ParamDraw>>& chains) {
    std::size_t total = 0;
    for (const auto& c : chains) total += c.size();
    if (total == 0) throw std::invalid_argument("no retained draws to summarize");
    std::size_t K = 0;
    for (const auto& c : chains)
        if (!c.empty()) {
            K = c.front().mu.size();
            break;
        }

    // parameter layout: pi1, pi2, eta_1..K, mu_1..K
    const std::size_t P = 2 + 2 * K;
    std::vector<std::vector<double>> pooled(P);
    std::vector<std::vector<double>> chain_medians(P);
    for (auto& v : pooled) v.reserve(total);

    for (const auto& chain : chains) {
        std::vector<std::vector<double>> per(P);
        for (const auto& draw : chain) {
            const ParamDraw a = detail::aligned(draw);
            per[0].push_back(a.pi1);
            per[1].push_back(a.pi2);
            for (std::size_t k = 0; k < K; ++k) {
                per[2 + k].push_back(a.eta[k]);
                per[2 + K + k].push_back(a.mu[k]);
            }
        }
        for (std::size_t p = 0; p < P; ++p) {
            if (!per[p].empty()) chain_medians[p].push_back(detail::median(per[p]));
            pooled[p].insert(pooled[p].end(), per[p].begin(), per[p].end());
        }
    }

    PosteriorSummary s;
    s.pi1 = detail::median(pooled[0]);
    s.pi2 = detail::median(pooled[1]);
    s.eta.resize(K);
    s.mu.resize(K);
    for (std::size_t k = 0; k < K; ++k) {
        s.eta[k] = detail::median(pooled[2 + k]);
        s.mu[k] = detail::median(pooled[2 + K + k]);
    }
    s.retained = total;
    s.chain_spread.resize(P, 0.0);
    for (std::size_t p = 0; p < P; ++p) {
        const auto& cm = chain_medians[p];
        if (cm.size() > 1) {
            const auto [lo, hi] = std::minmax_element(cm.begin(), cm.end());
            s.chain_spread[p] = *hi - *lo;
        }
    }
    return s;
}

inline GammParams params_from_summary(const PosteriorSummary& s, double sigma2) {
    GammParams p;
    p.pi1 = s.pi1;
    p.pi2 = {s.pi2};
    p.densities.alt_weights = s.eta;
    p.densities.alt_means = s.mu;
    p.densities.alt_sd = std::sqrt(sigma2);
    // medians of simplex draws need not sum to 1 exactly; renormalize
    double sum = 0.0;
    for (double w : p.densities.alt_weights) sum += w;
    if (!(sum > 0.0)) throw NumericError("degenerate posterior weight medians");
    for (double& w : p.densities.alt_weights) w /= sum;
    return p;
}

enum class Method { gate1, gate2, naive, sc, gbh, bb };

inline const char* method_name(Method m) {
    switch (m) {
        case Method::gate1: return "gate1";
        case Method::gate2: return "gate2";
        case Method::naive: return "naive";
        case Method::sc: return "sc";
        case Method::gbh: return "gbh";
        case Method::bb: return "bb";
    }
    return "?";
}

inline Method method_from_name(const std::string& name) {
    if (name == "gate1") return Method::gate1;
    if (name == "gate2") return Method::gate2;
    if (name == "naive") return Method::naive;
    if (name == "sc") return Method::sc;
    if (name == "gbh") return Method::gbh;
    if (name == "bb") return Method::bb;
    throw std::invalid_argument("unknown method '" + name + "'");
}

inline DecisionSet dispatch_method(Method method, const GroupedObservations& data,
                                   const GammParams& params, double alpha, double eta) {
    switch (method) {
        case Method::gate1: return procedures::gate1(model::build_lfdr_table(data, params), alpha);
        case Method::gate2: return procedures::gate2(model::build_lfdr_table(data, params), alpha, eta);
        case Method::naive: return baselines::naive_method(data, params, alpha);
        case Method::sc: return baselines::sc_method(data, params, alpha);
        case Method::gbh: return baselines::gbh_method(data, params, alpha);
        case Method::bb: return baselines::bb_method(data, params, alpha);
    }
    throw std::logic_error("unreachable");
}

struct FitTestResult {
    DecisionSet decisions;
    PosteriorSummary summary;  // retained == 0 when true parameters were supplied
    GammParams params_used;
};

// Estimate parameters by MCMC (or accept supplied ones), then run the chosen
// procedure at the resulting parameter values.
inline FitTestResult fit_then_test(const GroupedObservations& data, const GibbsConfig& cfg,
                                   double alpha, double eta, Method method,
                                   const GammParams* true_params = nullptr) {
    FitTestResult res;
    if (true_params) {
        res.params_used = *true_params;
        res.summary.pi1 = true_params->pi1;
        res.summary.pi2 = true_params->pi2.empty() ? 0.0 : true_params->pi2[0];
        res.summary.eta = true_params->densities.alt_weights;
        res.summary.mu = true_params->densities.alt_means;
    } else {
        res.summary = posterior_medians(gibbs_run(data, cfg));
        res.params_used = params_from_summary(res.summary, cfg.sigma2);
    }
    res.decisions = dispatch_method(method, data, res.params_used, alpha, eta);
    return res;
}

}  // namespace gate::fit
