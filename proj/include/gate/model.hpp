#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "gate/rng.hpp"

namespace gate::model {

inline constexpr double kLogSqrt2Pi = 0.9189385332046727417803297;

// log N(x | mu, sd^2); densities are always handled in log space because
// |z| beyond ~37 underflows the direct Gaussian evaluation.
inline double log_phi(double x, double mu = 0.0, double sd = 1.0) {
    const double t = (x - mu) / sd;
    return -0.5 * t * t - std::log(sd) - kLogSqrt2Pi;
}

// Null density plus a K-component Gaussian mixture alternative with a shared
// component standard deviation.
struct DensitySpec {
    double null_mean = 0.0;
    double null_sd = 1.0;
    std::vector<double> alt_weights;
    std::vector<double> alt_means;
    double alt_sd = 1.0;

    std::size_t components() const { return alt_weights.size(); }

    void validate() const {
        if (alt_weights.empty() || alt_weights.size() != alt_means.size())
            throw std::invalid_argument("mixture needs K >= 1 weight/mean pairs");
        double sum = 0.0;
        for (double w : alt_weights) {
            if (!(w > 0.0)) throw std::invalid_argument("mixture weights must be positive");
            sum += w;
        }
        if (std::abs(sum - 1.0) > 1e-12)
            throw std::invalid_argument("mixture weights must sum to 1");
        if (!(alt_sd > 0.0) || !(null_sd > 0.0))
            throw std::invalid_argument("density standard deviations must be positive");
    }

    double log_f0(double x) const { return log_phi(x, null_mean, null_sd); }

    double log_f1(double x) const {
        // log-sum-exp over components
        double best = -std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < alt_means.size(); ++k) {
            const double t = std::log(alt_weights[k]) + log_phi(x, alt_means[k], alt_sd);
            if (t > best) best = t;
        }
        if (!std::isfinite(best)) return best;
        double acc = 0.0;
        for (std::size_t k = 0; k < alt_means.size(); ++k)
            acc += std::exp(std::log(alt_weights[k]) + log_phi(x, alt_means[k], alt_sd) - best);
        return best + std::log(acc);
    }

    double f0(double x) const { return std::exp(log_f0(x)); }
    double f1(double x) const { return std::exp(log_f1(x)); }
};

// Model parameters: group signal rate pi1, within-group signal rate pi2
// (shared scalar or one value per group), and the densities.
struct GammParams {
    double pi1 = 0.5;
    std::vector<double> pi2;  // size 1 (shared) or one per group
    DensitySpec densities;

    void validate(std::size_t m = 0) const {
        if (!(pi1 > 0.0 && pi1 < 1.0)) throw std::invalid_argument("pi1 must lie in (0,1)");
        if (pi2.empty()) throw std::invalid_argument("pi2 must have at least one entry");
        for (double p : pi2)
            if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("every pi2 must lie in (0,1)");
        if (m > 0 && pi2.size() != 1 && pi2.size() != m)
            throw std::invalid_argument("pi2 must be shared or sized to the group count");
        densities.validate();
    }

    double pi2_for(std::size_t i) const { return pi2.size() == 1 ? pi2[0] : pi2.at(i); }
};

struct Group {
    std::string id;
    std::vector<std::string> units;  // optional member labels (may be empty)
    std::vector<double> z;
};

struct GroupedObservations {
    std::vector<Group> groups;

    std::size_t m() const { return groups.size(); }
    std::size_t n(std::size_t i) const { return groups[i].z.size(); }
    std::size_t total() const {
        std::size_t t = 0;
        for (const auto& g : groups) t += g.z.size();
        return t;
    }

    void validate() const {
        if (groups.empty()) throw std::invalid_argument("need at least one group");
        for (const auto& g : groups) {
            if (g.z.empty()) throw std::invalid_argument("group '" + g.id + "' has no members");
            for (double v : g.z)
                if (!std::isfinite(v))
                    throw std::invalid_argument("non-finite statistic in group '" + g.id + "'");
        }
    }
};

struct LatentTruth {
    std::vector<std::uint8_t> theta_group;              // per group
    std::vector<std::vector<std::uint8_t>> theta_cond;  // per group, per member

    std::uint8_t theta_hyp(std::size_t i, std::size_t j) const {
        return static_cast<std::uint8_t>(theta_group[i] & theta_cond[i][j]);
    }
};

// --- TPBern: independent Bernoulli(pi) vector conditioned on at least one 1.

inline void check_tpbern_args(std::size_t n, double pi) {
    if (n == 0) throw std::invalid_argument("tpbern needs n >= 1");
    if (!(pi > 0.0 && pi < 1.0)) throw std::invalid_argument("tpbern needs pi in (0,1)");
}

inline double tpbern_pmf(const std::vector<std::uint8_t>& z, double pi) {
    check_tpbern_args(z.size(), pi);
    const std::size_t n = z.size();
    std::size_t s = 0;
    for (auto v : z) s += (v != 0);
    if (s == 0) return 0.0;
    const double log_q_n = static_cast<double>(n) * std::log1p(-pi);
    const double log_norm = std::log(-std::expm1(log_q_n));  // log(1 - (1-pi)^n)
    const double log_odds = std::log(pi) - std::log1p(-pi);
    return std::exp(log_q_n - log_norm + static_cast<double>(s) * log_odds);
}

// Count pmf of the zero-truncated Binomial(n, pi), k = 1..n.
inline std::vector<double> truncated_binomial_pmf(std::size_t n, double pi) {
    check_tpbern_args(n, pi);
    std::vector<double> pmf(n + 1, 0.0);
    const double log_q_n = static_cast<double>(n) * std::log1p(-pi);
    const double log_norm = std::log(-std::expm1(log_q_n));
    const double log_odds = std::log(pi) - std::log1p(-pi);
    double log_choose = 0.0;  // log C(n, k), built incrementally
    for (std::size_t k = 1; k <= n; ++k) {
        log_choose += std::log(static_cast<double>(n - k + 1)) - std::log(static_cast<double>(k));
        pmf[k] = std::exp(log_choose + log_q_n - log_norm + static_cast<double>(k) * log_odds);
    }
    return pmf;
}

// Draw the nonzero count by inverse CDF, then place the ones uniformly.
// Exact and O(n); rejection sampling degenerates when pi*n is small.
inline std::vector<std::uint8_t> tpbern_sample(double pi, std::size_t n, Rng& rng) {
    check_tpbern_args(n, pi);
    const std::vector<double> pmf = truncated_binomial_pmf(n, pi);
    const double u = rng.uniform();
    std::size_t count = n;
    double acc = 0.0;
    for (std::size_t k = 1; k <= n; ++k) {
        acc += pmf[k];
        if (u < acc) {
            count = k;
            break;
        }
    }
    std::vector<std::uint8_t> z(n, 0);
    // Partial Fisher-Yates over positions: pick `count` distinct slots.
    std::vector<std::size_t> pos(n);
    std::iota(pos.begin(), pos.end(), std::size_t{0});
    for (std::size_t k = 0; k < count; ++k) {
        const std::size_t j = k + rng.uniform_int(n - k);
        std::swap(pos[k], pos[j]);
        z[pos[k]] = 1;
    }
    return z;
}

// Synthetic data from the generative model: group flags Bernoulli(pi1),
// within-group signal patterns TPBern(pi2, n_i), observations from f0/f1.
inline std::pair<GroupedObservations, LatentTruth> generate_dataset(
    std::size_t m, const std::vector<std::size_t>& n, const GammParams& params, Rng& rng) {
    if (m == 0) throw std::invalid_argument("need m >= 1 groups");
    if (n.size() != 1 && n.size() != m)
        throw std::invalid_argument("group sizes must be shared or sized to m");
    params.validate(m);

    GroupedObservations data;
    LatentTruth truth;
    data.groups.resize(m);
    truth.theta_group.resize(m);
    truth.theta_cond.resize(m);

    const DensitySpec& d = params.densities;
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t ni = n.size() == 1 ? n[0] : n[i];
        if (ni == 0) throw std::invalid_argument("every group size must be >= 1");
        Group& g = data.groups[i];
        g.id = "g" + std::to_string(i + 1);
        g.z.resize(ni);

        const bool sig = rng.bernoulli(params.pi1);
        truth.theta_group[i] = sig ? 1 : 0;
        truth.theta_cond[i].assign(ni, 0);
        if (sig) truth.theta_cond[i] = tpbern_sample(params.pi2_for(i), ni, rng);

        for (std::size_t j = 0; j < ni; ++j) {
            if (sig && truth.theta_cond[i][j]) {
                const std::size_t k = rng.categorical(d.alt_weights);
                g.z[j] = rng.normal(d.alt_means[k], d.alt_sd);
            } else {
                g.z[j] = rng.normal(d.null_mean, d.null_sd);
            }
        }
    }
    return {std::move(data), std::move(truth)};
}

inline std::pair<GroupedObservations, LatentTruth> generate_dataset(
    std::size_t m, std::size_t n, const GammParams& params, Rng& rng) {
    return generate_dataset(m, std::vector<std::size_t>{n}, params, rng);
}

}  // namespace gate::model
