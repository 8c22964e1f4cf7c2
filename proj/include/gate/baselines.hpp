#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

#include "gate/lfdr.hpp"
#include "gate/procedures.hpp"

namespace gate::baselines {

using model::GammParams;
using model::GroupedObservations;
using procedures::DecisionSet;

// Two-sided tail probability of a standard normal statistic.
inline double z_to_pvalue(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("z_to_pvalue needs a finite statistic");
    return std::erfc(std::abs(x) / std::sqrt(2.0));
}

// Step-up on p-values: reject the R smallest where R is the largest rank k
// with p_(k) <= k * alpha / N. Returns the rejected original indices.
inline std::vector<std::size_t> bh(const std::vector<double>& pvalues, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0,1)");
    const std::size_t N = pvalues.size();
    const auto order = procedures::detail::ascending_order(pvalues);
    std::size_t R = 0;
    for (std::size_t k = 1; k <= N; ++k) {
        if (pvalues[order[k - 1]] <= static_cast<double>(k) * alpha / static_cast<double>(N))
            R = k;
    }
    return {order.begin(), order.begin() + R};
}

namespace detail {

// Pooled lfdr step-up shared by the naive and sc baselines: identical scan to
// the grouped pooled procedure, applied to single-mixture lfdr values.
inline DecisionSet pooled_lfdr_stepup(const GroupedObservations& data,
                                      const std::vector<double>& pooled_lfdr, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0,1)");
    DecisionSet dec;
    dec.offset.resize(data.m() + 1);
    dec.offset[0] = 0;
    for (std::size_t i = 0; i < data.m(); ++i) dec.offset[i + 1] = dec.offset[i] + data.n(i);
    dec.delta_hyp.assign(pooled_lfdr.size(), 0);

    const auto order = procedures::detail::ascending_order(pooled_lfdr);
    const std::size_t R = procedures::detail::stepup_count(pooled_lfdr, order, alpha);
    for (std::size_t k = 0; k < R; ++k) dec.delta_hyp[order[k]] = 1;
    dec.threshold_info.rejections = R;
    dec.threshold_info.cutoff = R > 0 ? pooled_lfdr[order[R - 1]] : 0.0;
    procedures::detail::derive_groups(dec, true);
    return dec;
}

inline DecisionSet from_rejected_indices(const GroupedObservations& data,
                                         const std::vector<std::size_t>& rejected) {
    DecisionSet dec;
    dec.offset.resize(data.m() + 1);
    dec.offset[0] = 0;
    for (std::size_t i = 0; i < data.m(); ++i) dec.offset[i + 1] = dec.offset[i] + data.n(i);
    dec.delta_hyp.assign(data.total(), 0);
    for (std::size_t k : rejected) dec.delta_hyp[k] = 1;
    dec.threshold_info.rejections = rejected.size();
    procedures::detail::derive_groups(dec, true);
    return dec;
}

// Weighted Simes combination per group: min_j n_i (1-pi2) p_(j) / j.
inline std::vector<double> simes_scores(const GroupedObservations& data, double pi2) {
    std::vector<double> score(data.m());
    for (std::size_t i = 0; i < data.m(); ++i) {
        std::vector<double> p;
        p.reserve(data.n(i));
        for (double z : data.groups[i].z) p.push_back(z_to_pvalue(z));
        std::sort(p.begin(), p.end());
        const double ni = static_cast<double>(p.size());
        double s = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < p.size(); ++j)
            s = std::min(s, ni * (1.0 - pi2) * p[j] / static_cast<double>(j + 1));
        score[i] = s;
    }
    return score;
}

inline std::vector<double> pooled_pvalues(const GroupedObservations& data) {
    std::vector<double> p;
    p.reserve(data.total());
    for (const auto& g : data.groups)
        for (double z : g.z) p.push_back(z_to_pvalue(z));
    return p;
}

}  // namespace detail

// Ignores grouping but uses the true per-hypothesis signal rate
// p_i = pi1 * pi2 / (1 - (1-pi2)^{n_i}); pooled lfdr step-up at alpha.
inline DecisionSet naive_method(const GroupedObservations& data, const GammParams& params,
                                double alpha) {
    data.validate();
    params.validate(data.m());
    std::vector<double> lfdr;
    lfdr.reserve(data.total());
    for (std::size_t i = 0; i < data.m(); ++i) {
        const double pi2 = params.pi2_for(i);
        const double denom = -std::expm1(static_cast<double>(data.n(i)) * std::log1p(-pi2));
        const double p = params.pi1 * pi2 / denom;
        for (double z : data.groups[i].z)
            lfdr.push_back(model::lfdr_star(z, p, params.densities));
    }
    return detail::pooled_lfdr_stepup(data, lfdr, alpha);
}

// Ignores grouping entirely: pooled lfdr step-up with signal rate pi2.
inline DecisionSet sc_method(const GroupedObservations& data, const GammParams& params,
                             double alpha) {
    data.validate();
    params.validate(data.m());
    std::vector<double> lfdr;
    lfdr.reserve(data.total());
    for (std::size_t i = 0; i < data.m(); ++i) {
        const double pi2 = params.pi2_for(i);
        for (double z : data.groups[i].z)
            lfdr.push_back(model::lfdr_star(z, pi2, params.densities));
    }
    return detail::pooled_lfdr_stepup(data, lfdr, alpha);
}

// Weighted-p-value step-up: p^w = (1-pi2) p capped at 1, then the p-value
// step-up at alpha over the pool. pi2 in [0,1); 0 reduces to the unweighted scan.
inline DecisionSet gbh_method(const GroupedObservations& data, double pi2, double alpha) {
    data.validate();
    if (!(pi2 >= 0.0 && pi2 < 1.0)) throw std::invalid_argument("pi2 must lie in [0,1)");
    std::vector<double> pw = detail::pooled_pvalues(data);
    for (double& p : pw) p = std::min(1.0, (1.0 - pi2) * p);
    return detail::from_rejected_indices(data, bh(pw, alpha));
}

inline DecisionSet gbh_method(const GroupedObservations& data, const GammParams& params,
                              double alpha) {
    params.validate(data.m());
    if (params.pi2.size() != 1)
        throw std::invalid_argument("this baseline needs a shared pi2");
    return gbh_method(data, params.pi2[0], alpha);
}

// Two-stage group combination: a weighted min-scan score per group,
// a p-value step-up over the group scores, then a per-group step-up whose
// thresholds scale with the number of surviving groups. pi1, pi2 in [0,1).
inline DecisionSet bb_method(const GroupedObservations& data, double pi1, double pi2,
                             double alpha) {
    data.validate();
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0,1)");
    if (!(pi1 >= 0.0 && pi1 < 1.0) || !(pi2 >= 0.0 && pi2 < 1.0))
        throw std::invalid_argument("pi1 and pi2 must lie in [0,1)");

    const std::size_t m = data.m();
    std::vector<std::vector<double>> sorted_p(m);
    for (std::size_t i = 0; i < m; ++i) {
        sorted_p[i].reserve(data.n(i));
        for (double z : data.groups[i].z) sorted_p[i].push_back(z_to_pvalue(z));
        std::sort(sorted_p[i].begin(), sorted_p[i].end());
    }
    const std::vector<double> score = detail::simes_scores(data, pi2);

    std::vector<double> weighted(m);
    for (std::size_t i = 0; i < m; ++i) weighted[i] = (1.0 - pi1) * score[i];
    const std::vector<std::size_t> G = bh(weighted, alpha);

    DecisionSet dec;
    dec.offset.resize(m + 1);
    dec.offset[0] = 0;
    for (std::size_t i = 0; i < m; ++i) dec.offset[i + 1] = dec.offset[i] + data.n(i);
    dec.delta_hyp.assign(data.total(), 0);
    dec.selected_groups = G;
    std::sort(dec.selected_groups.begin(), dec.selected_groups.end());

    std::size_t total = 0;
    for (std::size_t i : dec.selected_groups) {
        const std::size_t ni = data.n(i);
        std::size_t Ri = 0;
        for (std::size_t j = 1; j <= ni; ++j) {
            const double thr = static_cast<double>(j) * static_cast<double>(G.size()) * alpha /
                               (static_cast<double>(m) * static_cast<double>(ni));
            if ((1.0 - pi1 * pi2) * sorted_p[i][j - 1] <= thr) Ri = j;
        }
        if (Ri > 0) {
            // reject the Ri smallest p-values, ties kept in member order
            std::vector<double> p;
            p.reserve(ni);
            for (double z : data.groups[i].z) p.push_back(z_to_pvalue(z));
            const auto order = procedures::detail::ascending_order(p);
            for (std::size_t k = 0; k < Ri; ++k) dec.delta_hyp[dec.offset[i] + order[k]] = 1;
            total += Ri;
        }
    }
    dec.threshold_info.rejections = total;
    procedures::detail::derive_groups(dec, false);
    return dec;
}

inline DecisionSet bb_method(const GroupedObservations& data, const GammParams& params,
                             double alpha) {
    params.validate(data.m());
    if (params.pi2.size() != 1)
        throw std::invalid_argument("this baseline needs a shared pi2");
    return bb_method(data, params.pi1, params.pi2[0], alpha);
}

}  // namespace gate::baselines
