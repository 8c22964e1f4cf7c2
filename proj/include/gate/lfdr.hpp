#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "gate/model.hpp"

namespace gate::model {

// Local fdr of a single statistic under the plain two-class mixture:
// (1-pi2) f0(x) / [(1-pi2) f0(x) + pi2 f1(x)], evaluated through log densities.
inline double lfdr_star(double x, double pi2, const DensitySpec& d) {
    if (!std::isfinite(x)) throw std::invalid_argument("lfdr_star needs a finite statistic");
    if (!(pi2 > 0.0 && pi2 < 1.0)) throw std::invalid_argument("pi2 must lie in (0,1)");
    const double la = std::log1p(-pi2) + d.log_f0(x);
    const double lb = std::log(pi2) + d.log_f1(x);
    return 1.0 / (1.0 + std::exp(lb - la));
}

// Group effect multiplier on the posterior odds of group significance:
// [pi1/(1-pi1)] * [(1-pi2)^n / (1-(1-pi2)^n)], log space for large n.
inline double lambda_group(double pi1, double pi2, std::size_t n) {
    if (!(pi1 > 0.0 && pi1 < 1.0)) throw std::invalid_argument("pi1 must lie in (0,1)");
    if (!(pi2 > 0.0 && pi2 < 1.0)) throw std::invalid_argument("pi2 must lie in (0,1)");
    if (n == 0) throw std::invalid_argument("n must be >= 1");
    const double log_q_n = static_cast<double>(n) * std::log1p(-pi2);
    const double log_lambda =
        std::log(pi1) - std::log1p(-pi1) + log_q_n - std::log(-std::expm1(log_q_n));
    return std::exp(log_lambda);
}

// Group-level lfdr from the product L of the group's plain lfdrs: L/(L + lambda(1-L)).
inline double lfdr_group(double lfdr_star_group, double lambda) {
    if (lfdr_star_group <= 0.0) return 0.0;  // some member is certainly signal
    const double one_minus = 1.0 - lfdr_star_group;
    return lfdr_star_group / (lfdr_star_group + lambda * one_minus);
}

// Conditional lfdr of a member given its group is significant.
// Degenerate at lfdr_star_group == 1: the conditioning event has no mass.
inline double lfdr_cond(double lfdr_star_ij, double lfdr_star_group) {
    const double one_minus = 1.0 - lfdr_star_group;
    if (one_minus < 1e-15)
        throw std::domain_error("conditional lfdr undefined for an all-null-saturated group");
    const double c = (lfdr_star_ij - lfdr_star_group) / one_minus;
    return std::clamp(c, 0.0, 1.0);
}

// Hypothesis-level lfdr from the group/conditional split.
inline double lfdr_hypothesis(double lfdr_group_i, double lfdr_cond_ij) {
    return 1.0 - (1.0 - lfdr_group_i) * (1.0 - lfdr_cond_ij);
}

// Same quantity computed directly from the plain lfdrs and lambda; kept as an
// independent route so the two forms can be cross-checked.
inline double lfdr_hypothesis_direct(double lfdr_star_ij, double lfdr_star_group, double lambda) {
    const double denom = lambda + (1.0 - lambda) * lfdr_star_group;
    return 1.0 - lambda * (1.0 - lfdr_star_ij) / denom;
}

// Per-hypothesis and per-group lfdr quantities, flat storage with group offsets.
struct LfdrTable {
    std::vector<std::size_t> offset;  // size m+1, offset[i]..offset[i+1] spans group i
    std::vector<double> lfdr_star;    // plain two-class lfdr per hypothesis
    std::vector<double> lfdr_cond;    // conditional lfdr per hypothesis
    std::vector<double> lfdr_hyp;     // hypothesis lfdr per hypothesis
    std::vector<double> lfdr_star_group;  // product of the group's plain lfdrs
    std::vector<double> lambda;           // group effect multiplier per group
    std::vector<double> lfdr_group;       // group lfdr

    std::size_t m() const { return lfdr_group.size(); }
    std::size_t n(std::size_t i) const { return offset[i + 1] - offset[i]; }
    std::size_t total() const { return lfdr_hyp.size(); }

    std::size_t index(std::size_t i, std::size_t j) const { return offset[i] + j; }
    std::size_t group_of(std::size_t flat) const {
        const auto it = std::upper_bound(offset.begin(), offset.end(), flat);
        return static_cast<std::size_t>(it - offset.begin()) - 1;
    }
};

// Populate the full table. Group products run in log space; a member with
// lfdr_star == 0 pins the product to exact 0. One-member groups bypass the
// exp/log round trip so their identities hold exactly.
inline LfdrTable build_lfdr_table(const GroupedObservations& data, const GammParams& params) {
    data.validate();
    params.validate(data.m());

    const std::size_t m = data.m();
    LfdrTable t;
    t.offset.resize(m + 1);
    t.offset[0] = 0;
    for (std::size_t i = 0; i < m; ++i) t.offset[i + 1] = t.offset[i] + data.n(i);
    const std::size_t N = t.offset[m];
    t.lfdr_star.resize(N);
    t.lfdr_cond.resize(N);
    t.lfdr_hyp.resize(N);
    t.lfdr_star_group.resize(m);
    t.lambda.resize(m);
    t.lfdr_group.resize(m);

    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t ni = data.n(i);
        const double pi2 = params.pi2_for(i);
        const std::size_t base = t.offset[i];

        double log_sum = 0.0;
        bool exact_zero = false;
        for (std::size_t j = 0; j < ni; ++j) {
            const double ls = lfdr_star(data.groups[i].z[j], pi2, params.densities);
            t.lfdr_star[base + j] = ls;
            if (ls == 0.0)
                exact_zero = true;
            else
                log_sum += std::log(ls);
        }

        double L, one_minus_L;
        if (exact_zero) {
            L = 0.0;
            one_minus_L = 1.0;
        } else if (ni == 1) {
            L = t.lfdr_star[base];
            one_minus_L = 1.0 - L;
        } else {
            L = std::exp(log_sum);
            one_minus_L = -std::expm1(log_sum);
        }

        const double lam = lambda_group(params.pi1, pi2, ni);
        const double g = (L <= 0.0) ? 0.0 : L / (L + lam * one_minus_L);
        t.lfdr_star_group[i] = L;
        t.lambda[i] = lam;
        t.lfdr_group[i] = g;

        const bool degenerate = one_minus_L < 1e-15;  // all-null saturation
        for (std::size_t j = 0; j < ni; ++j) {
            double c;
            if (degenerate || ni == 1)
                c = 0.0;
            else
                c = std::clamp((t.lfdr_star[base + j] - L) / one_minus_L, 0.0, 1.0);
            t.lfdr_cond[base + j] = c;
            t.lfdr_hyp[base + j] = lfdr_hypothesis(g, c);
        }
    }
    return t;
}

}  // namespace gate::model
