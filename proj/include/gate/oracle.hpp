#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

#include "gate/model.hpp"

namespace gate::model {

struct EnumeratedPosterior {
    double group_null;              // P(group entirely null | data)
    std::vector<double> cond_null;  // P(member j null | group significant, data)
};

// Exhaustive-enumeration posterior for one group: sums the joint law over the
// all-null state and every admissible signal pattern, in log space. Serves as
// the independent oracle for the closed-form lfdr quantities.
inline EnumeratedPosterior brute_force_posterior(const std::vector<double>& x, double pi1,
                                                 double pi2, const DensitySpec& d) {
    const std::size_t n = x.size();
    if (n == 0) throw std::invalid_argument("need at least one statistic");
    if (n > 20) throw std::invalid_argument("enumeration limited to n <= 20");
    if (!(pi1 > 0.0 && pi1 < 1.0) || !(pi2 > 0.0 && pi2 < 1.0))
        throw std::invalid_argument("pi1 and pi2 must lie in (0,1)");
    d.validate();

    std::vector<double> lf0(n), lf1(n);
    for (std::size_t j = 0; j < n; ++j) {
        lf0[j] = d.log_f0(x[j]);
        lf1[j] = d.log_f1(x[j]);
    }

    const double log_q_n = static_cast<double>(n) * std::log1p(-pi2);
    const double log_norm = std::log(-std::expm1(log_q_n));
    const double log_odds = std::log(pi2) - std::log1p(-pi2);

    const std::size_t patterns = (std::size_t{1} << n);
    std::vector<double> logw(patterns);

    double lw0 = std::log1p(-pi1);
    for (std::size_t j = 0; j < n; ++j) lw0 += lf0[j];
    logw[0] = lw0;

    for (std::size_t mask = 1; mask < patterns; ++mask) {
        double lw = std::log(pi1) + log_q_n - log_norm;
        std::size_t s = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (mask & (std::size_t{1} << j)) {
                lw += lf1[j];
                ++s;
            } else {
                lw += lf0[j];
            }
        }
        lw += static_cast<double>(s) * log_odds;
        logw[mask] = lw;
    }

    double best = -std::numeric_limits<double>::infinity();
    for (double lw : logw) best = std::max(best, lw);
    double total = 0.0;
    for (double lw : logw) total += std::exp(lw - best);
    const double lse_all = best + std::log(total);

    double check = 0.0;
    for (double lw : logw) check += std::exp(lw - lse_all);
    if (std::abs(check - 1.0) > 1e-12)
        throw NumericError("enumerated posterior failed to normalize");

    double best1 = -std::numeric_limits<double>::infinity();
    for (std::size_t mask = 1; mask < patterns; ++mask) best1 = std::max(best1, logw[mask]);
    double total1 = 0.0;
    for (std::size_t mask = 1; mask < patterns; ++mask) total1 += std::exp(logw[mask] - best1);
    const double lse_sig = best1 + std::log(total1);

    EnumeratedPosterior out;
    out.group_null = std::exp(logw[0] - lse_all);
    out.cond_null.assign(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        double acc = 0.0;
        for (std::size_t mask = 1; mask < patterns; ++mask)
            if (!(mask & (std::size_t{1} << j))) acc += std::exp(logw[mask] - lse_sig);
        out.cond_null[j] = acc;
    }
    return out;
}

}  // namespace gate::model
