#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "gate/lfdr.hpp"

namespace gate::procedures {

using model::LfdrTable;

// Realized cutoff data; fields are meaningful per procedure (gate1-style
// procedures fill cutoff, gate2 fills eta/alpha_star/r_within).
struct ThresholdInfo {
    std::size_t rejections = 0;
    double cutoff = std::numeric_limits<double>::quiet_NaN();
    double eta = std::numeric_limits<double>::quiet_NaN();
    double alpha_star = std::numeric_limits<double>::quiet_NaN();
    std::vector<std::size_t> r_within;  // per selected group, gate2 only
};

struct DecisionSet {
    std::vector<std::size_t> offset;           // group layout, same shape as the table
    std::vector<std::uint8_t> delta_hyp;       // per hypothesis
    std::vector<std::uint8_t> delta_group;     // derived: any member rejected
    std::vector<std::size_t> selected_groups;  // S, ascending
    ThresholdInfo threshold_info;

    std::size_t m() const { return delta_group.size(); }
    std::size_t n(std::size_t i) const { return offset[i + 1] - offset[i]; }
    std::size_t total() const { return delta_hyp.size(); }

    std::size_t rejections() const {
        std::size_t r = 0;
        for (auto v : delta_hyp) r += (v != 0);
        return r;
    }
    std::size_t rejections_in(std::size_t i) const {
        std::size_t r = 0;
        for (std::size_t k = offset[i]; k < offset[i + 1]; ++k) r += (delta_hyp[k] != 0);
        return r;
    }
};

namespace detail {

inline void derive_groups(DecisionSet& dec, bool selected_from_delta) {
    const std::size_t m = dec.offset.size() - 1;
    dec.delta_group.assign(m, 0);
    for (std::size_t i = 0; i < m; ++i)
        dec.delta_group[i] = dec.rejections_in(i) > 0 ? 1 : 0;
    if (selected_from_delta) {
        dec.selected_groups.clear();
        for (std::size_t i = 0; i < m; ++i)
            if (dec.delta_group[i]) dec.selected_groups.push_back(i);
    }
}

inline DecisionSet empty_decisions(const LfdrTable& table) {
    DecisionSet dec;
    dec.offset = table.offset;
    dec.delta_hyp.assign(table.total(), 0);
    dec.delta_group.assign(table.m(), 0);
    return dec;
}

// Indices of `values` sorted ascending, ties kept in index order.
inline std::vector<std::size_t> ascending_order(const std::vector<double>& values) {
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    return order;
}

// Largest l with v_(1) + ... + v_(l) <= l * alpha, given the ascending order.
inline std::size_t stepup_count(const std::vector<double>& values,
                                const std::vector<std::size_t>& order, double alpha) {
    std::size_t R = 0;
    double cum = 0.0;
    for (std::size_t l = 1; l <= order.size(); ++l) {
        cum += values[order[l - 1]];
        if (cum <= static_cast<double>(l) * alpha) R = l;
    }
    return R;
}

}  // namespace detail

// Reject every hypothesis with lfdr at or below the cutoff.
inline DecisionSet threshold_rule(const LfdrTable& table, double c) {
    DecisionSet dec = detail::empty_decisions(table);
    std::size_t r = 0;
    for (std::size_t k = 0; k < table.total(); ++k) {
        if (table.lfdr_hyp[k] <= c) {
            dec.delta_hyp[k] = 1;
            ++r;
        }
    }
    dec.threshold_info.rejections = r;
    dec.threshold_info.cutoff = c;
    detail::derive_groups(dec, true);
    return dec;
}

// Pooled step-up over all hypothesis lfdrs: reject the R smallest where R is
// the largest rank whose cumulative sum stays within R * alpha.
inline DecisionSet gate1(const LfdrTable& table, double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0,1)");
    if (table.total() == 0) throw std::invalid_argument("empty table");

    const auto order = detail::ascending_order(table.lfdr_hyp);
    const std::size_t R = detail::stepup_count(table.lfdr_hyp, order, alpha);

    DecisionSet dec = detail::empty_decisions(table);
    for (std::size_t k = 0; k < R; ++k) dec.delta_hyp[order[k]] = 1;
    dec.threshold_info.rejections = R;
    dec.threshold_info.cutoff = R > 0 ? table.lfdr_hyp[order[R - 1]] : 0.0;
    detail::derive_groups(dec, true);
    return dec;
}

// Step-up on the group lfdrs: the largest prefix (ascending) with mean <= eta.
inline std::vector<std::size_t> select_groups(const LfdrTable& table, double eta) {
    if (!(eta > 0.0 && eta < 1.0)) throw std::invalid_argument("eta must lie in (0,1)");
    const auto order = detail::ascending_order(table.lfdr_group);
    const std::size_t R = detail::stepup_count(table.lfdr_group, order, eta);
    std::vector<std::size_t> S(order.begin(), order.begin() + R);
    std::sort(S.begin(), S.end());
    return S;
}

// Largest k with c_(1) + ... + c_(k) <= k * alpha_prime over one group's
// conditional lfdrs; 0 when no prefix qualifies.
inline std::size_t within_group_stepup(const std::vector<double>& cond_lfdrs,
                                       double alpha_prime) {
    const auto order = detail::ascending_order(cond_lfdrs);
    return detail::stepup_count(cond_lfdrs, order, alpha_prime);
}

namespace detail {

// Sorted conditional lfdrs and their prefix means for one group.
struct GroupProfile {
    std::vector<double> sorted_cond;   // ascending
    std::vector<double> prefix_mean;   // prefix_mean[k-1] = mean of k smallest
    std::vector<std::size_t> orig_idx; // flat indices in table order
};

inline GroupProfile group_profile(const LfdrTable& table, std::size_t i) {
    GroupProfile p;
    const std::size_t base = table.offset[i];
    const std::size_t ni = table.n(i);
    std::vector<double> cond(table.lfdr_cond.begin() + base,
                             table.lfdr_cond.begin() + base + ni);
    const auto order = ascending_order(cond);
    p.sorted_cond.resize(ni);
    p.orig_idx.resize(ni);
    p.prefix_mean.resize(ni);
    double cum = 0.0;
    for (std::size_t k = 0; k < ni; ++k) {
        p.sorted_cond[k] = cond[order[k]];
        p.orig_idx[k] = base + order[k];
        cum += p.sorted_cond[k];
        double mean = cum / static_cast<double>(k + 1);
        // Prefix means of ascending values never decrease; pin down the
        // float wobble at ties so binary search stays sound.
        if (k > 0) mean = std::max(mean, p.prefix_mean[k - 1]);
        p.prefix_mean[k] = mean;
    }
    return p;
}

// Count of prefix means <= a. Prefix means of ascending values never
// decrease, so this is the within-group rejection count at level a.
inline std::size_t count_at(const GroupProfile& p, double a) {
    return static_cast<std::size_t>(
        std::upper_bound(p.prefix_mean.begin(), p.prefix_mean.end(), a) -
        p.prefix_mean.begin());
}

inline double selective_term(double group_lfdr, const GroupProfile& p, std::size_t r) {
    // Group with no within-group rejection contributes its group lfdr (the
    // within factor defaults to 1), keeping the level a nondecreasing,
    // right-continuous step function of alpha_prime.
    if (r == 0) return group_lfdr;
    return 1.0 - (1.0 - group_lfdr) * (1.0 - p.prefix_mean[r - 1]);
}

}  // namespace detail

// Selective posterior FDR at within-group level alpha_prime over the group
// set S: average over S of 1 - (1 - lfdr_group_i)(1 - mean of the R_i(a')
// smallest conditional lfdrs).
inline double pfdr_selective_at(const LfdrTable& table, const std::vector<std::size_t>& S,
                                double alpha_prime) {
    if (S.empty()) throw std::invalid_argument("selective pfdr needs a nonempty group set");
    double acc = 0.0;
    for (std::size_t i : S) {
        const auto p = detail::group_profile(table, i);
        acc += detail::selective_term(table.lfdr_group[i], p, detail::count_at(p, alpha_prime));
    }
    return acc / static_cast<double>(S.size());
}

// Two-stage procedure: select groups at level eta, then pick the largest
// within-group level alpha_star whose selective posterior FDR stays within
// alpha, and reject the R_i(alpha_star) smallest conditional lfdrs per
// selected group. The supremum is attained on the finite candidate set of
// within-group prefix means (plus 0), where the step function jumps.
inline DecisionSet gate2_with_selection(const LfdrTable& table, double alpha,
                                        const std::vector<std::size_t>& S, double eta_used) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0,1)");

    DecisionSet dec = detail::empty_decisions(table);
    dec.threshold_info.eta = eta_used;
    dec.selected_groups = S;
    if (S.empty()) {
        dec.threshold_info.alpha_star = 0.0;
        return dec;
    }

    std::vector<detail::GroupProfile> profiles;
    profiles.reserve(S.size());
    for (std::size_t i : S) profiles.push_back(detail::group_profile(table, i));

    std::vector<double> candidates{0.0};
    for (const auto& p : profiles)
        for (double v : p.prefix_mean)
            if (v <= alpha) candidates.push_back(v);
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    double alpha_star = 0.0;
    for (std::size_t c = candidates.size(); c-- > 0;) {
        double acc = 0.0;
        for (std::size_t s = 0; s < S.size(); ++s)
            acc += detail::selective_term(table.lfdr_group[S[s]], profiles[s],
                                          detail::count_at(profiles[s], candidates[c]));
        if (acc / static_cast<double>(S.size()) <= alpha) {
            alpha_star = candidates[c];
            break;
        }
    }

    dec.threshold_info.alpha_star = alpha_star;
    dec.threshold_info.r_within.resize(S.size());
    std::size_t total = 0;
    for (std::size_t s = 0; s < S.size(); ++s) {
        const std::size_t r = detail::count_at(profiles[s], alpha_star);
        dec.threshold_info.r_within[s] = r;
        total += r;
        for (std::size_t k = 0; k < r; ++k) dec.delta_hyp[profiles[s].orig_idx[k]] = 1;
    }
    dec.threshold_info.rejections = total;
    detail::derive_groups(dec, false);
    return dec;
}

inline DecisionSet gate2(const LfdrTable& table, double alpha, double eta) {
    if (!(eta > 0.0 && eta < alpha && alpha < 1.0))
        throw std::invalid_argument("need 0 < eta < alpha < 1");
    return gate2_with_selection(table, alpha, select_groups(table, eta), eta);
}

// --- Posterior error functionals, evaluated by linearity over the table.

inline double pfdr_total(const DecisionSet& dec, const LfdrTable& table) {
    double num = 0.0;
    std::size_t r = 0;
    for (std::size_t k = 0; k < table.total(); ++k) {
        if (dec.delta_hyp[k]) {
            num += table.lfdr_hyp[k];
            ++r;
        }
    }
    return num / static_cast<double>(std::max<std::size_t>(r, 1));
}

inline double pfnr_total(const DecisionSet& dec, const LfdrTable& table) {
    double num = 0.0;
    std::size_t a = 0;
    for (std::size_t k = 0; k < table.total(); ++k) {
        if (!dec.delta_hyp[k]) {
            num += 1.0 - table.lfdr_hyp[k];
            ++a;
        }
    }
    return num / static_cast<double>(std::max<std::size_t>(a, 1));
}

namespace detail {
// Group discoveries: the explicit selection when present, otherwise the
// groups containing rejections.
inline std::vector<std::size_t> effective_selection(const DecisionSet& dec) {
    if (!dec.selected_groups.empty()) return dec.selected_groups;
    std::vector<std::size_t> S;
    for (std::size_t i = 0; i < dec.m(); ++i)
        if (dec.delta_group[i]) S.push_back(i);
    return S;
}
}  // namespace detail

inline double pfdr_between(const DecisionSet& dec, const LfdrTable& table) {
    const auto S = detail::effective_selection(dec);
    if (S.empty()) return 0.0;
    double num = 0.0;
    for (std::size_t i : S) num += table.lfdr_group[i];
    return num / static_cast<double>(S.size());
}

inline double pfnr_between(const DecisionSet& dec, const LfdrTable& table) {
    const auto S = detail::effective_selection(dec);
    std::vector<std::uint8_t> in(table.m(), 0);
    for (std::size_t i : S) in[i] = 1;
    double num = 0.0;
    std::size_t a = 0;
    for (std::size_t i = 0; i < table.m(); ++i) {
        if (!in[i]) {
            num += 1.0 - table.lfdr_group[i];
            ++a;
        }
    }
    return num / static_cast<double>(std::max<std::size_t>(a, 1));
}

inline double pfdr_within(const DecisionSet& dec, const LfdrTable& table, std::size_t i) {
    double num = 0.0;
    std::size_t r = 0;
    for (std::size_t k = table.offset[i]; k < table.offset[i + 1]; ++k) {
        if (dec.delta_hyp[k]) {
            num += table.lfdr_cond[k];
            ++r;
        }
    }
    return num / static_cast<double>(std::max<std::size_t>(r, 1));
}

inline double pfnr_within(const DecisionSet& dec, const LfdrTable& table, std::size_t i) {
    double num = 0.0;
    std::size_t a = 0;
    for (std::size_t k = table.offset[i]; k < table.offset[i + 1]; ++k) {
        if (!dec.delta_hyp[k]) {
            num += 1.0 - table.lfdr_cond[k];
            ++a;
        }
    }
    return num / static_cast<double>(std::max<std::size_t>(a, 1));
}

// Selective posterior FDR of realized decisions: average over the selected
// groups of the mean hypothesis lfdr among that group's rejections, a group
// with none contributing its group lfdr. Computed from the per-hypothesis
// lfdrs directly so it can cross-check the conditional-composition route.
inline double pfdr_selective(const DecisionSet& dec, const LfdrTable& table) {
    const auto S = detail::effective_selection(dec);
    if (S.empty()) return 0.0;
    double acc = 0.0;
    for (std::size_t i : S) {
        double num = 0.0;
        std::size_t r = 0;
        for (std::size_t k = table.offset[i]; k < table.offset[i + 1]; ++k) {
            if (dec.delta_hyp[k]) {
                num += table.lfdr_hyp[k];
                ++r;
            }
        }
        acc += r > 0 ? num / static_cast<double>(r) : table.lfdr_group[i];
    }
    return acc / static_cast<double>(S.size());
}

}  // namespace gate::procedures
