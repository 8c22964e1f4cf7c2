#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "gate/gate.hpp"

namespace testutil {

struct Instance {
    gate::model::GroupedObservations data;
    gate::model::LatentTruth truth;
    gate::model::GammParams params;
    gate::model::LfdrTable table;
};

inline gate::model::GammParams random_params(gate::Rng& rng, std::size_t K,
                                             double lo = 0.05, double hi = 0.95) {
    gate::model::GammParams p;
    p.pi1 = lo + (hi - lo) * rng.uniform();
    p.pi2 = {lo + (hi - lo) * rng.uniform()};
    auto [w, mu] = gate::bench::mixture_preset(K);
    p.densities.alt_weights = std::move(w);
    p.densities.alt_means = std::move(mu);
    p.densities.alt_sd = 1.0;
    return p;
}

// Random dataset with per-group sizes in [n_lo, n_hi] and its posterior table.
inline Instance random_instance(gate::Rng& rng, std::size_t m, std::size_t n_lo, std::size_t n_hi,
                                std::size_t K = 1) {
    Instance inst;
    inst.params = random_params(rng, K);
    std::vector<std::size_t> sizes(m);
    for (auto& s : sizes) s = n_lo + rng.uniform_int(n_hi - n_lo + 1);
    auto [d, t] = gate::model::generate_dataset(m, sizes, inst.params, rng);
    inst.data = std::move(d);
    inst.truth = std::move(t);
    inst.table = gate::model::build_lfdr_table(inst.data, inst.params);
    return inst;
}

}  // namespace testutil
