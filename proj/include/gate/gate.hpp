#pragma once

// Lfdr-based multiple testing for one-way grouped hypotheses: model and
// posterior quantities, step-up procedures with group-level control,
// pooled and p-value baselines, Gibbs-sampler estimation, and a Monte
// Carlo benchmark harness.

#include "gate/rng.hpp"
#include "gate/model.hpp"
#include "gate/lfdr.hpp"
#include "gate/oracle.hpp"
#include "gate/procedures.hpp"
#include "gate/baselines.hpp"
#include "gate/parallel.hpp"
#include "gate/fit.hpp"
#include "gate/bench.hpp"
