#pragma once

#include <cstdint>
#include <initializer_list>

#include "gdd/lab/config.hpp"
#include "gdd/lab/results.hpp"

namespace gdd::lab {

/// Runs every (trial, noise, method) combination of cfg. Output depends only
/// on cfg, not on cfg.threads. Method failures are recorded in
/// ResultTable::failures and the run continues; graph or signal loading
/// errors propagate as gdd::DataError.
ResultTable run_experiment(const ExperimentConfig& cfg);

/// Deterministic 64-bit seed for a (seed, stream...) tuple.
std::uint64_t derive_seed(std::uint64_t seed, std::initializer_list<std::uint64_t> stream);

}  // namespace gdd::lab
