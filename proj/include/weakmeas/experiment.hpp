#pragma once

#include "weakmeas/config.hpp"
#include "weakmeas/result_table.hpp"

namespace weakmeas {

/// Dispatches a validated config to the engines and assembles the result
/// table. Deterministic for deterministic experiments and seed-deterministic
/// for sampling ones; sweep points are evaluated independently (in parallel
/// when OpenMP is available) and written by index.
ResultTable run_experiment(const ExperimentConfig& config);

} // namespace weakmeas
