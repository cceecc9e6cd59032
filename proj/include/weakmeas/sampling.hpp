#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "weakmeas/states.hpp"

namespace weakmeas {

// Reproducibility contract: the generator is std::mt19937_64 (all parameters
// fixed by the C++ standard, so the raw stream is identical on every
// platform), uniforms are (x >> 11) * 2^-53, and multinomial sampling walks
// the cumulative distribution per shot. Per-task generators are seeded with
// splitmix64(master ^ golden * (index + 1)). Same seed in, same counts out —
// bit for bit, everywhere.

uint64_t splitmix64(uint64_t z);
/// Seed for an independent parallel task derived from (master seed, index).
uint64_t task_seed(uint64_t master_seed, uint64_t task_index);
/// Uniform double in [0, 1) from the top 53 bits of the engine output.
double uniform53(std::mt19937_64& rng);

struct ShotRecord {
    std::map<std::string, uint64_t> counts;
    uint64_t total = 0;
    uint64_t seed = 0;

    uint64_t count(const std::string& label) const;
};

/// Multinomial draw of n shots from (label, probability) pairs. Probabilities
/// must be nonnegative (within -1e-9) and sum to 1 within 1e-9; otherwise a
/// warning is printed and the distribution is renormalized. Deterministic in
/// (probs, n, seed).
ShotRecord sample_shots(const std::vector<std::pair<std::string, double>>& probs,
                        uint64_t n, uint64_t seed);

/// Keeps only labels of the form "<m>:<suffix>", relabelled to "<suffix>".
ShotRecord condition_on_pointer(const ShotRecord& record, int m);

struct GEstimate {
    double g_hat = 0.0;
    double std_error = 0.0;
    uint64_t n_used = 0;
};

/// First-order inversion of the post-selected fraction within the pointer-m
/// sub-ensemble: with p = counts("g")/n_used,
///   g_hat = (p - |alpha|^2) / (2 m Im(alpha* beta)),
/// std_error by binomial propagation. Throws EstimationError when
/// Im(alpha* beta) = 0 (no first-order sensitivity) or m = 0 (P_w = 0), and
/// ValidationError when the record is empty.
GEstimate estimate_g(const ShotRecord& conditioned, const QubitState& s0,
                     int m);

/// The same inversion applied to the *total-ensemble* pointer-m fraction,
/// using the known baseline i_m_model = |c_m|^2 and the post-selected slope
/// as gauge: g_hat = (p_m / i_m_model - 1) / (2 m Im(alpha* beta)). The
/// occupation is conserved, so this estimator has zero sensitivity to the
/// true g: its confidence interval covers 0 no matter how strongly the
/// sub-ensembles shift. `record` holds joint "<m>:g"/"<m>:e" labels.
GEstimate estimate_g_unconditional(const ShotRecord& record,
                                   const QubitState& s0, double i_m_model,
                                   int m);

/// Joint outcome distribution (label "<n>:g"/"<n>:e") of the exact evolution,
/// ready for sample_shots.
std::vector<std::pair<std::string, double>> joint_outcome_distribution(
    const QubitState& s0, const FockPointerState& phi0, double g);

} // namespace weakmeas
