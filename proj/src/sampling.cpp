#include "weakmeas/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <sstream>

#include "weakmeas/exact_evolution.hpp"

namespace weakmeas {

uint64_t splitmix64(uint64_t z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

uint64_t task_seed(uint64_t master_seed, uint64_t task_index) {
    return splitmix64(master_seed ^ (0x9E3779B97F4A7C15ull * (task_index + 1)));
}

double uniform53(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

uint64_t ShotRecord::count(const std::string& label) const {
    auto it = counts.find(label);
    return it == counts.end() ? 0 : it->second;
}

ShotRecord sample_shots(const std::vector<std::pair<std::string, double>>& probs,
                        uint64_t n, uint64_t seed) {
    if (probs.empty())
        throw ValidationError("sample_shots: no outcomes given");

    double total = 0.0;
    for (const auto& [label, p] : probs) {
        if (!(p > -1e-9))
            throw ValidationError("sample_shots: negative probability for '" +
                                  label + "'");
        total += std::max(p, 0.0);
    }
    if (total <= 0.0)
        throw ValidationError("sample_shots: probabilities sum to zero");
    if (std::abs(total - 1.0) > 1e-9)
        std::cerr << "weakmeas: warning: probabilities sum to " << total
                  << ", renormalizing\n";

    std::vector<double> cdf(probs.size());
    double acc = 0.0;
    for (std::size_t k = 0; k < probs.size(); ++k) {
        acc += std::max(probs[k].second, 0.0) / total;
        cdf[k] = acc;
    }
    cdf.back() = 1.0;

    std::vector<uint64_t> tallies(probs.size(), 0);
    std::mt19937_64 rng(seed);
    for (uint64_t shot = 0; shot < n; ++shot) {
        const double u = uniform53(rng);
        const std::size_t k = static_cast<std::size_t>(
            std::upper_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
        ++tallies[std::min(k, probs.size() - 1)];
    }

    ShotRecord record;
    record.total = n;
    record.seed = seed;
    for (std::size_t k = 0; k < probs.size(); ++k)
        record.counts[probs[k].first] += tallies[k];
    return record;
}

ShotRecord condition_on_pointer(const ShotRecord& record, int m) {
    const std::string prefix = std::to_string(m) + ":";
    ShotRecord out;
    out.seed = record.seed;
    for (const auto& [label, count] : record.counts) {
        if (label.rfind(prefix, 0) != 0) continue;
        out.counts[label.substr(prefix.size())] += count;
        out.total += count;
    }
    return out;
}

namespace {

double signal_slope(const QubitState& s0, int m, const char* what) {
    if (!s0.is_normalized())
        throw ValidationError(std::string(what) + ": qubit state is not normalized");
    if (m == 0)
        throw EstimationError(std::string(what) +
                              ": m = 0 carries no signal (P_w = 0)");
    if (m < 0) throw ValidationError(std::string(what) + ": m must be positive");
    const double im_ab = std::imag(std::conj(s0.alpha) * s0.beta);
    if (im_ab == 0.0)
        throw EstimationError(
            std::string(what) +
            ": Im(alpha* beta) = 0, g is unidentifiable at first order");
    return 2.0 * static_cast<double>(m) * im_ab;
}

} // namespace

GEstimate estimate_g(const ShotRecord& conditioned, const QubitState& s0,
                     int m) {
    const double slope = signal_slope(s0, m, "estimate_g");
    const uint64_t n_used = conditioned.total;
    if (n_used == 0)
        throw ValidationError("estimate_g: empty conditioned record");

    const double p_hat = static_cast<double>(conditioned.count("g")) /
                         static_cast<double>(n_used);
    GEstimate est;
    est.n_used = n_used;
    est.g_hat = (p_hat - std::norm(s0.alpha)) / slope;
    est.std_error =
        std::sqrt(p_hat * (1.0 - p_hat) / static_cast<double>(n_used)) /
        std::abs(slope);
    return est;
}

GEstimate estimate_g_unconditional(const ShotRecord& record,
                                   const QubitState& s0, double i_m_model,
                                   int m) {
    const double slope = signal_slope(s0, m, "estimate_g_unconditional");
    if (record.total == 0)
        throw ValidationError("estimate_g_unconditional: empty record");
    if (!(i_m_model > 0.0))
        throw ValidationError("estimate_g_unconditional: baseline I_m must be > 0");

    const std::string prefix = std::to_string(m) + ":";
    uint64_t hits = 0;
    for (const auto& [label, count] : record.counts)
        if (label.rfind(prefix, 0) == 0) hits += count;

    const double n = static_cast<double>(record.total);
    const double p_hat = static_cast<double>(hits) / n;
    GEstimate est;
    est.n_used = record.total;
    est.g_hat = (p_hat / i_m_model - 1.0) / slope;
    est.std_error = std::sqrt(p_hat * (1.0 - p_hat) / n) /
                    (i_m_model * std::abs(slope));
    return est;
}

std::vector<std::pair<std::string, double>> joint_outcome_distribution(
    const QubitState& s0, const FockPointerState& phi0, double g) {
    JointState psi_f = evolve_exact(s0, phi0, g);
    std::vector<std::pair<std::string, double>> probs;
    probs.reserve(static_cast<std::size_t>(2) * (phi0.n_max() + 1));
    for (int n = 0; n <= phi0.n_max(); ++n) {
        probs.emplace_back(std::to_string(n) + ":g",
                           conditional_probability(psi_f, n, QubitOutcome::g));
        probs.emplace_back(std::to_string(n) + ":e",
                           conditional_probability(psi_f, n, QubitOutcome::e));
    }
    return probs;
}

} // namespace weakmeas
