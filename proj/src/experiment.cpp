#include "weakmeas/experiment.hpp"

#include <cmath>
#include <sstream>

#include "weakmeas/exact_evolution.hpp"
#include "weakmeas/ion_simulator.hpp"
#include "weakmeas/sampling.hpp"
#include "weakmeas/version.hpp"
#include "weakmeas/weak_values.hpp"

namespace weakmeas {

namespace {

void attach_metadata(ResultTable& table, const ExperimentConfig& cfg) {
    table.add_metadata("engine", "weakmeas");
    table.add_metadata("version", kVersion);
    table.add_metadata("build", build_id());
    table.add_metadata("experiment", to_string(cfg.experiment));
    if (cfg.sampling.has_value())
        table.add_metadata("seed", std::to_string(cfg.sampling->seed));
    table.add_metadata("config", cfg.source_text);
}

std::vector<double> coupling_axis(const ExperimentConfig& cfg) {
    if (cfg.sweep.has_value() && cfg.sweep->param == "g")
        return cfg.sweep->values();
    return {cfg.coupling_g()};
}

[[noreturn]] void rethrow_as(const std::string& code, const std::string& msg) {
    if (code == "capacity") throw CapacityError(msg);
    if (code == "truncation") throw TruncationError(msg);
    if (code == "post_selection") throw PostSelectionError(msg);
    if (code == "estimation") throw EstimationError(msg);
    throw ValidationError(msg);
}

// Evaluates row i = fill(i) for i in [0, count), in parallel when available.
// Failures are collected and reported together with the offending parameter;
// the first failure's error class is preserved for the caller.
template <typename Fill, typename Label>
void fill_rows(std::vector<std::vector<double>>& rows, std::size_t count,
               const Fill& fill, const Label& label) {
    rows.assign(count, {});
    std::vector<std::string> failures(count);
    std::vector<std::string> codes(count);
    bool failed = false;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(count); ++i) {
        try {
            rows[static_cast<std::size_t>(i)] = fill(static_cast<std::size_t>(i));
        } catch (const Error& e) {
            failures[static_cast<std::size_t>(i)] = e.what();
            codes[static_cast<std::size_t>(i)] = e.code();
            failed = true;
        } catch (const std::exception& e) {
            failures[static_cast<std::size_t>(i)] = e.what();
            codes[static_cast<std::size_t>(i)] = "validation";
            failed = true;
        }
    }
    if (failed) {
        std::ostringstream msg;
        msg << "experiment failed:";
        std::string code;
        for (std::size_t i = 0; i < count; ++i)
            if (!failures[i].empty()) {
                if (code.empty()) code = codes[i];
                msg << "\n  at " << label(i) << ": " << failures[i];
            }
        rethrow_as(code, msg.str());
    }
}

ResultTable run_weak_value(const ExperimentConfig& cfg) {
    ResultTable table;
    table.columns = {"post_select_e", "overlap_re", "overlap_im",
                     "overlap_prob", "weak_value_re", "weak_value_im"};
    const QubitState s0 = cfg.qubit();
    const DenseOperator a = pauli_x();
    const QubitState targets[2] = {QubitState{{1.0, 0.0}, {0.0, 0.0}},
                                   QubitState{{0.0, 0.0}, {1.0, 0.0}}};
    for (int which = 0; which < 2; ++which) {
        WeakValueResult wv = weak_value(a, s0, targets[which]);
        table.rows.push_back({static_cast<double>(which), wv.overlap.real(),
                              wv.overlap.imag(), wv.overlap_prob,
                              wv.value.real(), wv.value.imag()});
    }
    return table;
}

ResultTable run_intensity_sweep(const ExperimentConfig& cfg) {
    ResultTable table;
    table.columns = {"g", "i0", "i_s", "i_comp", "i_g", "i_total"};
    const QubitState s0 = cfg.qubit();
    const FockPointerState phi0 = cfg.pointer();
    const int m = cfg.measure_m;
    const Complex c_m = phi0.amps[static_cast<std::size_t>(m)];
    const std::vector<double> gs =
        coupling_axis(cfg);
    fill_rows(
        table.rows, gs.size(),
        [&](std::size_t i) {
            const double g = gs[i];
            IntensityReport r = postselected_intensity_first_order(s0, c_m, g, m);
            return std::vector<double>{g, r.i0, r.i_s, r.i_comp, r.i_g,
                                       r.unconditional()};
        },
        [&](std::size_t i) { return "g = " + std::to_string(gs[i]); });
    return table;
}

ResultTable run_exact_vs_first_order(const ExperimentConfig& cfg) {
    ResultTable table;
    table.columns = {"g",           "I_s_first",    "I_s_exact", "I_comp_first",
                     "I_comp_exact", "I_total",      "residual"};
    const QubitState s0 = cfg.qubit();
    const FockPointerState phi0 = cfg.pointer();
    const int m = cfg.measure_m;
    const Complex c_m = phi0.amps[static_cast<std::size_t>(m)];
    const std::vector<double> gs =
        coupling_axis(cfg);
    fill_rows(
        table.rows, gs.size(),
        [&](std::size_t i) {
            const double g = gs[i];
            IntensityReport first = postselected_intensity_first_order(s0, c_m, g, m);
            JointState psi_f = evolve_exact(s0, phi0, g);
            const double s_exact = conditional_probability(psi_f, m, QubitOutcome::g);
            const double comp_exact = conditional_probability(psi_f, m, QubitOutcome::e);
            const double total = fock_probability(psi_f, m);
            const double residual = std::max(std::abs(first.i_s - s_exact),
                                             std::abs(first.i_comp - comp_exact));
            return std::vector<double>{g,          first.i_s, s_exact, first.i_comp,
                                       comp_exact, total,     residual};
        },
        [&](std::size_t i) { return "g = " + std::to_string(gs[i]); });
    return table;
}

ResultTable run_ion_protocol_table(const ExperimentConfig& cfg) {
    ResultTable table;
    table.columns = {"g",          "delta",      "p_up_r",
                     "p_up_r_down", "p_up_r_up",  "leakage"};
    const QubitState s0 = cfg.qubit();
    const FockPointerState phi0 = cfg.pointer();
    const IonConfig& ion = cfg.ion.value();
    const CouplingMode mode =
        ion.full_jc ? CouplingMode::full_jc : CouplingMode::effective;

    const bool sweep_delta = cfg.sweep.has_value() && cfg.sweep->param == "delta";
    const std::vector<double> axis =
        sweep_delta ? cfg.sweep->values()
                    : coupling_axis(cfg);
    fill_rows(
        table.rows, axis.size(),
        [&](std::size_t i) {
            const double g = sweep_delta ? cfg.coupling_g() : axis[i];
            const double delta = sweep_delta ? axis[i] : ion.delta;
            std::optional<FullJcParams> jc;
            if (mode == CouplingMode::full_jc)
                jc = FullJcParams{ion.omega0, delta};
            IonProtocolResult r = run_ion_protocol(s0, phi0, g, mode, jc);
            return std::vector<double>{g,          delta,      r.p_up_r,
                                       r.p_up_r_down, r.p_up_r_up, r.leakage};
        },
        [&](std::size_t i) {
            return (sweep_delta ? "delta = " : "g = ") + std::to_string(axis[i]);
        });
    return table;
}

ResultTable run_estimate(const ExperimentConfig& cfg) {
    ResultTable table;
    table.columns = {"seed",   "shots",     "n_used",
                     "p_hat",  "g_hat",     "std_error",
                     "g_hat_unconditional", "std_error_unconditional", "g_true"};
    const QubitState s0 = cfg.qubit();
    const FockPointerState phi0 = cfg.pointer();
    const int m = cfg.measure_m;
    const double g_true = cfg.coupling_g();
    const SamplingConfig& sampling = cfg.sampling.value();
    const double i_m_model =
        std::norm(phi0.amps[static_cast<std::size_t>(m)]);

    std::vector<uint64_t> seeds;
    if (cfg.sweep.has_value() && cfg.sweep->param == "seed") {
        for (double v : cfg.sweep->values())
            seeds.push_back(static_cast<uint64_t>(std::llround(v)));
    } else {
        seeds.push_back(sampling.seed);
    }

    const auto probs = joint_outcome_distribution(s0, phi0, g_true);
    fill_rows(
        table.rows, seeds.size(),
        [&](std::size_t i) {
        ShotRecord record = sample_shots(probs, sampling.shots, seeds[i]);
        ShotRecord conditioned = condition_on_pointer(record, m);
        GEstimate post = estimate_g(conditioned, s0, m);
        GEstimate unc = estimate_g_unconditional(record, s0, i_m_model, m);
        const double p_hat = conditioned.total == 0
                                 ? 0.0
                                 : static_cast<double>(conditioned.count("g")) /
                                       static_cast<double>(conditioned.total);
            return std::vector<double>{static_cast<double>(seeds[i]),
                                       static_cast<double>(sampling.shots),
                                       static_cast<double>(post.n_used),
                                       p_hat,
                                       post.g_hat,
                                       post.std_error,
                                       unc.g_hat,
                                       unc.std_error,
                                       g_true};
        },
        [&](std::size_t i) { return "seed = " + std::to_string(seeds[i]); });
    return table;
}

} // namespace

ResultTable run_experiment(const ExperimentConfig& cfg) {
    ResultTable table;
    switch (cfg.experiment) {
        case ExperimentKind::weak_value: table = run_weak_value(cfg); break;
        case ExperimentKind::intensity_sweep: table = run_intensity_sweep(cfg); break;
        case ExperimentKind::exact_vs_first_order:
            table = run_exact_vs_first_order(cfg);
            break;
        case ExperimentKind::ion_protocol: table = run_ion_protocol_table(cfg); break;
        case ExperimentKind::estimate: table = run_estimate(cfg); break;
    }
    attach_metadata(table, cfg);
    table.require_rectangular();
    return table;
}

} // namespace weakmeas
