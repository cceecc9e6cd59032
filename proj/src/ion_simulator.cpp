#include "weakmeas/ion_simulator.hpp"

#include <cmath>
#include <iostream>
#include <sstream>

namespace weakmeas {

namespace {

constexpr double kSqrt1_2 = 0.7071067811865475244;

std::size_t flat(const JointState& s, int ion1, int n, int ion2) {
    return (static_cast<std::size_t>(ion1) * s.dims[1] + static_cast<std::size_t>(n)) * 2 +
           static_cast<std::size_t>(ion2);
}

void require_kind(const PulseSpec& pulse, PulseKind kind, const char* what) {
    if (pulse.kind != kind)
        throw ValidationError(std::string(what) + ": wrong pulse kind");
    if (pulse.rabi < 0.0 || pulse.duration < 0.0)
        throw ValidationError(std::string(what) +
                              ": rabi and duration must be nonnegative");
}

void warn_if_cutoff_populated(const IonRegister& reg, const char* what) {
    const double top = reg.top_cm_population();
    if (top > 1e-8)
        std::cerr << "weakmeas: warning: " << what << " left population " << top
                  << " at the Fock cutoff (n_max = " << reg.n_max()
                  << "); results near the cutoff are truncated\n";
}

struct BlockRotation {
    // exp(-i t [[half_det, coupling],[conj(coupling), -half_det]]) entries.
    Complex uu, ud, du, dd;
};

// Propagator of one detuned two-state block with generalized Rabi frequency
// 2w = sqrt(det^2 + 4|coupling|^2).
BlockRotation block_rotation(double half_det, Complex coupling, double t) {
    const double w = std::sqrt(half_det * half_det + std::norm(coupling));
    const double c = std::cos(w * t);
    // sin(wt)/w, finite limit t at w = 0
    const double sinc = w > 0.0 ? std::sin(w * t) / w : t;
    const Complex i{0.0, 1.0};
    BlockRotation r;
    r.uu = c - i * sinc * half_det;
    r.ud = -i * sinc * coupling;
    r.du = -i * sinc * std::conj(coupling);
    r.dd = c + i * sinc * half_det;
    return r;
}

} // namespace

Complex IonRegister::amp(int ion1, int n, int ion2) const {
    return state.amps[flat(state, ion1, n, ion2)];
}

Complex& IonRegister::amp(int ion1, int n, int ion2) {
    return state.amps[flat(state, ion1, n, ion2)];
}

double IonRegister::top_cm_population() const {
    const int top = n_max();
    double p = 0.0;
    for (int s1 = 0; s1 < 2; ++s1)
        for (int s2 = 0; s2 < 2; ++s2) p += std::norm(amp(s1, top, s2));
    return p;
}

double IonRegister::ion2_excited_population() const {
    double p = 0.0;
    for (int s1 = 0; s1 < 2; ++s1)
        for (int n = 0; n <= n_max(); ++n) p += std::norm(amp(s1, n, 1));
    return p;
}

void logical_to_ion(Complex alpha, Complex beta, Complex& amp_down,
                    Complex& amp_up) {
    amp_down = (beta - alpha) * kSqrt1_2;
    amp_up = (alpha + beta) * kSqrt1_2;
}

void ion_to_logical(Complex amp_down, Complex amp_up, Complex& alpha,
                    Complex& beta) {
    alpha = (amp_up - amp_down) * kSqrt1_2;
    beta = (amp_up + amp_down) * kSqrt1_2;
}

IonRegister make_register(const QubitState& logical,
                          const FockPointerState& cm) {
    if (!logical.is_normalized())
        throw ValidationError("make_register: logical qubit is not normalized");
    if (!cm.is_normalized())
        throw ValidationError("make_register: CM state is not normalized");

    Complex down, up;
    logical_to_ion(logical.alpha, logical.beta, down, up);
    const int levels = cm.n_max() + 1;
    JointState state({2, levels, 2},
                     std::vector<Complex>(static_cast<std::size_t>(4) * levels));
    IonRegister reg{std::move(state)};
    for (int n = 0; n < levels; ++n) {
        reg.amp(0, n, 0) = down * cm.amps[static_cast<std::size_t>(n)];
        reg.amp(1, n, 0) = up * cm.amps[static_cast<std::size_t>(n)];
    }
    return reg;
}

IonRegister jc_evolve(const IonRegister& reg, const PulseSpec& pulse) {
    require_kind(pulse, PulseKind::red_sideband_ion1, "jc_evolve");
    reg.state.require_normalized("jc_evolve input");

    const int top = reg.n_max();
    for (int s2 = 0; s2 < 2; ++s2)
        if (std::abs(reg.amp(1, top, s2)) > 1e-8)
            throw TruncationError(
                "jc_evolve: population at |up, n_max> would leave the truncated "
                "ladder; raise n_max");

    const double omega = pulse.rabi;
    const double delta = pulse.detuning;
    const double t = pulse.duration;
    const Complex i{0.0, 1.0};
    const Complex drive_phase = std::exp(-i * pulse.phase);
    // lab-frame restoration exp(+i delta t tau_z / 2)
    const Complex lab_up = std::exp(i * (0.5 * delta * t));
    const Complex lab_down = std::conj(lab_up);

    IonRegister out = reg;
    for (int s2 = 0; s2 < 2; ++s2) {
        // |down, 0> is the lone eigenstate of the rotating-frame generator;
        // its phase cancels exactly against the lab-frame factor.
        for (int n = 0; n + 1 <= top; ++n) {
            const Complex coupling =
                drive_phase * omega * std::sqrt(static_cast<double>(n + 1));
            const BlockRotation r = block_rotation(0.5 * delta, coupling, t);
            const Complex u_in = reg.amp(1, n, s2);     // |up, n>
            const Complex d_in = reg.amp(0, n + 1, s2); // |down, n+1>
            out.amp(1, n, s2) = (r.uu * u_in + r.ud * d_in) * lab_up;
            out.amp(0, n + 1, s2) = (r.du * u_in + r.dd * d_in) * lab_down;
        }
        // |up, n_max> has no partner inside the ladder; its rotating-frame
        // phase cancels against the lab-frame factor (amplitude <= 1e-8).
    }
    warn_if_cutoff_populated(out, "jc_evolve");
    return out;
}

IonRegister effective_evolve(const IonRegister& reg, double g0, double t) {
    reg.state.require_normalized("effective_evolve input");
    const Complex i{0.0, 1.0};
    IonRegister out = reg;
    for (int n = 0; n <= reg.n_max(); ++n) {
        const double phase = g0 * t * static_cast<double>(n);
        const Complex up_factor = std::exp(-i * phase);
        const Complex down_factor = std::exp(i * phase);
        for (int s2 = 0; s2 < 2; ++s2) {
            out.amp(1, n, s2) = reg.amp(1, n, s2) * up_factor;
            out.amp(0, n, s2) = reg.amp(0, n, s2) * down_factor;
        }
    }
    return out;
}

IonRegister stark_compensation(const IonRegister& reg, double g0, double t) {
    const Complex factor = std::exp(Complex{0.0, g0 * t});
    IonRegister out = reg;
    for (int n = 0; n <= reg.n_max(); ++n)
        for (int s2 = 0; s2 < 2; ++s2) out.amp(1, n, s2) = reg.amp(1, n, s2) * factor;
    return out;
}

IonRegister carrier_rotation(const IonRegister& reg, const PulseSpec& pulse) {
    require_kind(pulse, PulseKind::carrier_ion1, "carrier_rotation");
    reg.state.require_normalized("carrier_rotation input");

    const double angle = pulse.rabi * pulse.duration;
    const Complex i{0.0, 1.0};
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    // exp(-i angle (e^{-i theta} sigma_+ + e^{+i theta} sigma_-)) on (down, up)
    const Complex m_du = -i * s * std::exp(i * pulse.phase);  // <down| U |up>
    const Complex m_ud = -i * s * std::exp(-i * pulse.phase); // <up| U |down>

    IonRegister out = reg;
    for (int n = 0; n <= reg.n_max(); ++n)
        for (int s2 = 0; s2 < 2; ++s2) {
            const Complex down_in = reg.amp(0, n, s2);
            const Complex up_in = reg.amp(1, n, s2);
            out.amp(0, n, s2) = c * down_in + m_du * up_in;
            out.amp(1, n, s2) = m_ud * down_in + c * up_in;
        }
    return out;
}

IonRegister readout_map(const IonRegister& reg, const PulseSpec& pulse) {
    require_kind(pulse, PulseKind::red_sideband_ion2, "readout_map");
    reg.state.require_normalized("readout_map input");
    if (reg.ion2_excited_population() > 1e-10)
        throw ValidationError("readout_map: ion 2 must start in |down_r>");

    const int top = reg.n_max();
    for (int s1 = 0; s1 < 2; ++s1)
        if (std::abs(reg.amp(s1, top, 1)) > 1e-8)
            throw TruncationError(
                "readout_map: population at |n_max, up_r> would leave the "
                "truncated ladder; raise n_max");

    const double omega = pulse.rabi;
    const double delta = pulse.detuning;
    const double t = pulse.duration;
    const Complex i{0.0, 1.0};
    const Complex drive_phase = std::exp(-i * pulse.phase);
    const Complex lab_up = std::exp(i * (0.5 * delta * t));
    const Complex lab_down = std::conj(lab_up);

    IonRegister out = reg;
    for (int s1 = 0; s1 < 2; ++s1) {
        // |0, down_r> is outside every coupled pair: net phase is identity.
        for (int n = 0; n + 1 <= top; ++n) {
            const Complex coupling =
                drive_phase * omega * std::sqrt(static_cast<double>(n + 1));
            const BlockRotation r = block_rotation(0.5 * delta, coupling, t);
            const Complex u_in = reg.amp(s1, n, 1);     // |n, up_r>
            const Complex d_in = reg.amp(s1, n + 1, 0); // |n+1, down_r>
            out.amp(s1, n, 1) = (r.uu * u_in + r.ud * d_in) * lab_up;
            out.amp(s1, n + 1, 0) = (r.du * u_in + r.dd * d_in) * lab_down;
        }
    }
    warn_if_cutoff_populated(out, "readout_map");
    return out;
}

ShelvingReadout shelving_readout(const IonRegister& reg, int target_ion) {
    if (target_ion != 1 && target_ion != 2)
        throw ValidationError("shelving_readout: target ion must be 1 or 2");
    double p = 0.0;
    for (int n = 0; n <= reg.n_max(); ++n)
        for (int other = 0; other < 2; ++other)
            p += std::norm(target_ion == 1 ? reg.amp(1, n, other)
                                           : reg.amp(other, n, 1));
    return ShelvingReadout{p, target_ion};
}

double readout_leakage(const IonRegister& reg) {
    double p = 0.0;
    for (int s1 = 0; s1 < 2; ++s1)
        for (int n = 1; n <= reg.n_max(); ++n)
            for (int s2 = 0; s2 < 2; ++s2) p += std::norm(reg.amp(s1, n, s2));
    return p;
}

IntensityReport IonProtocolResult::as_report(const QubitState& s0) const {
    IntensityReport report;
    report.i0 = p_up_r;
    report.i_s = p_up_r_down;
    report.i_comp = p_up_r_up;
    report.i_g = p_up_r_down - std::norm(s0.alpha) * p_up_r;
    report.order = IntensityOrder::exact;
    return report;
}

IonProtocolResult run_ion_protocol(const QubitState& s0,
                                   const FockPointerState& phi0, double g,
                                   CouplingMode mode,
                                   std::optional<FullJcParams> jc) {
    if (!s0.is_normalized())
        throw ValidationError("run_ion_protocol: qubit state is not normalized");
    if (!phi0.is_normalized())
        throw ValidationError("run_ion_protocol: pointer state is not normalized");
    if (phi0.n_max() < 1)
        throw ValidationError("run_ion_protocol: pointer needs n_max >= 1");
    for (int n = 2; n <= phi0.n_max(); ++n)
        if (std::abs(phi0.amps[static_cast<std::size_t>(n)]) > 1e-12)
            throw ValidationError(
                "run_ion_protocol: pointer support must lie in {|0>, |1>}");
    if (g < 0.0) throw ValidationError("run_ion_protocol: g must be >= 0");

    // Headroom: the sideband blocks reach |down, 2> from |up, 1>, never
    // higher, so four levels keep the cutoff strictly empty.
    const int sim_levels = std::max(4, phi0.n_max() + 1);
    std::vector<Complex> cm_amps(static_cast<std::size_t>(sim_levels), Complex{0.0, 0.0});
    for (int n = 0; n <= phi0.n_max(); ++n)
        cm_amps[static_cast<std::size_t>(n)] = phi0.amps[static_cast<std::size_t>(n)];
    FockPointerState cm{std::move(cm_amps)};

    IonRegister reg = make_register(s0, cm);

    if (mode == CouplingMode::effective) {
        reg = effective_evolve(reg, g, 1.0);
    } else {
        if (!jc.has_value())
            throw ValidationError("run_ion_protocol: full_jc mode needs omega0/delta");
        if (jc->omega0 <= 0.0 || jc->delta == 0.0)
            throw ValidationError(
                "run_ion_protocol: full_jc needs omega0 > 0 and delta != 0");
        const double g0 = jc->omega0 * jc->omega0 / jc->delta;
        const double t = g / g0;
        reg = jc_evolve(reg, PulseSpec{PulseKind::red_sideband_ion1, jc->omega0,
                                       jc->delta, 0.0, t});
        reg = stark_compensation(reg, g0, t);
    }

    // U_s: |e> -> |up>, |g> -> -|down>
    reg = carrier_rotation(reg, PulseSpec{PulseKind::carrier_ion1, 1.0, 0.0,
                                          -M_PI / 2.0, M_PI / 4.0});
    // U_r: |1, down_r> -> -i |0, up_r>
    reg = readout_map(reg, PulseSpec{PulseKind::red_sideband_ion2, 1.0, 0.0,
                                     0.0, M_PI / 2.0});

    IonProtocolResult result{0.0, 0.0, 0.0, readout_leakage(reg)};
    for (int n = 0; n <= reg.n_max(); ++n) {
        result.p_up_r_down += std::norm(reg.amp(0, n, 1));
        result.p_up_r_up += std::norm(reg.amp(1, n, 1));
    }
    result.p_up_r = shelving_readout(reg, 2).p_fluoresce;
    return result;
}

} // namespace weakmeas
