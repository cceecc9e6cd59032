#pragma once

#include <optional>

#include "weakmeas/states.hpp"
#include "weakmeas/weak_values.hpp"

namespace weakmeas {

// Two trapped ions sharing one vibrational mode. Register layout (slowest
// first): ion 1 internal {|down> = 0, |up> = 1}  x  CM mode {0..n_max}  x
// ion 2 internal {|down_r> = 0, |up_r> = 1}.
//
// The logical qubit lives on ion 1 in the rotated basis
//   |e> = (|up> + |down>)/sqrt(2),   |g> = (|up> - |down>)/sqrt(2),
// where the dispersive coupling a^dag a * tau_z acts as a^dag a * sigma_x.
//
// Phase conventions are fixed once by the exact block solution of the detuned
// sideband coupling H(t) = Omega (e^{i delta t} a tau_+ + e^{-i delta t}
// a^dag tau_-): in the frame exp(-i delta t tau_z / 2) the generator is the
// constant delta/2 tau_z + Omega (a tau_+ + a^dag tau_-), each pair
// {|up, n>, |down, n+1>} rotates with half the generalized Rabi frequency
// sqrt(delta^2 + 4 Omega^2 (n+1)) / 2, and the lab-frame state is recovered
// with exp(+i delta t tau_z / 2). Resonantly this gives the usual
// |up, n> -> cos(Omega sqrt(n+1) t)|up, n> - i sin(...)|down, n+1>.

enum class PulseKind { red_sideband_ion1, red_sideband_ion2, carrier_ion1 };

/// One laser-pulse segment. `phase` enters carrier pulses as
/// Omega (e^{-i phase} sigma_+ + e^{+i phase} sigma_-) and sideband pulses as
/// a factor e^{-i phase} on the a tau_+ coupling.
struct PulseSpec {
    PulseKind kind;
    double rabi;
    double detuning = 0.0;
    double phase = 0.0;
    double duration = 0.0;
};

struct IonRegister {
    JointState state; // dims {2, n_max + 1, 2}

    int n_max() const { return state.dims[1] - 1; }
    Complex amp(int ion1, int n, int ion2) const;
    Complex& amp(int ion1, int n, int ion2);

    /// Population in the top CM level (both ions, summed).
    double top_cm_population() const;
    /// Probability that ion 2 is NOT in |down_r>.
    double ion2_excited_population() const;
};

/// alpha|g> + beta|e> expressed on the ion-1 basis:
/// amplitude of |down> = (beta - alpha)/sqrt(2), of |up> = (alpha + beta)/sqrt(2).
void logical_to_ion(Complex alpha, Complex beta, Complex& amp_down,
                    Complex& amp_up);
/// Inverse of logical_to_ion.
void ion_to_logical(Complex amp_down, Complex amp_up, Complex& alpha,
                    Complex& beta);

/// Product register (logical qubit on ion 1) x (CM pointer) x |down_r>.
IonRegister make_register(const QubitState& logical,
                          const FockPointerState& cm);

/// Exact evolution under the detuned first-red-sideband coupling on ion 1
/// (see the block solution above). Requires the top CM level to be empty
/// (population <= 1e-8), since the sideband moves occupation by one; throws
/// TruncationError otherwise.
IonRegister jc_evolve(const IonRegister& reg, const PulseSpec& pulse);

/// Dispersive limit of the sideband drive: exp(-i g0 t a^dag a tau_z),
/// diagonal in the product basis. g0 = Omega^2/delta.
IonRegister effective_evolve(const IonRegister& reg, double g0, double t);

/// Frame rotation exp(+i g0 t |up><up|) that removes the Stark phase left
/// over when comparing the full sideband evolution against effective_evolve.
IonRegister stark_compensation(const IonRegister& reg, double g0, double t);

/// Internal rotation of ion 1 only: exp(-i Omega_s t (e^{-i theta} sigma_+ +
/// e^{+i theta} sigma_-)). With Omega_s t = pi/4, theta = -pi/2 it maps the
/// logical basis onto the measurement basis: |e> -> |up>, |g> -> -|down>.
IonRegister carrier_rotation(const IonRegister& reg, const PulseSpec& pulse);

/// Resonant sideband pulse on ion 2 mapping the CM occupation onto ion 2:
/// with Omega_r t = pi/2, |0>|down_r> -> |0>|down_r> and
/// |1>|down_r> -> -i |0>|up_r>. Requires ion 2 in |down_r> (<= 1e-10
/// excited population); higher CM components rotate with sqrt(n) scaling and
/// show up as leakage.
IonRegister readout_map(const IonRegister& reg, const PulseSpec& pulse);

/// Population left outside the ideal readout image (CM index >= 1).
double readout_leakage(const IonRegister& reg);

/// Fluorescence probability of the electron-shelving readout, modeled as an
/// ideal projective measurement: the ion lights up iff it sits in the upper
/// state (|up> for ion 1, |up_r> for ion 2).
struct ShelvingReadout {
    double p_fluoresce;
    int target_ion; // 1 or 2
};

ShelvingReadout shelving_readout(const IonRegister& reg, int target_ion);

enum class CouplingMode { effective, full_jc };

struct FullJcParams {
    double omega0;
    double delta;
};

struct IonProtocolResult {
    double p_up_r;      // P(ion 2 fluoresces) = I_1
    double p_up_r_down; // P(up_r and ion 1 down) = I_1 |eta_g1|^2
    double p_up_r_up;   // P(up_r and ion 1 up)   = I_1 |eta_e1|^2
    double leakage;

    IntensityReport as_report(const QubitState& s0) const;
};

/// Full measurement protocol: prepare, weak coupling (effective or full
/// sideband with Stark compensation), carrier mapping pulse, readout pulse,
/// projective readout. The CM pointer must be supported on {|0>, |1>}.
/// In effective mode the returned triple reproduces the exact-engine
/// (I_1, I_1 |eta_g1|^2, I_1 |eta_e1|^2) to machine precision.
IonProtocolResult run_ion_protocol(const QubitState& s0,
                                   const FockPointerState& phi0, double g,
                                   CouplingMode mode,
                                   std::optional<FullJcParams> jc = {});

} // namespace weakmeas
