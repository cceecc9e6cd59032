#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "weakmeas/states.hpp"

namespace weakmeas {

// Config files are flat sectioned key-value text:
//
//   # comment
//   [experiment]
//   type = intensity_sweep
//   [qubit]
//   alpha_re = 0.70710678118654752
//   alpha_im = 0
//   beta_re  = 0
//   beta_im  = 0.70710678118654752
//   [pointer]
//   n_max = 4
//   c = 0 0.70710678118654752 0      # n  re  im (repeatable)
//   c = 1 0.70710678118654752 0
//   m = 1
//   [coupling]
//   g = 0.01                          # or g0 = ... and t = ...
//   [sweep]                           # optional
//   param = g | delta | seed
//   start = 0
//   stop = 0.1
//   points = 21
//   scale = linear | log
//   [ion]                             # ion_protocol only
//   omega0 = 1
//   delta = 40
//   omega_s = 1
//   theta = -1.5707963267948966
//   omega_r = 1
//   mode = effective | full_jc
//   [sampling]                        # estimate only
//   shots = 1000000
//   seed = 42
//   [output]
//   path = out.csv
//   format = csv | json
//
// All frequencies are angular (hbar = 1), all angles radians. Validation
// collects every problem before reporting.

enum class ExperimentKind {
    weak_value,
    intensity_sweep,
    exact_vs_first_order,
    ion_protocol,
    estimate,
};

enum class OutputFormat { csv, json };

struct SweepSpec {
    std::string param;
    double start = 0.0;
    double stop = 0.0;
    int points = 0;
    bool log_scale = false;

    std::vector<double> values() const;
};

struct IonConfig {
    double omega0 = 1.0;
    double delta = 0.0;
    double omega_s = 1.0;
    double theta = -1.5707963267948966; // carrier phase for |e> -> |up>
    double omega_r = 1.0;
    bool full_jc = false;
};

struct SamplingConfig {
    uint64_t shots = 0;
    uint64_t seed = 0;
};

struct ExperimentConfig {
    ExperimentKind experiment = ExperimentKind::weak_value;

    Complex alpha{1.0, 0.0};
    Complex beta{0.0, 0.0};

    std::vector<std::pair<int, Complex>> pointer_components;
    int n_max = 16;
    int measure_m = 1;

    std::optional<double> g;
    std::optional<double> g0;
    std::optional<double> t;

    std::optional<SweepSpec> sweep;
    std::optional<IonConfig> ion;
    std::optional<SamplingConfig> sampling;

    std::string output_path;
    OutputFormat format = OutputFormat::csv;

    /// Raw text the config was parsed from; echoed into result metadata so
    /// every output file can be reproduced from itself.
    std::string source_text;

    double coupling_g() const; // resolved from g or g0 * t
    QubitState qubit() const;
    FockPointerState pointer() const;
};

/// Parses and fully validates a config document. Throws ConfigError carrying
/// the complete list of problems (unknown keys are named; missing keys are
/// reported against the chosen experiment's requirements).
ExperimentConfig parse_config(const std::string& text);

ExperimentConfig parse_config_file(const std::string& path);

const char* to_string(ExperimentKind kind);

} // namespace weakmeas
