#include "weakmeas/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "weakmeas/weak_values.hpp"

namespace weakmeas {

namespace {

struct RawEntry {
    std::string value;
    int line;
};

struct RawConfig {
    // section.key -> occurrences in file order
    std::map<std::string, std::vector<RawEntry>> entries;
};

const std::map<std::string, std::vector<std::string>>& known_keys() {
    static const std::map<std::string, std::vector<std::string>> keys = {
        {"experiment", {"type"}},
        {"qubit", {"alpha_re", "alpha_im", "beta_re", "beta_im"}},
        {"pointer", {"n_max", "c", "m"}},
        {"coupling", {"g", "g0", "t"}},
        {"sweep", {"param", "start", "stop", "points", "scale"}},
        {"ion", {"omega0", "delta", "omega_s", "theta", "omega_r", "mode"}},
        {"sampling", {"shots", "seed"}},
        {"output", {"path", "format"}},
    };
    return keys;
}

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string strip_comment(const std::string& line) {
    // '#' starts a comment at line start or after whitespace.
    for (std::size_t i = 0; i < line.size(); ++i)
        if (line[i] == '#' && (i == 0 || line[i - 1] == ' ' || line[i - 1] == '\t'))
            return line.substr(0, i);
    return line;
}

class Issues {
  public:
    void add(const std::string& msg) { list_.push_back(msg); }
    void add_line(int line, const std::string& msg) {
        std::ostringstream out;
        out << "line " << line << ": " << msg;
        list_.push_back(out.str());
    }
    bool empty() const { return list_.empty(); }
    std::vector<std::string> take() { return std::move(list_); }

  private:
    std::vector<std::string> list_;
};

RawConfig tokenize(const std::string& text, Issues& issues) {
    RawConfig raw;
    std::istringstream in(text);
    std::string line;
    std::string section;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string body = trim(strip_comment(line));
        if (body.empty()) continue;
        if (body.front() == '[') {
            if (body.back() != ']') {
                issues.add_line(line_no, "malformed section header '" + body + "'");
                continue;
            }
            section = trim(body.substr(1, body.size() - 2));
            if (known_keys().find(section) == known_keys().end())
                issues.add_line(line_no, "unknown section [" + section + "]");
            continue;
        }
        std::size_t eq = body.find('=');
        if (eq == std::string::npos) {
            issues.add_line(line_no, "expected 'key = value', got '" + body + "'");
            continue;
        }
        std::string key = trim(body.substr(0, eq));
        std::string value = trim(body.substr(eq + 1));
        if (section.empty()) {
            issues.add_line(line_no, "key '" + key + "' appears before any section");
            continue;
        }
        auto section_it = known_keys().find(section);
        if (section_it != known_keys().end()) {
            const auto& allowed = section_it->second;
            if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
                issues.add_line(line_no, "unknown key '" + section + "." + key + "'");
                continue;
            }
        }
        raw.entries[section + "." + key].push_back({value, line_no});
    }
    return raw;
}

class Reader {
  public:
    Reader(const RawConfig& raw, Issues& issues) : raw_(raw), issues_(issues) {}

    bool has(const std::string& key) const {
        return raw_.entries.find(key) != raw_.entries.end();
    }

    const std::vector<RawEntry>* all(const std::string& key) const {
        auto it = raw_.entries.find(key);
        return it == raw_.entries.end() ? nullptr : &it->second;
    }

    // Single-valued key; duplicate occurrences are reported.
    const RawEntry* single(const std::string& key) {
        auto it = raw_.entries.find(key);
        if (it == raw_.entries.end()) return nullptr;
        if (it->second.size() > 1)
            issues_.add("key '" + key + "' given " +
                        std::to_string(it->second.size()) + " times");
        return &it->second.front();
    }

    std::optional<double> number(const std::string& key) {
        const RawEntry* e = single(key);
        if (e == nullptr) return std::nullopt;
        char* end = nullptr;
        double v = std::strtod(e->value.c_str(), &end);
        if (end == e->value.c_str() || *end != '\0' || !std::isfinite(v)) {
            issues_.add_line(e->line, "key '" + key + "': expected a finite number, got '" +
                                          e->value + "'");
            return std::nullopt;
        }
        return v;
    }

    std::optional<long long> integer(const std::string& key) {
        const RawEntry* e = single(key);
        if (e == nullptr) return std::nullopt;
        char* end = nullptr;
        long long v = std::strtoll(e->value.c_str(), &end, 10);
        if (end == e->value.c_str() || *end != '\0') {
            issues_.add_line(e->line,
                             "key '" + key + "': expected an integer, got '" + e->value + "'");
            return std::nullopt;
        }
        return v;
    }

    std::optional<uint64_t> unsigned_integer(const std::string& key) {
        const RawEntry* e = single(key);
        if (e == nullptr) return std::nullopt;
        char* end = nullptr;
        unsigned long long v = std::strtoull(e->value.c_str(), &end, 10);
        if (end == e->value.c_str() || *end != '\0' ||
            e->value.find('-') != std::string::npos) {
            issues_.add_line(e->line, "key '" + key +
                                          "': expected a nonnegative integer, got '" +
                                          e->value + "'");
            return std::nullopt;
        }
        return static_cast<uint64_t>(v);
    }

    std::optional<std::string> text(const std::string& key) {
        const RawEntry* e = single(key);
        if (e == nullptr) return std::nullopt;
        return e->value;
    }

  private:
    const RawConfig& raw_;
    Issues& issues_;
};

std::optional<ExperimentKind> parse_kind(const std::string& name) {
    if (name == "weak_value") return ExperimentKind::weak_value;
    if (name == "intensity_sweep") return ExperimentKind::intensity_sweep;
    if (name == "exact_vs_first_order") return ExperimentKind::exact_vs_first_order;
    if (name == "ion_protocol") return ExperimentKind::ion_protocol;
    if (name == "estimate") return ExperimentKind::estimate;
    return std::nullopt;
}

bool needs_pointer(ExperimentKind kind) {
    return kind != ExperimentKind::weak_value;
}

bool needs_coupling(ExperimentKind kind) {
    return kind != ExperimentKind::weak_value;
}

} // namespace

const char* to_string(ExperimentKind kind) {
    switch (kind) {
        case ExperimentKind::weak_value: return "weak_value";
        case ExperimentKind::intensity_sweep: return "intensity_sweep";
        case ExperimentKind::exact_vs_first_order: return "exact_vs_first_order";
        case ExperimentKind::ion_protocol: return "ion_protocol";
        case ExperimentKind::estimate: return "estimate";
    }
    return "?";
}

std::vector<double> SweepSpec::values() const {
    std::vector<double> v(static_cast<std::size_t>(points));
    if (log_scale) {
        const double ls = std::log(start), le = std::log(stop);
        for (int i = 0; i < points; ++i)
            v[static_cast<std::size_t>(i)] =
                std::exp(ls + (le - ls) * i / (points - 1));
    } else {
        for (int i = 0; i < points; ++i)
            v[static_cast<std::size_t>(i)] =
                start + (stop - start) * i / (points - 1);
    }
    return v;
}

double ExperimentConfig::coupling_g() const {
    if (g.has_value()) return CouplingSpec::from_dimensionless(*g).g;
    if (g0.has_value() && t.has_value())
        return CouplingSpec::from_rate_and_duration(*g0, *t).g;
    throw ValidationError("config has no coupling strength");
}

QubitState ExperimentConfig::qubit() const {
    return QubitState::normalized(alpha, beta);
}

FockPointerState ExperimentConfig::pointer() const {
    return FockPointerState::from_components(pointer_components, n_max);
}

ExperimentConfig parse_config(const std::string& text) {
    Issues issues;
    RawConfig raw = tokenize(text, issues);
    Reader reader(raw, issues);

    ExperimentConfig cfg;
    cfg.source_text = text;

    std::optional<ExperimentKind> kind;
    if (auto type = reader.text("experiment.type")) {
        kind = parse_kind(*type);
        if (!kind.has_value())
            issues.add("experiment.type '" + *type +
                       "' is not one of weak_value, intensity_sweep, "
                       "exact_vs_first_order, ion_protocol, estimate");
    } else {
        issues.add("missing experiment.type");
    }
    if (kind.has_value()) cfg.experiment = *kind;

    // qubit (required by every experiment)
    {
        auto a_re = reader.number("qubit.alpha_re");
        auto a_im = reader.number("qubit.alpha_im");
        auto b_re = reader.number("qubit.beta_re");
        auto b_im = reader.number("qubit.beta_im");
        if (!a_re || !a_im || !b_re || !b_im) {
            issues.add("every experiment requires [qubit] alpha_re, alpha_im, "
                       "beta_re, beta_im");
        } else {
            cfg.alpha = Complex{*a_re, *a_im};
            cfg.beta = Complex{*b_re, *b_im};
            if (std::norm(cfg.alpha) + std::norm(cfg.beta) == 0.0)
                issues.add("qubit amplitudes are all zero");
        }
    }

    // pointer
    if (auto n_max = reader.integer("pointer.n_max")) {
        if (*n_max < 0 || *n_max > 4095)
            issues.add("pointer.n_max must be in [0, 4095]");
        else
            cfg.n_max = static_cast<int>(*n_max);
    } else if (kind.has_value() && needs_pointer(*kind)) {
        issues.add(std::string("experiment '") + to_string(*kind) +
                   "' requires [pointer] n_max and c components");
    }
    if (const auto* comps = reader.all("pointer.c")) {
        for (const RawEntry& e : *comps) {
            std::istringstream in(e.value);
            int n = 0;
            double re = 0.0, im = 0.0;
            if (!(in >> n >> re >> im) || !(in >> std::ws).eof()) {
                issues.add_line(e.line,
                                "pointer.c expects 'n re im', got '" + e.value + "'");
                continue;
            }
            if (n < 0 || n > cfg.n_max) {
                issues.add_line(e.line, "pointer.c index " + std::to_string(n) +
                                            " outside [0, n_max]");
                continue;
            }
            cfg.pointer_components.emplace_back(n, Complex{re, im});
        }
        if (!cfg.pointer_components.empty()) {
            double norm2 = 0.0;
            for (const auto& [n, c] : cfg.pointer_components) norm2 += std::norm(c);
            if (norm2 == 0.0) issues.add("pointer amplitudes are all zero");
        }
    }
    if (kind.has_value() && needs_pointer(*kind) && cfg.pointer_components.empty())
        issues.add(std::string("experiment '") + to_string(*kind) +
                   "' requires at least one pointer.c component");
    if (auto m = reader.integer("pointer.m")) {
        if (*m < 0 || *m > cfg.n_max)
            issues.add("pointer.m must be in [0, n_max]");
        else
            cfg.measure_m = static_cast<int>(*m);
    }

    // coupling: g, or g0 and t, or both when consistent
    {
        auto g = reader.number("coupling.g");
        auto g0 = reader.number("coupling.g0");
        auto t = reader.number("coupling.t");
        if (g0.has_value() != t.has_value())
            issues.add("coupling.g0 and coupling.t must be given together");
        if (g.has_value() && g0.has_value() && t.has_value()) {
            const double product = *g0 * *t;
            if (std::abs(*g - product) > 1e-15 * std::max(1.0, std::abs(*g)))
                issues.add("inconsistent coupling: g = " + std::to_string(*g) +
                           " but g0*t = " + std::to_string(product));
        }
        if (g.has_value() && *g < 0.0) issues.add("coupling.g must be >= 0");
        cfg.g = g;
        cfg.g0 = g0;
        cfg.t = t;
        const bool swept_g = reader.has("sweep.param");
        if (kind.has_value() && needs_coupling(*kind) && !g.has_value() &&
            !(g0.has_value() && t.has_value()) && !swept_g)
            issues.add(std::string("experiment '") + to_string(*kind) +
                       "' requires [coupling] g (or g0 and t), or a sweep over g");
    }

    // sweep
    if (reader.has("sweep.param") || reader.has("sweep.start") ||
        reader.has("sweep.stop") || reader.has("sweep.points") ||
        reader.has("sweep.scale")) {
        SweepSpec sweep;
        bool ok = true;
        if (auto param = reader.text("sweep.param")) {
            if (*param != "g" && *param != "delta" && *param != "seed") {
                issues.add("sweep.param must be g, delta, or seed");
                ok = false;
            } else {
                sweep.param = *param;
            }
        } else {
            issues.add("[sweep] requires param");
            ok = false;
        }
        auto start = reader.number("sweep.start");
        auto stop = reader.number("sweep.stop");
        auto points = reader.integer("sweep.points");
        if (!start || !stop || !points) {
            issues.add("[sweep] requires start, stop, points");
            ok = false;
        } else {
            sweep.start = *start;
            sweep.stop = *stop;
            if (*points < 2) {
                issues.add("sweep.points must be >= 2, got " + std::to_string(*points));
                ok = false;
            } else {
                sweep.points = static_cast<int>(*points);
            }
        }
        if (auto scale = reader.text("sweep.scale")) {
            if (*scale == "log")
                sweep.log_scale = true;
            else if (*scale != "linear") {
                issues.add("sweep.scale must be linear or log");
                ok = false;
            }
        }
        if (sweep.log_scale && ok && (sweep.start <= 0.0 || sweep.stop <= 0.0)) {
            issues.add("log sweep requires positive start and stop");
            ok = false;
        }
        if (ok) cfg.sweep = sweep;
    }

    // ion
    const bool has_ion_section =
        reader.has("ion.omega0") || reader.has("ion.delta") ||
        reader.has("ion.omega_s") || reader.has("ion.theta") ||
        reader.has("ion.omega_r") || reader.has("ion.mode");
    if (kind.has_value() && *kind == ExperimentKind::ion_protocol && !has_ion_section)
        issues.add("experiment 'ion_protocol' requires [ion] omega0 and mode "
                   "(delta too for full_jc)");
    if (has_ion_section) {
        IonConfig ion;
        if (auto v = reader.number("ion.omega0")) {
            if (*v <= 0.0) issues.add("ion.omega0 must be > 0");
            ion.omega0 = *v;
        } else {
            issues.add("[ion] requires omega0");
        }
        if (auto v = reader.number("ion.delta")) ion.delta = *v;
        if (auto v = reader.number("ion.omega_s")) {
            if (*v <= 0.0) issues.add("ion.omega_s must be > 0");
            ion.omega_s = *v;
        }
        if (auto v = reader.number("ion.theta")) ion.theta = *v;
        if (auto v = reader.number("ion.omega_r")) {
            if (*v <= 0.0) issues.add("ion.omega_r must be > 0");
            ion.omega_r = *v;
        }
        if (auto mode = reader.text("ion.mode")) {
            if (*mode == "full_jc")
                ion.full_jc = true;
            else if (*mode != "effective")
                issues.add("ion.mode must be effective or full_jc");
        } else {
            issues.add("[ion] requires mode (effective or full_jc)");
        }
        const bool sweeps_delta =
            cfg.sweep.has_value() && cfg.sweep->param == "delta";
        if (ion.full_jc && ion.delta == 0.0 && !sweeps_delta)
            issues.add("ion.mode = full_jc requires a nonzero ion.delta "
                       "(or a sweep over delta)");
        cfg.ion = ion;
    }

    // sampling
    const bool has_sampling = reader.has("sampling.shots") || reader.has("sampling.seed");
    if (kind.has_value() && *kind == ExperimentKind::estimate && !has_sampling)
        issues.add("experiment 'estimate' requires [sampling] shots and seed");
    if (has_sampling) {
        SamplingConfig sampling;
        if (auto shots = reader.unsigned_integer("sampling.shots")) {
            if (*shots == 0) issues.add("sampling.shots must be >= 1");
            sampling.shots = *shots;
        } else {
            issues.add("[sampling] requires shots");
        }
        if (auto seed = reader.unsigned_integer("sampling.seed")) sampling.seed = *seed;
        cfg.sampling = sampling;
    }

    // output
    if (auto path = reader.text("output.path")) cfg.output_path = *path;
    if (auto format = reader.text("output.format")) {
        if (*format == "json")
            cfg.format = OutputFormat::json;
        else if (*format != "csv")
            issues.add("output.format must be csv or json");
    }

    // cross checks
    if (kind.has_value() && cfg.sweep.has_value()) {
        const std::string& p = cfg.sweep->param;
        if (p == "seed" && *kind != ExperimentKind::estimate)
            issues.add("sweep over seed is only meaningful for 'estimate'");
        if (p == "delta" && *kind != ExperimentKind::ion_protocol)
            issues.add("sweep over delta is only meaningful for 'ion_protocol'");
        if (p == "g" && *kind == ExperimentKind::weak_value)
            issues.add("'weak_value' does not consume a coupling sweep");
    }

    if (!issues.empty()) {
        auto list = issues.take();
        std::ostringstream msg;
        msg << "invalid config (" << list.size() << " problem"
            << (list.size() == 1 ? "" : "s") << ")";
        throw ConfigError(msg.str(), std::move(list));
    }
    return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open config file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config(buffer.str());
}

} // namespace weakmeas
