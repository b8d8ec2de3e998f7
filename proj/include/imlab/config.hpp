// Experiment configuration: a strict line-oriented `key = value` format
// with `#` comments. Unknown keys, malformed values, and violated
// invariants are all errors that cite the offending line.
//
// Keys (defaults in parentheses):
//   experiment        one of: simulate, decompose, energy, sweep-gap,
//                     sweep-conservation, smoothing, check-symbols,
//                     check-geometry, strichartz, exponents   [required]
//   dim               lattice dimension 1..3 (1)
//   modes             modes per axis, even, >= 4 (32)
//   box_length        periodic box length (6.283185307179586, i.e. 2*pi)
//   dt                time step (0.001)
//   t_end             final time (1.0)
//   record_stride     steps between recorded samples (10)
//   dealias           true/false, spectrally exact cubic (true)
//   N                 filter threshold frequency (8)
//   s                 filter regularity, in (1/2, 1); exact `p/q` or
//                     decimal accepted (7/10)
//   theta0_exponent   angle-cut scale t in theta0 = N^t, <= 0 (-7/8)
//   seed              RNG seed, unsigned (1)
//   data              initial data: gaussian(amplitude, width)
//                     | planewave(mode, amplitude)
//                     | random_bandlimited(cutoff, amplitude)
//                     bare names take all defaults (gaussian(1, 0.5))
//   N_list            comma list for sweep experiments (2,4,8,16)
//   Nj_list           comma list of projection cutoffs for smoothing
//                     (2,4,8,16)
//   n_samples         sample count for the bound/report experiments (2000)
#pragma once

#include <cctype>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "imlab/grid.hpp"
#include "imlab/rational.hpp"

namespace imlab {

// Configuration mistakes; the orchestrator maps these to exit code 2.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Experiment {
    Simulate,
    Decompose,
    Energy,
    SweepGap,
    SweepConservation,
    Smoothing,
    CheckSymbols,
    CheckGeometry,
    Strichartz,
    Exponents,
};

inline std::string experiment_name(Experiment e) {
    switch (e) {
        case Experiment::Simulate: return "simulate";
        case Experiment::Decompose: return "decompose";
        case Experiment::Energy: return "energy";
        case Experiment::SweepGap: return "sweep-gap";
        case Experiment::SweepConservation: return "sweep-conservation";
        case Experiment::Smoothing: return "smoothing";
        case Experiment::CheckSymbols: return "check-symbols";
        case Experiment::CheckGeometry: return "check-geometry";
        case Experiment::Strichartz: return "strichartz";
        case Experiment::Exponents: return "exponents";
    }
    return "?";
}

enum class DataKind { Gaussian, PlaneWave, RandomBandlimited };

struct DataSpec {
    DataKind kind = DataKind::Gaussian;
    double amplitude = 1.0;
    double width = 0.5;   // gaussian
    int mode = 1;         // planewave, axis-0 mode number
    double cutoff = 8.0;  // random_bandlimited, frequency radius
};

struct ExperimentConfig {
    Experiment experiment = Experiment::Energy;
    bool experiment_set = false;
    int dim = 1;
    int modes = 32;
    double box_length = kTwoPi;
    double dt = 1e-3;
    double t_end = 1.0;
    int record_stride = 10;
    bool dealias = true;
    double N = 8.0;
    Rational s_exact = Rational(7, 10);
    Rational theta0_exponent = Rational(-7, 8);
    std::uint64_t seed = 1;
    DataSpec data;
    std::vector<double> n_list = {2.0, 4.0, 8.0, 16.0};
    std::vector<double> nj_list = {2.0, 4.0, 8.0, 16.0};
    std::uint64_t n_samples = 2000;

    double s() const { return s_exact.to_double(); }
    Grid grid() const { return make_grid(dim, modes, box_length); }
};

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

[[noreturn]] inline void fail(const std::string& where, const std::string& msg) {
    throw ConfigError(where + ": " + msg);
}

inline long long parse_int(const std::string& where, const std::string& key,
                           const std::string& value) {
    std::size_t pos = 0;
    long long v = 0;
    try {
        v = std::stoll(value, &pos);
    } catch (const std::exception&) {
        fail(where, key + ": expected integer, got '" + value + "'");
    }
    if (pos != value.size()) fail(where, key + ": expected integer, got '" + value + "'");
    return v;
}

inline std::uint64_t parse_u64(const std::string& where, const std::string& key,
                               const std::string& value) {
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
        v = std::stoull(value, &pos);
    } catch (const std::exception&) {
        fail(where, key + ": expected unsigned integer, got '" + value + "'");
    }
    if (pos != value.size() || value.find('-') != std::string::npos)
        fail(where, key + ": expected unsigned integer, got '" + value + "'");
    return v;
}

inline double parse_double(const std::string& where, const std::string& key,
                           const std::string& value) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(value, &pos);
    } catch (const std::exception&) {
        fail(where, key + ": expected number, got '" + value + "'");
    }
    if (pos != value.size()) fail(where, key + ": expected number, got '" + value + "'");
    return v;
}

inline bool parse_bool(const std::string& where, const std::string& key,
                       const std::string& value) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    fail(where, key + ": expected true/false, got '" + value + "'");
}

// Exact rational from `p/q`, integer, or plain decimal text (decimals are
// converted exactly, e.g. -0.875 -> -7/8).
inline Rational parse_exact(const std::string& where, const std::string& key,
                            const std::string& value) {
    if (value.find('/') != std::string::npos) {
        try {
            return Rational::parse(value);
        } catch (const std::exception& e) {
            fail(where, key + ": " + e.what());
        }
    }
    std::string digits;
    std::int64_t den = 1;
    bool negative = false;
    bool seen_point = false;
    std::size_t i = 0;
    if (i < value.size() && (value[i] == '+' || value[i] == '-')) {
        negative = value[i] == '-';
        ++i;
    }
    for (; i < value.size(); ++i) {
        const char c = value[i];
        if (c == '.') {
            if (seen_point) fail(where, key + ": expected number, got '" + value + "'");
            seen_point = true;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            digits.push_back(c);
            if (seen_point) {
                if (den > 100000000000000000LL)
                    fail(where, key + ": too many decimal digits in '" + value + "'");
                den *= 10;
            }
        } else {
            fail(where, key + ": expected exact number (p/q or decimal), got '" + value + "'");
        }
    }
    if (digits.empty()) fail(where, key + ": expected number, got '" + value + "'");
    if (digits.size() > 18) fail(where, key + ": too many digits in '" + value + "'");
    std::int64_t num = 0;
    for (char c : digits) num = num * 10 + (c - '0');
    return Rational(negative ? -num : num, den);
}

inline std::vector<double> parse_double_list(const std::string& where, const std::string& key,
                                             const std::string& value) {
    std::vector<double> out;
    std::size_t start = 0;
    while (start <= value.size()) {
        const std::size_t comma = value.find(',', start);
        const std::string item =
            trim(value.substr(start, comma == std::string::npos ? std::string::npos
                                                                : comma - start));
        if (item.empty()) fail(where, key + ": empty list entry");
        out.push_back(parse_double(where, key, item));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (out.empty()) fail(where, key + ": list must be nonempty");
    return out;
}

inline Experiment parse_experiment(const std::string& where, const std::string& value) {
    static const std::map<std::string, Experiment> names = {
        {"simulate", Experiment::Simulate},
        {"decompose", Experiment::Decompose},
        {"energy", Experiment::Energy},
        {"sweep-gap", Experiment::SweepGap},
        {"sweep-conservation", Experiment::SweepConservation},
        {"smoothing", Experiment::Smoothing},
        {"check-symbols", Experiment::CheckSymbols},
        {"check-geometry", Experiment::CheckGeometry},
        {"strichartz", Experiment::Strichartz},
        {"exponents", Experiment::Exponents},
    };
    const auto it = names.find(value);
    if (it == names.end()) {
        std::string known;
        for (const auto& [name, _] : names) {
            if (!known.empty()) known += ", ";
            known += name;
        }
        fail(where, "experiment: unknown experiment '" + value + "' (known: " + known + ")");
    }
    return it->second;
}

// data = name | name(arg, arg); arguments are positional and optional.
inline DataSpec parse_data(const std::string& where, const std::string& value) {
    std::string name = value;
    std::vector<std::string> args;
    const std::size_t open = value.find('(');
    if (open != std::string::npos) {
        if (value.back() != ')') fail(where, "data: missing ')' in '" + value + "'");
        name = trim(value.substr(0, open));
        const std::string inner = value.substr(open + 1, value.size() - open - 2);
        if (!trim(inner).empty()) {
            std::size_t start = 0;
            while (start <= inner.size()) {
                const std::size_t comma = inner.find(',', start);
                args.push_back(trim(inner.substr(
                    start, comma == std::string::npos ? std::string::npos : comma - start)));
                if (comma == std::string::npos) break;
                start = comma + 1;
            }
        }
    }
    DataSpec spec;
    if (name == "gaussian") {
        spec.kind = DataKind::Gaussian;
        if (args.size() > 2) fail(where, "data: gaussian takes (amplitude, width)");
        if (args.size() > 0) spec.amplitude = parse_double(where, "data amplitude", args[0]);
        if (args.size() > 1) spec.width = parse_double(where, "data width", args[1]);
    } else if (name == "planewave") {
        spec.kind = DataKind::PlaneWave;
        if (args.size() > 2) fail(where, "data: planewave takes (mode, amplitude)");
        if (args.size() > 0)
            spec.mode = static_cast<int>(parse_int(where, "data mode", args[0]));
        if (args.size() > 1) spec.amplitude = parse_double(where, "data amplitude", args[1]);
    } else if (name == "random_bandlimited") {
        spec.kind = DataKind::RandomBandlimited;
        if (args.size() > 2) fail(where, "data: random_bandlimited takes (cutoff, amplitude)");
        if (args.size() > 0) spec.cutoff = parse_double(where, "data cutoff", args[0]);
        if (args.size() > 1) spec.amplitude = parse_double(where, "data amplitude", args[1]);
    } else {
        fail(where, "data: unknown initial data '" + name +
                        "' (known: gaussian, planewave, random_bandlimited)");
    }
    return spec;
}

}  // namespace detail

// Applies one `key = value` binding. `where` names the source for error
// messages ("line 7", "override 2").
inline void apply_config_entry(ExperimentConfig& cfg, const std::string& key,
                               const std::string& value, const std::string& where) {
    using namespace detail;
    if (key == "experiment") {
        cfg.experiment = parse_experiment(where, value);
        cfg.experiment_set = true;
    } else if (key == "dim") {
        cfg.dim = static_cast<int>(parse_int(where, key, value));
    } else if (key == "modes") {
        cfg.modes = static_cast<int>(parse_int(where, key, value));
    } else if (key == "box_length") {
        cfg.box_length = parse_double(where, key, value);
    } else if (key == "dt") {
        cfg.dt = parse_double(where, key, value);
    } else if (key == "t_end") {
        cfg.t_end = parse_double(where, key, value);
    } else if (key == "record_stride") {
        cfg.record_stride = static_cast<int>(parse_int(where, key, value));
    } else if (key == "dealias") {
        cfg.dealias = parse_bool(where, key, value);
    } else if (key == "N") {
        cfg.N = parse_double(where, key, value);
    } else if (key == "s") {
        cfg.s_exact = parse_exact(where, key, value);
    } else if (key == "theta0_exponent") {
        cfg.theta0_exponent = parse_exact(where, key, value);
    } else if (key == "seed") {
        cfg.seed = parse_u64(where, key, value);
    } else if (key == "data") {
        cfg.data = parse_data(where, value);
    } else if (key == "N_list") {
        cfg.n_list = parse_double_list(where, key, value);
    } else if (key == "Nj_list") {
        cfg.nj_list = parse_double_list(where, key, value);
    } else if (key == "n_samples") {
        cfg.n_samples = parse_u64(where, key, value);
    } else {
        fail(where, "unknown key '" + key + "'");
    }
}

// Cross-field invariants. `loc` maps a key to the source location that last
// set it, so violations cite the responsible line.
inline void validate_config(const ExperimentConfig& cfg,
                            const std::map<std::string, std::string>& loc) {
    using detail::fail;
    auto at = [&loc](const std::string& key) {
        const auto it = loc.find(key);
        return it == loc.end() ? std::string("config (default for '" + key + "')") : it->second;
    };
    if (!cfg.experiment_set) throw ConfigError("config: required key 'experiment' is missing");
    if (cfg.dim < 1 || cfg.dim > 3) fail(at("dim"), "dim must be 1, 2, or 3");
    if (cfg.modes < 4 || cfg.modes % 2 != 0)
        fail(at("modes"), "modes must be an even integer >= 4 (frequency bands pair +k with -k), got " +
                              std::to_string(cfg.modes));
    if (!(cfg.box_length > 0.0)) fail(at("box_length"), "box_length must be positive");
    if (!(cfg.dt > 0.0)) fail(at("dt"), "dt must be positive");
    if (!(cfg.t_end >= 0.0)) fail(at("t_end"), "t_end must be nonnegative");
    if (cfg.record_stride < 1) fail(at("record_stride"), "record_stride must be >= 1");
    if (!(cfg.N > 0.0)) fail(at("N"), "N must be positive");
    if (!(cfg.s_exact > Rational(1, 2) && cfg.s_exact < Rational(1)))
        fail(at("s"), "s must lie strictly between 1/2 and 1");
    if (cfg.theta0_exponent > Rational(0))
        fail(at("theta0_exponent"), "theta0_exponent must be <= 0");
    auto check_list = [&](const std::vector<double>& v, const std::string& key) {
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (!(v[i] > 0.0)) fail(at(key), key + " entries must be positive");
            if (i > 0 && !(v[i] > v[i - 1]))
                fail(at(key), key + " entries must be strictly increasing");
        }
    };
    check_list(cfg.n_list, "N_list");
    check_list(cfg.nj_list, "Nj_list");
    if ((cfg.experiment == Experiment::SweepGap ||
         cfg.experiment == Experiment::SweepConservation) &&
        cfg.n_list.size() < 4)
        fail(at("N_list"), "N_list needs at least 4 entries to fit a slope");
    if (cfg.experiment == Experiment::Smoothing) {
        if (cfg.nj_list.size() < 4)
            fail(at("Nj_list"), "Nj_list needs at least 4 entries to fit a slope");
        for (double nj : cfg.nj_list)
            if (nj > cfg.N)
                fail(at("Nj_list"), "Nj_list entries must not exceed N");
    }
    if ((cfg.experiment == Experiment::CheckSymbols ||
         cfg.experiment == Experiment::CheckGeometry) &&
        cfg.n_samples < 1000)
        fail(at("n_samples"), "n_samples must be >= 1000 for bound reports");
    if (cfg.experiment == Experiment::Strichartz && cfg.n_samples < 1)
        fail(at("n_samples"), "n_samples must be >= 1");
    if (cfg.data.kind == DataKind::Gaussian && !(cfg.data.width > 0.0))
        fail(at("data"), "data: gaussian width must be positive");
    if (cfg.data.kind == DataKind::PlaneWave &&
        (cfg.data.mode < -cfg.modes / 2 || cfg.data.mode > cfg.modes / 2 - 1))
        fail(at("data"), "data: planewave mode " + std::to_string(cfg.data.mode) +
                             " is outside the band [-modes/2, modes/2-1]");
    if (cfg.data.kind == DataKind::RandomBandlimited && !(cfg.data.cutoff > 0.0))
        fail(at("data"), "data: random_bandlimited cutoff must be positive");
}

// Parses a whole config text. `overrides` are extra `key=value` bindings
// applied after the file, in order.
inline ExperimentConfig parse_config(const std::string& text,
                                     const std::vector<std::string>& overrides = {}) {
    ExperimentConfig cfg;
    std::map<std::string, std::string> loc;
    int line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t nl = text.find('\n', start);
        std::string line =
            text.substr(start, nl == std::string::npos ? std::string::npos : nl - start);
        ++line_no;
        const std::string where = "line " + std::to_string(line_no);
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = detail::trim(line);
        if (!line.empty()) {
            const std::size_t eq = line.find('=');
            if (eq == std::string::npos)
                detail::fail(where, "expected 'key = value', got '" + line + "'");
            const std::string key = detail::trim(line.substr(0, eq));
            const std::string value = detail::trim(line.substr(eq + 1));
            if (key.empty()) detail::fail(where, "missing key before '='");
            if (value.empty()) detail::fail(where, "missing value for key '" + key + "'");
            apply_config_entry(cfg, key, value, where);
            loc[key] = where;
        }
        if (nl == std::string::npos) break;
        start = nl + 1;
    }
    for (std::size_t i = 0; i < overrides.size(); ++i) {
        const std::string where = "override " + std::to_string(i + 1);
        const std::size_t eq = overrides[i].find('=');
        if (eq == std::string::npos)
            detail::fail(where, "expected key=value, got '" + overrides[i] + "'");
        const std::string key = detail::trim(overrides[i].substr(0, eq));
        const std::string value = detail::trim(overrides[i].substr(eq + 1));
        if (key.empty() || value.empty())
            detail::fail(where, "expected key=value, got '" + overrides[i] + "'");
        apply_config_entry(cfg, key, value, where);
        loc[key] = where;
    }
    validate_config(cfg, loc);
    return cfg;
}

}  // namespace imlab
