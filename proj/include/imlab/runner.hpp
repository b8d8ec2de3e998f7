// Experiment orchestration: builds initial data, dispatches the configured
// experiment, and writes machine-readable artifacts into an output
// directory.
//
// Artifact conventions:
//   - every run writes manifest.txt (config echo, seed, versions, wall
//     time) and plot.gp (gnuplot commands for the CSVs);
//   - sweep CSVs carry a header row, data rows, then `#slope=` trailer
//     comment lines;
//   - bound-report CSVs have the schema n_samples,sup_ratio,saturated and
//     carry the per-decade histogram as trailing comments;
//   - all CSV content is a pure function of the config (seed included), so
//     re-running a config reproduces every CSV byte-for-byte. Wall time
//     lives only in the manifest.
#pragma once

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "imlab/config.hpp"
#include "imlab/estimates.hpp"
#include "imlab/exponents.hpp"
#include "imlab/fft.hpp"
#include "imlab/io.hpp"
#include "imlab/lambda.hpp"
#include "imlab/norms.hpp"
#include "imlab/reduce.hpp"
#include "imlab/rng.hpp"
#include "imlab/solver.hpp"
#include "imlab/version.hpp"

namespace imlab {

namespace detail {

// Shortest-round-trip style formatting: stable across runs, exact reload.
inline std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

inline std::string fmt_u64(std::uint64_t v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%llu", static_cast<unsigned long long>(v));
    return buf;
}

class CsvWriter {
public:
    explicit CsvWriter(const std::filesystem::path& path) : os_(path) {
        if (!os_) throw std::runtime_error("cannot open for writing: " + path.string());
    }

    void row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) os_ << ',';
            os_ << cells[i];
        }
        os_ << '\n';
    }

    void comment(const std::string& text) { os_ << '#' << text << '\n'; }

    void close() {
        os_.close();
        if (os_.fail()) throw std::runtime_error("CSV write failed");
    }

private:
    std::ofstream os_;
};

inline std::string data_spec_text(const DataSpec& d) {
    switch (d.kind) {
        case DataKind::Gaussian:
            return "gaussian(" + fmt_double(d.amplitude) + ", " + fmt_double(d.width) + ")";
        case DataKind::PlaneWave:
            return "planewave(" + std::to_string(d.mode) + ", " + fmt_double(d.amplitude) + ")";
        case DataKind::RandomBandlimited:
            return "random_bandlimited(" + fmt_double(d.cutoff) + ", " + fmt_double(d.amplitude) +
                   ")";
    }
    return "?";
}

inline std::string list_text(const std::vector<double>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += fmt_double(v[i]);
    }
    return out;
}

}  // namespace detail

// Canonical `key = value` echo of the effective config; reparsable.
inline std::string serialize_config(const ExperimentConfig& cfg) {
    using detail::fmt_double;
    std::string out;
    out += "experiment = " + experiment_name(cfg.experiment) + "\n";
    out += "dim = " + std::to_string(cfg.dim) + "\n";
    out += "modes = " + std::to_string(cfg.modes) + "\n";
    out += "box_length = " + fmt_double(cfg.box_length) + "\n";
    out += "dt = " + fmt_double(cfg.dt) + "\n";
    out += "t_end = " + fmt_double(cfg.t_end) + "\n";
    out += "record_stride = " + std::to_string(cfg.record_stride) + "\n";
    out += std::string("dealias = ") + (cfg.dealias ? "true" : "false") + "\n";
    out += "N = " + fmt_double(cfg.N) + "\n";
    out += "s = " + cfg.s_exact.str() + "\n";
    out += "theta0_exponent = " + cfg.theta0_exponent.str() + "\n";
    out += "seed = " + detail::fmt_u64(cfg.seed) + "\n";
    out += "data = " + detail::data_spec_text(cfg.data) + "\n";
    out += "N_list = " + detail::list_text(cfg.n_list) + "\n";
    out += "Nj_list = " + detail::list_text(cfg.nj_list) + "\n";
    out += "n_samples = " + detail::fmt_u64(cfg.n_samples) + "\n";
    return out;
}

// Initial data synthesis. Deterministic in (config, seed).
inline Field make_initial_data(const ExperimentConfig& cfg) {
    const Grid grid = cfg.grid();
    switch (cfg.data.kind) {
        case DataKind::Gaussian: {
            Field u = Field::zero(grid);
            const double c = 0.5 * grid.box;
            const double inv2w2 = 1.0 / (2.0 * cfg.data.width * cfg.data.width);
            for (std::size_t i = 0; i < u.values.size(); ++i) {
                const auto x = site_of_flat(i, grid);
                double r2 = 0.0;
                for (int a = 0; a < grid.dim; ++a) r2 += (x[a] - c) * (x[a] - c);
                u.values[i] = Complex{cfg.data.amplitude * std::exp(-r2 * inv2w2), 0.0};
            }
            return u;
        }
        case DataKind::PlaneWave: {
            // Built in frequency space so the inverse transform yields
            // amplitude * exp(i xi0 . x) exactly.
            Spectrum s = Spectrum::zero(grid);
            const Mode k{cfg.data.mode, 0, 0};
            double scale = 1.0;
            for (int a = 0; a < grid.dim; ++a)
                scale *= std::sqrt(kTwoPi) / grid.mode_spacing();
            s.coeffs[flat_of_mode(k, grid)] = Complex{cfg.data.amplitude * scale, 0.0};
            return inverse_transform(s);
        }
        case DataKind::RandomBandlimited: {
            Spectrum s = Spectrum::zero(grid);
            Rng rng(cfg.seed);
            for (std::size_t i = 0; i < s.coeffs.size(); ++i) {
                const Mode k = mode_of_flat(i, grid);
                const auto xi = frequency_of_mode(k, grid);
                double r2 = 0.0;
                for (int a = 0; a < 3; ++a) r2 += xi[a] * xi[a];
                // Draw in flat-index order regardless of acceptance so the
                // field is a pure function of the seed.
                const auto g = rng.complex_gaussian();
                if (r2 <= cfg.data.cutoff * cfg.data.cutoff)
                    s.coeffs[i] = cfg.data.amplitude * Complex{g[0], g[1]};
            }
            return inverse_transform(s);
        }
    }
    throw std::logic_error("make_initial_data: unhandled data kind");
}

struct RunResult {
    std::vector<std::filesystem::path> artifacts;
    std::vector<std::string> summary;  // one line per headline quantity
};

namespace detail {

inline void write_bound_csv(RunResult& result, const std::filesystem::path& dir,
                            const std::string& stem, const BoundReport& report) {
    const auto path = dir / (stem + ".csv");
    CsvWriter csv(path);
    csv.row({"n_samples", "sup_ratio", "saturated"});
    csv.row({fmt_u64(report.n_samples), fmt_double(report.sup_ratio),
             report.saturated ? "true" : "false"});
    csv.comment("sup_ratio_10x=" + fmt_double(report.sup_ratio_10x));
    for (const auto& bin : report.decades)
        csv.comment("decade lo=" + fmt_double(bin.lo) + " sup=" + fmt_double(bin.sup) +
                    " count=" + fmt_u64(bin.count));
    csv.close();
    result.artifacts.push_back(path);
    result.summary.push_back(report.quantity + ": sup_ratio=" + fmt_double(report.sup_ratio) +
                             (report.saturated ? " (saturated)" : " (NOT saturated)"));
}

inline void write_sweep_csv(RunResult& result, const std::filesystem::path& dir,
                            const std::string& stem, const std::string& param_name,
                            const std::vector<const SweepReport*>& reports) {
    const auto path = dir / (stem + ".csv");
    CsvWriter csv(path);
    std::vector<std::string> header{param_name};
    for (const auto* r : reports) header.push_back(r->quantity);
    csv.row(header);
    for (std::size_t i = 0; i < reports.front()->params.size(); ++i) {
        std::vector<std::string> cells{fmt_double(reports.front()->params[i])};
        for (const auto* r : reports) cells.push_back(fmt_double(r->values[i]));
        csv.row(cells);
    }
    for (const auto* r : reports)
        csv.comment("slope=" + fmt_double(r->slope) + " quantity=" + r->quantity +
                    " fit_residual=" + fmt_double(r->fit_residual));
    csv.close();
    result.artifacts.push_back(path);
    for (const auto* r : reports)
        result.summary.push_back(r->quantity + ": slope=" + fmt_double(r->slope));
}

inline SolverConfig solver_config(const ExperimentConfig& cfg) {
    SolverConfig sc;
    sc.grid = cfg.grid();
    sc.dt = cfg.dt;
    sc.t_end = cfg.t_end;
    sc.record_stride = cfg.record_stride;
    sc.dealias = cfg.dealias;
    return sc;
}

inline std::string pair_stem(const AdmissiblePair& p) {
    auto part = [](const ExtRational& x) {
        std::string s = x.str();
        std::string out;
        for (char c : s) out += (c == '/') ? std::string("over") : std::string(1, c);
        return out;
    };
    return "q" + part(p.q) + "_r" + part(p.r);
}

}  // namespace detail

// Dispatches the configured experiment, writing artifacts into out_dir
// (created if absent). Throws ConfigError/invalid_argument for bad setups
// and runtime_error for numeric failures.
inline RunResult run_experiment(const ExperimentConfig& cfg, const std::filesystem::path& out_dir) {
    using namespace detail;
    const auto t_begin = std::chrono::steady_clock::now();
    std::filesystem::create_directories(out_dir);
    RunResult result;

    switch (cfg.experiment) {
        case Experiment::Simulate: {
            const Field u0 = make_initial_data(cfg);
            const Trajectory traj = evolve(u0, solver_config(cfg));
            const auto traj_path = out_dir / "trajectory.bin";
            save_trajectory(traj_path, traj);
            result.artifacts.push_back(traj_path);
            const auto path = out_dir / "observables.csv";
            CsvWriter csv(path);
            csv.row({"time", "mass", "energy", "filtered_energy", "sup_norm"});
            for (std::size_t i = 0; i < traj.size(); ++i) {
                const Field& u = traj.fields[i];
                csv.row({fmt_double(traj.times[i]), fmt_double(mass(u)), fmt_double(energy(u)),
                         fmt_double(energy_I(u, cfg.N, cfg.s())),
                         fmt_double(lebesgue_norm(u, ExtRational::infinity()))});
            }
            csv.close();
            result.artifacts.push_back(path);
            result.summary.push_back("recorded " + std::to_string(traj.size()) + " samples to t=" +
                                     fmt_double(traj.times.back()));
            break;
        }
        case Experiment::Decompose: {
            const Field u0 = make_initial_data(cfg);
            const Trajectory traj = evolve(u0, solver_config(cfg));
            const DecompositionResult split = duhamel_split(traj, traj.times.front());
            const auto lin_path = out_dir / "linear.bin";
            const auto nl_path = out_dir / "nonlinear.bin";
            save_trajectory(lin_path, split.linear);
            save_trajectory(nl_path, split.nonlinear);
            result.artifacts.push_back(lin_path);
            result.artifacts.push_back(nl_path);
            const auto path = out_dir / "decompose.csv";
            CsvWriter csv(path);
            csv.row({"time", "linear_l2", "nonlinear_l2", "recombination_error"});
            for (std::size_t i = 0; i < traj.size(); ++i) {
                Field recombined = split.linear.fields[i];
                for (std::size_t j = 0; j < recombined.values.size(); ++j)
                    recombined.values[j] +=
                        split.nonlinear.fields[i].values[j] - traj.fields[i].values[j];
                csv.row({fmt_double(traj.times[i]),
                         fmt_double(lebesgue_norm(split.linear.fields[i], 2.0)),
                         fmt_double(lebesgue_norm(split.nonlinear.fields[i], 2.0)),
                         fmt_double(lebesgue_norm(recombined, 2.0))});
            }
            csv.close();
            result.artifacts.push_back(path);
            result.summary.push_back(
                "nonlinear share at t_end: " +
                fmt_double(lebesgue_norm(split.nonlinear.fields.back(), 2.0)));
            break;
        }
        case Experiment::Energy: {
            const Field u0 = make_initial_data(cfg);
            const ResonanceSpec spec =
                ResonanceSpec::make(cfg.N, cfg.s(), cfg.theta0_exponent.to_double());
            const Spectrum su = transform(u0);
            const double ei = energy_I(u0, cfg.N, cfg.s());
            const double l2s = lambda2([&](const Vec3& xi) { return sigma2(xi, cfg.N, cfg.s()); },
                                       su);
            const double l4 = lambda4(sigma4_symbol(cfg.N, cfg.s()), su);
            const double l4t = lambda4(sigma4_tilde_symbol(spec), su);
            const double tilde = l2s + l4t;
            const auto path = out_dir / "energy.csv";
            CsvWriter csv(path);
            csv.row({"mass", "energy", "filtered_energy", "lambda2", "lambda4", "lambda4_tilde",
                     "modified_energy", "identity_residual", "gap"});
            csv.row({fmt_double(mass(u0)), fmt_double(energy(u0)), fmt_double(ei),
                     fmt_double(l2s), fmt_double(l4), fmt_double(l4t), fmt_double(tilde),
                     fmt_double(std::abs(ei - l2s - l4)), fmt_double(l4 - l4t)});
            csv.close();
            result.artifacts.push_back(path);
            result.summary.push_back("modified_energy=" + fmt_double(tilde) +
                                     " gap=" + fmt_double(l4 - l4t));
            break;
        }
        case Experiment::SweepGap: {
            const Field u0 = make_initial_data(cfg);
            const SweepReport report =
                pointwise_gap_sweep(u0, cfg.s(), cfg.n_list, cfg.theta0_exponent.to_double());
            write_sweep_csv(result, out_dir, "gap_sweep", "N", {&report});
            break;
        }
        case Experiment::SweepConservation: {
            const Field u0 = make_initial_data(cfg);
            const ConservationSweep sweep = conservation_sweep(
                u0, cfg.s(), cfg.n_list, solver_config(cfg), cfg.theta0_exponent.to_double());
            write_sweep_csv(result, out_dir, "conservation_sweep", "N",
                            {&sweep.modified, &sweep.filtered});
            break;
        }
        case Experiment::Smoothing: {
            const Field u0 = make_initial_data(cfg);
            const Trajectory traj = evolve(u0, solver_config(cfg));
            const SweepReport report =
                smoothing_profile(traj, cfg.N, cfg.s(), cfg.nj_list,
                                  AdmissiblePair{ExtRational::infinity(), ExtRational(Rational(2))});
            write_sweep_csv(result, out_dir, "smoothing_profile", "Nj", {&report});
            break;
        }
        case Experiment::CheckSymbols: {
            const ResonanceSpec spec =
                ResonanceSpec::make(cfg.N, cfg.s(), cfg.theta0_exponent.to_double());
            write_bound_csv(result, out_dir, "correction_bound",
                            correction_bound_report(spec, cfg.n_samples, cfg.seed));
            write_bound_csv(result, out_dir, "cancellation_bound",
                            cancellation_bound_report(spec, cfg.n_samples, cfg.seed));
            break;
        }
        case Experiment::CheckGeometry: {
            const ResonanceSpec spec =
                ResonanceSpec::make(cfg.N, cfg.s(), cfg.theta0_exponent.to_double());
            const auto reports = geometry_bound_report(spec, cfg.n_samples, cfg.seed);
            write_bound_csv(result, out_dir, "geometry_top_pair", reports[0]);
            write_bound_csv(result, out_dir, "geometry_bottom_pair", reports[1]);
            break;
        }
        case Experiment::Strichartz: {
            for (const AdmissiblePair& pair : default_iteration_pairs()) {
                const BoundReport report = strichartz_ratio(cfg.n_samples, pair, cfg.grid(),
                                                            cfg.t_end > 0.0 ? cfg.t_end : 1.0,
                                                            cfg.seed);
                write_bound_csv(result, out_dir, "strichartz_" + pair_stem(pair), report);
            }
            break;
        }
        case Experiment::Exponents: {
            const auto path = out_dir / "exponents.csv";
            CsvWriter csv(path);
            csv.row({"quantity", "exact", "decimal"});
            auto put = [&csv](const std::string& name, const Rational& r,
                              const std::string& slack = "") {
                csv.row({name, r.str() + slack, fmt_double(r.to_double())});
            };
            put("gwp_threshold", regularity_threshold());
            put("lambda_exponent", lambda_exponent(cfg.s_exact));
            const Budget budget = almost_conservation_budget(cfg.theta0_exponent);
            for (const auto& tb : budget.tags) {
                put("budget_tag_" + tag_name(tb.tag), tb.dominating.exponent,
                    tb.dominating.slack > 0 ? "+" : tb.dominating.slack < 0 ? "-" : "");
            }
            const NPower gap = pointwise_gap_exponent(cfg.theta0_exponent);
            put("pointwise_gap_exponent", gap.exponent, gap.slack > 0 ? "+" : "");
            put("interpolation_theta_q4", interpolation_theta(ExtRational(Rational(4))));
            put("interpolation_theta_qinf", interpolation_theta(ExtRational::infinity()));
            const AdmissiblePair mid = interpolate_pair(
                AdmissiblePair{ExtRational::infinity(), ExtRational(Rational(2))},
                AdmissiblePair{ExtRational(Rational(2)), ExtRational(Rational(6))},
                Rational(1, 2));
            put("midpoint_pair_q", mid.q.finite_value());
            put("midpoint_pair_r", mid.r.finite_value());
            put("smoothing_exponent_q4", smoothing_exponent(Rational(0)));
            put("smoothing_exponent_qinf", smoothing_exponent(Rational(1)));
            const ScalingConsistency sc = scaling_consistency();
            put("scaling_drain", sc.drain);
            csv.row({"scaling_consistency", sc.holds ? "1" : "0", sc.holds ? "1" : "0"});
            csv.close();
            result.artifacts.push_back(path);
            result.summary.push_back("gwp_threshold=" + regularity_threshold().str());
            break;
        }
    }

    // Plot script referencing every CSV artifact.
    {
        const auto path = out_dir / "plot.gp";
        std::ofstream os(path);
        if (!os) throw std::runtime_error("cannot open for writing: " + path.string());
        os << "set datafile separator ','\n";
        os << "set key autotitle columnhead\n";
        bool any = false;
        for (const auto& artifact : result.artifacts) {
            if (artifact.extension() != ".csv") continue;
            const std::string stem = artifact.stem().string();
            if (stem == "exponents") continue;
            os << "set title '" << stem << "'\n";
            const bool sweep = stem.find("sweep") != std::string::npos ||
                               stem == "smoothing_profile" || stem == "gap_sweep";
            if (sweep) os << "set logscale xy\n";
            os << "plot '" << artifact.filename().string() << "' using 1:2 with linespoints\n";
            if (sweep) os << "unset logscale xy\n";
            os << "pause -1\n";
            any = true;
        }
        if (!any) os << "# no plottable artifacts for this experiment\n";
        os.close();
        result.artifacts.push_back(path);
    }

    // Manifest last: it records the full artifact list and the wall time.
    {
        const auto t_finish = std::chrono::steady_clock::now();
        const auto ms =
            std::chrono::duration_cast<std::chrono::milliseconds>(t_finish - t_begin).count();
        const auto path = out_dir / "manifest.txt";
        std::ofstream os(path);
        if (!os) throw std::runtime_error("cannot open for writing: " + path.string());
        os << "tool = " << kToolName << " " << kVersion << "\n";
        os << "seed = " << detail::fmt_u64(cfg.seed) << "\n";
        os << "workers = " << worker_count() << "\n";
        os << "wall_time_ms = " << ms << "\n";
        os << "config:\n";
        std::istringstream echo(serialize_config(cfg));
        std::string line;
        while (std::getline(echo, line)) os << "  " << line << "\n";
        os << "artifacts:\n";
        for (const auto& artifact : result.artifacts)
            os << "  " << artifact.filename().string() << "\n";
        os.close();
        result.artifacts.push_back(path);
    }

    return result;
}

}  // namespace imlab
