#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <string>

#include "imlab/config.hpp"
#include "imlab/io.hpp"
#include "imlab/rng.hpp"
#include "imlab/runner.hpp"
#include "oracles.hpp"

using namespace imlab;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag) {
        path = fs::temp_directory_path() / ("imlab_test_" + tag);
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

bool same_bits(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i].real() != b[i].real() || a[i].imag() != b[i].imag()) return false;
    return true;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

std::string config_message(const std::string& text,
                           const std::vector<std::string>& overrides = {}) {
    try {
        parse_config(text, overrides);
    } catch (const ConfigError& e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_CASE("field records survive a disk round trip bit for bit") {
    TempDir dir("field");
    Rng rng(71);
    const Grid g = make_grid(2, 8, 3.5);
    const Field u = oracle::random_field(g, rng);
    save_field(dir.path / "u.bin", u);
    const Field v = load_field(dir.path / "u.bin");
    CHECK(v.grid == g);
    CHECK(same_bits(u.values, v.values));

    const Spectrum s = transform(u);
    save_spectrum(dir.path / "s.bin", s);
    const Spectrum t = load_spectrum(dir.path / "s.bin");
    CHECK(t.grid == g);
    CHECK(same_bits(s.coeffs, t.coeffs));
}

TEST_CASE("truncated and malformed records are rejected") {
    TempDir dir("trunc");
    Rng rng(72);
    const Grid g = make_grid(1, 8, 1.0);
    const Field u = oracle::random_field(g, rng);
    save_field(dir.path / "u.bin", u);

    const std::string whole = slurp(dir.path / "u.bin");
    std::ofstream cut(dir.path / "cut.bin", std::ios::binary);
    cut.write(whole.data(), static_cast<std::streamsize>(whole.size() - 5));
    cut.close();
    CHECK_THROWS_AS(load_field(dir.path / "cut.bin"), std::runtime_error);

    std::ofstream bad(dir.path / "bad.bin", std::ios::binary);
    imlab::detail::write_u64(bad, 7);  // dim 7 is out of range
    imlab::detail::write_u64(bad, 8);
    imlab::detail::write_f64(bad, 1.0);
    bad.close();
    CHECK_THROWS_AS(load_field(dir.path / "bad.bin"), std::runtime_error);

    CHECK_THROWS_AS(load_field(dir.path / "missing.bin"), std::runtime_error);
}

TEST_CASE("trajectory files reload and resume") {
    TempDir dir("traj");
    Rng rng(73);
    const Grid g = make_grid(1, 16, kTwoPi);
    Trajectory traj{g, {}, {}};
    for (int i = 0; i < 3; ++i) traj.append(0.1 * i, oracle::random_field(g, rng));
    save_trajectory(dir.path / "t.bin", traj);

    Trajectory back = load_trajectory(dir.path / "t.bin");
    REQUIRE(back.size() == 3);
    CHECK(back.grid == g);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(back.times[i] == traj.times[i]);
        CHECK(same_bits(back.fields[i].values, traj.fields[i].values));
    }

    // Resume: append two more records, reload, get all five.
    Trajectory more{g, {}, {}};
    for (int i = 3; i < 5; ++i) more.append(0.1 * i, oracle::random_field(g, rng));
    append_trajectory(dir.path / "t.bin", more);
    back = load_trajectory(dir.path / "t.bin");
    REQUIRE(back.size() == 5);
    CHECK(back.times.back() == 0.4);

    // A torn tail is an error, not a silent short read.
    const std::string whole = slurp(dir.path / "t.bin");
    std::ofstream cut(dir.path / "torn.bin", std::ios::binary);
    cut.write(whole.data(), static_cast<std::streamsize>(whole.size() - 17));
    cut.close();
    CHECK_THROWS_AS(load_trajectory(dir.path / "torn.bin"), std::runtime_error);

    std::ofstream(dir.path / "empty.bin", std::ios::binary).close();
    CHECK_THROWS_AS(load_trajectory(dir.path / "empty.bin"), std::runtime_error);
}

TEST_CASE("a minimal config fills every default") {
    const ExperimentConfig cfg = parse_config("experiment = energy\n");
    CHECK(cfg.experiment == Experiment::Energy);
    CHECK(cfg.dim == 1);
    CHECK(cfg.modes == 32);
    CHECK(cfg.box_length == kTwoPi);
    CHECK(cfg.dt == 1e-3);
    CHECK(cfg.record_stride == 10);
    CHECK(cfg.dealias == true);
    CHECK(cfg.N == 8.0);
    CHECK(cfg.s_exact == Rational(7, 10));
    CHECK(cfg.theta0_exponent == Rational(-7, 8));
    CHECK(cfg.seed == 1);
    CHECK(cfg.data.kind == DataKind::Gaussian);
    CHECK(cfg.n_list == std::vector<double>{2.0, 4.0, 8.0, 16.0});
}

TEST_CASE("config errors name the rule and the offending line") {
    const std::string msg = config_message("experiment = energy\nmodes = 7\n");
    CHECK(msg.find("line 2") != std::string::npos);
    CHECK(msg.find("even") != std::string::npos);

    const std::string unknown = config_message("experiment = energy\nmodez = 8\n");
    CHECK(unknown.find("line 2") != std::string::npos);
    CHECK(unknown.find("modez") != std::string::npos);

    const std::string badnum = config_message("experiment = energy\ndt = fast\n");
    CHECK(badnum.find("line 2") != std::string::npos);

    const std::string noexp = config_message("dim = 1\n");
    CHECK(noexp.find("experiment") != std::string::npos);

    const std::string nokey = config_message("experiment = energy\njust words\n");
    CHECK(nokey.find("line 2") != std::string::npos);
}

TEST_CASE("regularity bounds are enforced exactly") {
    CHECK(parse_config("experiment = energy\ns = 3/4\n").s_exact == Rational(3, 4));
    CHECK(parse_config("experiment = energy\ns = 0.7\n").s_exact == Rational(7, 10));
    CHECK(config_message("experiment = energy\ns = 1/2\n").find("s") != std::string::npos);
    CHECK_THROWS_AS(parse_config("experiment = energy\ns = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("experiment = energy\ns = 0.50\n"), ConfigError);
}

TEST_CASE("later bindings win, overrides last of all") {
    const ExperimentConfig cfg =
        parse_config("experiment = energy\nmodes = 16\nmodes = 64\n", {"modes=8", "seed=9"});
    CHECK(cfg.modes == 8);
    CHECK(cfg.seed == 9);
    CHECK_THROWS_AS(parse_config("experiment = energy\n", {"modes"}), ConfigError);
    // An invalid value set by an override is reported as such.
    const std::string msg = config_message("experiment = energy\n", {"modes=7"});
    CHECK(msg.find("override 1") != std::string::npos);
}

TEST_CASE("comments and blank lines are ignored") {
    const ExperimentConfig cfg = parse_config(
        "# leading comment\n\nexperiment = simulate  # trailing\n   \nmodes = 16\n");
    CHECK(cfg.experiment == Experiment::Simulate);
    CHECK(cfg.modes == 16);
}

TEST_CASE("the serialized config is a fixed point of the parser") {
    const ExperimentConfig cfg = parse_config(
        "experiment = smoothing\ndim = 1\nmodes = 64\ndt = 0.002\n"
        "s = 49/74\ntheta0_exponent = -3/4\ndata = gaussian(1.5, 0.4)\n"
        "Nj_list = 2, 4, 8, 16\nN = 16\n");
    const std::string echo = serialize_config(cfg);
    const ExperimentConfig again = parse_config(echo);
    CHECK(serialize_config(again) == echo);
    CHECK(again.s_exact == Rational(49, 74));
    CHECK(again.theta0_exponent == Rational(-3, 4));
    CHECK(again.data.width == 0.4);
    CHECK(again.nj_list == std::vector<double>{2.0, 4.0, 8.0, 16.0});
}

TEST_CASE("initial data kinds are built as specified") {
    ExperimentConfig cfg = parse_config(
        "experiment = simulate\nmodes = 16\ndata = planewave(3, 0.75)\n");
    const Field pw = make_initial_data(cfg);
    const Field ref = oracle::plane_wave_solution(cfg.grid(), 3, Complex{0.75, 0.0}, 0.0);
    double worst = 0.0;
    for (std::size_t i = 0; i < pw.values.size(); ++i)
        worst = std::max(worst, std::abs(pw.values[i] - ref.values[i]));
    CHECK(worst < 1e-12);

    cfg = parse_config("experiment = simulate\nmodes = 32\ndata = random_bandlimited(4)\n");
    const Field rb = make_initial_data(cfg);
    const Spectrum srb = transform(rb);
    for (std::size_t i = 0; i < srb.coeffs.size(); ++i) {
        const Mode k = mode_of_flat(i, srb.grid);
        const auto xi = frequency_of_mode(k, srb.grid);
        if (xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2] > 16.0 + 1e-9)
            CHECK(std::abs(srb.coeffs[i]) < 1e-12);
    }
    const Field rb2 = make_initial_data(cfg);
    CHECK(same_bits(rb.values, rb2.values));

    cfg = parse_config("experiment = simulate\ndata = gaussian(2.0, 0.3)\n");
    const Field gs = make_initial_data(cfg);
    double peak = 0.0;
    for (const auto& v : gs.values) {
        CHECK(v.imag() == 0.0);
        peak = std::max(peak, v.real());
    }
    CHECK(peak == Catch::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("planewave mode outside the band is a config error") {
    CHECK_THROWS_AS(parse_config("experiment = simulate\nmodes = 8\ndata = planewave(9)\n"),
                    ConfigError);
}

TEST_CASE("experiment runs leave a manifest, a plot script, and their data") {
    TempDir dir("runexp");
    const ExperimentConfig cfg = parse_config("experiment = exponents\n");
    const RunResult result = run_experiment(cfg, dir.path);
    CHECK(fs::exists(dir.path / "exponents.csv"));
    CHECK(fs::exists(dir.path / "manifest.txt"));
    CHECK(fs::exists(dir.path / "plot.gp"));
    CHECK(!result.summary.empty());

    const std::string csv = slurp(dir.path / "exponents.csv");
    CHECK(csv.find("49/74") != std::string::npos);
    CHECK(csv.find("gwp_threshold") != std::string::npos);

    const std::string manifest = slurp(dir.path / "manifest.txt");
    CHECK(manifest.find("experiment = exponents") != std::string::npos);
    CHECK(manifest.find("seed") != std::string::npos);
}

TEST_CASE("energy experiment reports a zero gap column on band-limited data") {
    TempDir dir("energy");
    const ExperimentConfig cfg = parse_config(
        "experiment = energy\nmodes = 16\nN = 8\ndata = random_bandlimited(8)\nseed = 5\n");
    run_experiment(cfg, dir.path);
    const std::string csv = slurp(dir.path / "energy.csv");
    CHECK(csv.find("gap") != std::string::npos);
    // Last column of the data row is the gap; band-limited data sits on the
    // plateau where both quartic sums run identical arithmetic.
    const std::size_t line_start = csv.find('\n') + 1;
    const std::size_t line_end = csv.find('\n', line_start);
    const std::string row = csv.substr(line_start, line_end - line_start);
    const std::string last = row.substr(row.rfind(',') + 1);
    CHECK(std::stod(last) == 0.0);
}

TEST_CASE("identical configs produce byte-identical CSV artifacts") {
    for (const std::string& text :
         {std::string("experiment = check-symbols\nn_samples = 1000\nN = 8\n"),
          std::string("experiment = sweep-gap\nmodes = 32\nN_list = 2, 4, 8, 16\nseed = 3\n"
                      "data = random_bandlimited(16)\n")}) {
        TempDir a("det_a");
        TempDir b("det_b");
        const ExperimentConfig cfg = parse_config(text);
        const RunResult ra = run_experiment(cfg, a.path);
        run_experiment(cfg, b.path);
        int compared = 0;
        for (const auto& artifact : ra.artifacts) {
            if (artifact.extension() != ".csv") continue;
            const auto rel = artifact.filename();
            CHECK(slurp(a.path / rel) == slurp(b.path / rel));
            ++compared;
        }
        CHECK(compared > 0);
    }
}

TEST_CASE("simulate writes a resumable trajectory and observables") {
    TempDir dir("sim");
    const ExperimentConfig cfg = parse_config(
        "experiment = simulate\nmodes = 16\ndt = 0.00390625\nt_end = 0.125\nrecord_stride = 8\n"
        "data = gaussian(1.0, 0.6)\n");
    run_experiment(cfg, dir.path);
    const Trajectory traj = load_trajectory(dir.path / "trajectory.bin");
    CHECK(traj.size() == 5);  // 32 steps, stride 8, plus t = 0
    CHECK(traj.times.back() == Catch::Approx(0.125));
    const std::string csv = slurp(dir.path / "observables.csv");
    CHECK(csv.find("time,mass,energy,filtered_energy,sup_norm") != std::string::npos);
}
