#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <complex>

#include "imlab/fft.hpp"
#include "imlab/multiplier.hpp"
#include "imlab/norms.hpp"
#include "imlab/rng.hpp"
#include "oracles.hpp"

using namespace imlab;

namespace {

double max_coeff_diff(const Spectrum& a, const Spectrum& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.coeffs.size(); ++i)
        worst = std::max(worst, std::abs(a.coeffs[i] - b.coeffs[i]));
    return worst;
}

// Spectrum supported on |xi| >= cutoff, unit-scale random coefficients.
Field band_limited_above(const Grid& g, double cutoff, Rng& rng) {
    Spectrum s = Spectrum::zero(g);
    for (std::size_t i = 0; i < s.coeffs.size(); ++i) {
        const auto xi = frequency_of_mode(mode_of_flat(i, g), g);
        const double r = std::sqrt(xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]);
        const auto z = rng.complex_gaussian();
        if (r >= cutoff) s.coeffs[i] = Complex{z[0], z[1]};
    }
    return inverse_transform(s);
}

}  // namespace

TEST_CASE("forward transform matches the direct DFT") {
    Rng rng(11);
    for (const Grid& g : {make_grid(1, 8, kTwoPi), make_grid(2, 4, 3.0)}) {
        const Field u = oracle::random_field(g, rng);
        const Spectrum fast = transform(u);
        const Spectrum slow = oracle::reference_dft(u);
        CHECK(max_coeff_diff(fast, slow) < 1e-12);
    }
}

TEST_CASE("inverse transform matches the direct inverse DFT") {
    Rng rng(12);
    const Grid g = make_grid(1, 8, kTwoPi);
    Spectrum s = Spectrum::zero(g);
    for (auto& c : s.coeffs) {
        const auto z = rng.complex_gaussian();
        c = Complex{z[0], z[1]};
    }
    const Field fast = inverse_transform(s);
    const Field slow = oracle::reference_idft(s);
    double worst = 0.0;
    for (std::size_t i = 0; i < fast.values.size(); ++i)
        worst = std::max(worst, std::abs(fast.values[i] - slow.values[i]));
    CHECK(worst < 1e-12);
}

TEST_CASE("transform round trip is the identity") {
    Rng rng(13);
    for (const Grid& g :
         {make_grid(1, 32, kTwoPi), make_grid(2, 8, 5.0), make_grid(3, 4, 2.0)}) {
        const Field u = oracle::random_field(g, rng);
        const Field back = inverse_transform(transform(u));
        double worst = 0.0;
        for (std::size_t i = 0; i < u.values.size(); ++i)
            worst = std::max(worst, std::abs(u.values[i] - back.values[i]));
        CHECK(worst < 1e-12);
    }
}

TEST_CASE("Plancherel identity on random fields") {
    Rng rng(14);
    for (const Grid& g : {make_grid(1, 32, kTwoPi), make_grid(2, 8, 4.0)}) {
        for (int trial = 0; trial < 50; ++trial) {
            const Field u = oracle::random_field(g, rng);
            const double physical = std::pow(lebesgue_norm(u, 2.0), 2);
            const Spectrum s = transform(u);
            double spectral = 0.0;
            for (const auto& c : s.coeffs) spectral += std::norm(c);
            spectral *= g.mode_cell_volume();
            CHECK(std::abs(physical - spectral) <= 1e-10 * physical);
        }
    }
}

TEST_CASE("plane wave concentrates on a single coefficient") {
    const Grid g = make_grid(1, 16, kTwoPi);
    const Complex amp{0.7, -0.3};
    const int mode = 5;
    Field u = Field::zero(g);
    for (std::size_t i = 0; i < u.values.size(); ++i) {
        const auto x = site_of_flat(i, g);
        u.values[i] = amp * std::polar(1.0, g.mode_spacing() * mode * x[0]);
    }
    const Spectrum s = transform(u);
    const Complex expected =
        amp * std::sqrt(kTwoPi) / g.mode_spacing();  // A (2 pi)^{d/2} dxi^{-d}
    for (std::size_t i = 0; i < s.coeffs.size(); ++i) {
        const Mode k = mode_of_flat(i, g);
        if (k[0] == mode) {
            CHECK(std::abs(s.coeffs[i] - expected) < 1e-10 * std::abs(expected));
        } else {
            CHECK(std::abs(s.coeffs[i]) < 1e-10 * std::abs(expected));
        }
    }
}

TEST_CASE("zero padding reproduces the coarse samples exactly") {
    Rng rng(15);
    for (const Grid& g : {make_grid(1, 16, kTwoPi), make_grid(2, 4, 3.0)}) {
        const Field u = oracle::random_field(g, rng);
        const Spectrum s = transform(u);
        const Spectrum padded = pad_spectrum(s, 2);
        const Field fine = inverse_transform(padded);

        // Every coarse site is a fine site: x_i = i h = (2 i) (h / 2).
        const Grid& gf = fine.grid;
        double worst = 0.0;
        for (std::size_t i = 0; i < u.values.size(); ++i) {
            Mode site{0, 0, 0};
            std::size_t rest = i;
            for (int a = g.dim - 1; a >= 0; --a) {
                site[a] = static_cast<int>(rest % g.modes) * 2;
                rest /= g.modes;
            }
            std::size_t fine_flat = 0;
            for (int a = 0; a < g.dim; ++a)
                fine_flat = fine_flat * gf.modes + static_cast<std::size_t>(site[a]);
            worst = std::max(worst, std::abs(fine.values[fine_flat] - u.values[i]));
        }
        CHECK(worst < 1e-12);

        // Truncation undoes padding with no roundoff at all.
        const Spectrum back = truncate_spectrum(padded, g.modes);
        for (std::size_t i = 0; i < s.coeffs.size(); ++i) CHECK(back.coeffs[i] == s.coeffs[i]);
    }
}

TEST_CASE("multiplier chains commute to rounding") {
    // Scalar multiplication commutes but is not associative, so reversing
    // the chain may reorder roundings; agreement is to a few ulps, not bits.
    Rng rng(16);
    const Grid g = make_grid(1, 32, kTwoPi);
    const Spectrum s = transform(oracle::random_field(g, rng));
    const MultiplierSpec forward_chain[] = {smoothing_op(8.0, 0.7), derivative_weight(1.0, +1),
                                            low_pass(6.0)};
    const MultiplierSpec reversed_chain[] = {low_pass(6.0), derivative_weight(1.0, +1),
                                             smoothing_op(8.0, 0.7)};
    const Spectrum a = apply_multiplier(s, forward_chain);
    const Spectrum b = apply_multiplier(s, reversed_chain);
    double worst = 0.0;
    for (std::size_t i = 0; i < a.coeffs.size(); ++i)
        worst = std::max(worst,
                         std::abs(a.coeffs[i] - b.coeffs[i]) / (1.0 + std::abs(a.coeffs[i])));
    CHECK(worst < 1e-15);
}

TEST_CASE("sharp projections are idempotent, complementary, annihilating") {
    Rng rng(17);
    const Grid g = make_grid(1, 32, kTwoPi);
    const Spectrum s = transform(oracle::random_field(g, rng));

    const Spectrum low1 = apply_multiplier(s, sharp_low(7.0));
    const Spectrum low2 = apply_multiplier(low1, sharp_low(7.0));
    for (std::size_t i = 0; i < s.coeffs.size(); ++i) CHECK(low1.coeffs[i] == low2.coeffs[i]);

    const Spectrum high1 = apply_multiplier(s, sharp_high(7.0));
    for (std::size_t i = 0; i < s.coeffs.size(); ++i)
        CHECK(low1.coeffs[i] + high1.coeffs[i] == s.coeffs[i]);

    const Spectrum dead = apply_multiplier(high1, sharp_low(7.0));
    for (const auto& c : dead.coeffs) CHECK(c == Complex{0.0, 0.0});
}

TEST_CASE("smooth cutoffs annihilate across a dyadic gap") {
    Rng rng(18);
    const Grid g = make_grid(1, 64, kTwoPi);
    const Spectrum s = transform(oracle::random_field(g, rng));
    // low_pass(N) is supported in |xi| < 2N; high_pass(2N) vanishes there.
    const MultiplierSpec chain[] = {low_pass(8.0), high_pass(16.0)};
    const Spectrum dead = apply_multiplier(s, chain);
    for (const auto& c : dead.coeffs) CHECK(c == Complex{0.0, 0.0});
}

TEST_CASE("cutoffs below the frequency spacing are rejected") {
    const Grid g = make_grid(1, 16, kTwoPi);  // dxi = 1
    const Spectrum s = Spectrum::zero(g);
    CHECK_THROWS_AS(apply_multiplier(s, low_pass(0.5)), std::invalid_argument);
    CHECK_NOTHROW(apply_multiplier(s, derivative_weight(2.0, +1)));
}

TEST_CASE("smoothing symbol: plateau, decay, scaling") {
    const double N = 8.0;
    const double s = 0.7;
    CHECK(smoothing_symbol(0.0, N, s) == 1.0);
    CHECK(smoothing_symbol(N, N, s) == 1.0);
    CHECK(smoothing_symbol(2.0 * N, N, s) == Catch::Approx(std::pow(0.5, 1.0 - s)));
    double prev = 1.0;
    for (double r = N; r < 64.0 * N; r *= 1.3) {
        const double m = smoothing_symbol(r, N, s);
        CHECK(m <= prev);
        prev = m;
    }
    // m(xi) |xi|^{1-s} is constant (= N^{1-s}) beyond the plateau.
    for (double r : {1.5 * N, 4.0 * N, 33.0 * N})
        CHECK(smoothing_symbol(r, N, s) * std::pow(r, 1.0 - s) ==
              Catch::Approx(std::pow(N, 1.0 - s)));
}

TEST_CASE("high-frequency comparison is exact at p = 2") {
    Rng rng(19);
    const Grid g = make_grid(1, 64, kTwoPi);
    const double N = 8.0;
    const double delta = 0.7;
    for (int trial = 0; trial < 50; ++trial) {
        const Field u = band_limited_above(g, N, rng);
        const Field du = apply_multiplier(u, derivative_weight(delta, +1));
        const double lhs = lebesgue_norm(u, 2.0);
        const double rhs = std::pow(N, -delta) * lebesgue_norm(du, 2.0);
        CHECK(lhs <= rhs * (1.0 + 1e-12));
    }
}

TEST_CASE("high-frequency comparison constants are stable off p = 2") {
    Rng rng(20);
    const Grid g = make_grid(1, 32, kTwoPi);
    const double N = 4.0;
    const double delta = 0.6;
    auto sup_ratio = [&](std::size_t trials) {
        double sup = 0.0;
        for (std::size_t i = 0; i < trials; ++i) {
            const Field u = band_limited_above(g, N, rng);
            const Field du = apply_multiplier(u, derivative_weight(delta, +1));
            for (double p : {4.0, std::numeric_limits<double>::infinity()}) {
                const double denom = std::pow(N, -delta) * lebesgue_norm(du, p);
                sup = std::max(sup, lebesgue_norm(u, p) / denom);
            }
        }
        return sup;
    };
    // One stream: the first 40 draws, then 360 more; the sup must not grow
    // past a factor 2.
    const double base = sup_ratio(40);
    const double extended = std::max(base, sup_ratio(360));
    CHECK(extended <= 2.0 * base);
}

TEST_CASE("tail symbol inequality on the lattice") {
    const Grid g = make_grid(1, 512, kTwoPi);
    const double N = 8.0;
    const double s = 0.7;
    for (double delta : {0.2, 0.5, 0.69}) {
        for (std::size_t i = 0; i < g.site_count(); ++i) {
            const auto xi = frequency_of_mode(mode_of_flat(i, g), g);
            const double r = std::abs(xi[0]);
            if (r < N) continue;
            const double lhs = std::pow(r, delta);
            const double rhs =
                2.0 * std::pow(N, delta - 1.0) * r * smoothing_symbol(r, N, s);
            CHECK(lhs <= rhs);
        }
    }
}

TEST_CASE("Lebesgue norms on constant fields are exact") {
    const Grid g = make_grid(2, 8, 3.0);
    Field u = Field::zero(g);
    const Complex c{0.6, 0.8};  // |c| = 1
    for (auto& v : u.values) v = c;
    CHECK(lebesgue_norm(u, 2.0) == Catch::Approx(std::pow(3.0, 2.0 / 2.0)));
    CHECK(lebesgue_norm(u, 4.0) == Catch::Approx(std::pow(3.0, 2.0 / 4.0)));
    CHECK(lebesgue_norm(u, std::numeric_limits<double>::infinity()) == Catch::Approx(1.0));
    CHECK(lebesgue_norm(u, ExtRational::infinity()) == Catch::Approx(1.0));
}

TEST_CASE("space-time norms: sup and trapezoid") {
    const Grid g = make_grid(1, 4, 2.0);
    Field a = Field::zero(g);
    Field b = Field::zero(g);
    for (auto& v : a.values) v = Complex{1.0, 0.0};
    for (auto& v : b.values) v = Complex{3.0, 0.0};
    Trajectory traj{g, {}, {}};
    traj.append(0.0, a);
    traj.append(1.0, b);
    const double na = lebesgue_norm(a, 2.0);
    const double nb = lebesgue_norm(b, 2.0);
    CHECK(spacetime_norm(traj, ExtRational::infinity(), ExtRational(Rational(2))) ==
          Catch::Approx(nb));
    // Trapezoid of the squared norm: ((na^2 + nb^2)/2)^{1/2}.
    CHECK(spacetime_norm(traj, ExtRational(Rational(2)), ExtRational(Rational(2))) ==
          Catch::Approx(std::sqrt(0.5 * (na * na + nb * nb))));
}

TEST_CASE("admissible pairs satisfy the exact scaling relation") {
    CHECK(is_admissible(ExtRational::infinity(), ExtRational(Rational(2))));
    CHECK(is_admissible(ExtRational(Rational(2)), ExtRational(Rational(6))));
    CHECK(is_admissible(ExtRational(Rational(4)), ExtRational(Rational(3))));
    CHECK(is_admissible(ExtRational(Rational(8)), ExtRational(Rational(12, 5))));
    CHECK_FALSE(is_admissible(ExtRational(Rational(4)), ExtRational(Rational(4))));
    CHECK_FALSE(is_admissible(ExtRational(Rational(1)), ExtRational(Rational(2))));
    for (const auto& pair : default_iteration_pairs()) CHECK(is_admissible(pair));
}

TEST_CASE("iteration norm grows with the filter threshold") {
    Rng rng(21);
    const Grid g = make_grid(1, 32, kTwoPi);
    Trajectory traj{g, {}, {}};
    traj.append(0.0, oracle::random_field(g, rng));
    traj.append(0.5, oracle::random_field(g, rng));
    traj.append(1.0, oracle::random_field(g, rng));
    const double z_small = iteration_norm(traj, 2.0, 0.7);
    const double z_large = iteration_norm(traj, 8.0, 0.7);
    CHECK(z_small > 0.0);
    // Larger N means less damping on every mode, hence a larger norm.
    CHECK(z_large >= z_small);
}
