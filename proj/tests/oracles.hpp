// Independent reference implementations used only by tests. Everything
// here favors readability over speed: direct DFT sums, closed-form
// solutions, and full nested-loop multilinear sums, written without
// reusing the library's drivers so agreement is evidence.
#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "imlab/field.hpp"
#include "imlab/grid.hpp"
#include "imlab/rng.hpp"
#include "imlab/tuples.hpp"

namespace oracle {

using imlab::Complex;
using imlab::Field;
using imlab::Grid;
using imlab::Mode;
using imlab::Spectrum;
using imlab::Vec3;

// u-hat(k) = (2 pi)^{-d/2} h^d sum_x u(x) exp(-i xi_k . x)
inline Spectrum reference_dft(const Field& u) {
    const Grid& g = u.grid;
    Spectrum s = Spectrum::zero(g);
    const double norm = std::pow(imlab::kTwoPi, -0.5 * g.dim) * g.cell_volume();
    for (std::size_t ik = 0; ik < s.coeffs.size(); ++ik) {
        const Mode k = imlab::mode_of_flat(ik, g);
        const auto xi = imlab::frequency_of_mode(k, g);
        Complex acc{0.0, 0.0};
        for (std::size_t ix = 0; ix < u.values.size(); ++ix) {
            const auto x = imlab::site_of_flat(ix, g);
            double phase = 0.0;
            for (int a = 0; a < g.dim; ++a) phase += xi[a] * x[a];
            acc += u.values[ix] * std::polar(1.0, -phase);
        }
        s.coeffs[ik] = norm * acc;
    }
    return s;
}

// u(x) = (2 pi)^{-d/2} (dxi)^d sum_k u-hat(k) exp(i xi_k . x)
inline Field reference_idft(const Spectrum& s) {
    const Grid& g = s.grid;
    Field u = Field::zero(g);
    const double norm = std::pow(imlab::kTwoPi, -0.5 * g.dim) * g.mode_cell_volume();
    for (std::size_t ix = 0; ix < u.values.size(); ++ix) {
        const auto x = imlab::site_of_flat(ix, g);
        Complex acc{0.0, 0.0};
        for (std::size_t ik = 0; ik < s.coeffs.size(); ++ik) {
            const Mode k = imlab::mode_of_flat(ik, g);
            const auto xi = imlab::frequency_of_mode(k, g);
            double phase = 0.0;
            for (int a = 0; a < g.dim; ++a) phase += xi[a] * x[a];
            acc += s.coeffs[ik] * std::polar(1.0, phase);
        }
        u.values[ix] = norm * acc;
    }
    return u;
}

// Closed-form single-mode solution of i u_t + Lap u = |u|^2 u:
// u(t, x) = c exp(i (xi0 . x - (|xi0|^2 + |c|^2) t)).
inline Field plane_wave_solution(const Grid& g, int mode, Complex c, double t) {
    Field u = Field::zero(g);
    const double xi0 = g.mode_spacing() * mode;
    const double omega = xi0 * xi0 + std::norm(c);
    for (std::size_t ix = 0; ix < u.values.size(); ++ix) {
        const auto x = imlab::site_of_flat(ix, g);
        u.values[ix] = c * std::polar(1.0, xi0 * x[0] - omega * t);
    }
    return u;
}

inline Field random_field(const Grid& g, imlab::Rng& rng) {
    Field u = Field::zero(g);
    for (auto& v : u.values) {
        const auto z = rng.complex_gaussian();
        v = Complex{z[0], z[1]};
    }
    return u;
}

// Full quadrilinear lattice sum: free modes k1, k2, k3; k4 = k1 - k2 + k3
// when it lies in the band; symbol evaluated at (xi1, -xi2, xi3, -xi4);
// weight (2 pi)^{-d} (dxi)^{3d}.
inline Complex brute_lambda4(const std::function<Complex(const imlab::FrequencyTuple&)>& symbol,
                             const Spectrum& s) {
    const Grid& g = s.grid;
    const double dxi = g.mode_spacing();
    const std::size_t n = s.coeffs.size();
    Complex acc{0.0, 0.0};
    for (std::size_t i1 = 0; i1 < n; ++i1) {
        const Mode k1 = imlab::mode_of_flat(i1, g);
        for (std::size_t i2 = 0; i2 < n; ++i2) {
            const Mode k2 = imlab::mode_of_flat(i2, g);
            for (std::size_t i3 = 0; i3 < n; ++i3) {
                const Mode k3 = imlab::mode_of_flat(i3, g);
                const Mode k4{k1[0] - k2[0] + k3[0], k1[1] - k2[1] + k3[1],
                              k1[2] - k2[2] + k3[2]};
                if (!imlab::mode_in_band(k4, g)) continue;
                const Vec3 x1{dxi * k1[0], dxi * k1[1], dxi * k1[2]};
                const Vec3 x2{-dxi * k2[0], -dxi * k2[1], -dxi * k2[2]};
                const Vec3 x3{dxi * k3[0], dxi * k3[1], dxi * k3[2]};
                const Vec3 x4{-dxi * k4[0], -dxi * k4[1], -dxi * k4[2]};
                const auto t =
                    imlab::FrequencyTuple::unchecked(4, {x1, x2, x3, x4, Vec3{}, Vec3{}});
                acc += symbol(t) * s.coeffs[i1] * std::conj(s.coeffs[i2]) * s.coeffs[i3] *
                       std::conj(s.coeffs[imlab::flat_of_mode(k4, g)]);
            }
        }
    }
    double weight = std::pow(imlab::kTwoPi, -1.0 * g.dim);
    for (int j = 0; j < 3; ++j) weight *= g.mode_cell_volume();
    return weight * acc;
}

// Full sextilinear lattice sum: free modes k1..k5; k6 = k1-k2+k3-k4+k5 when
// in band; alternating conjugation; weight (2 pi)^{-2d} (dxi)^{5d}. The
// six-slot symbol receives sign-adjusted frequencies summing to zero.
inline Complex brute_lambda6(
    const std::function<Complex(const std::array<Vec3, 6>&)>& symbol6, const Spectrum& s) {
    const Grid& g = s.grid;
    const double dxi = g.mode_spacing();
    const std::size_t n = s.coeffs.size();
    Complex acc{0.0, 0.0};
    std::array<Mode, 6> k{};
    for (std::size_t i1 = 0; i1 < n; ++i1) {
        k[0] = imlab::mode_of_flat(i1, g);
        for (std::size_t i2 = 0; i2 < n; ++i2) {
            k[1] = imlab::mode_of_flat(i2, g);
            for (std::size_t i3 = 0; i3 < n; ++i3) {
                k[2] = imlab::mode_of_flat(i3, g);
                for (std::size_t i4 = 0; i4 < n; ++i4) {
                    k[3] = imlab::mode_of_flat(i4, g);
                    for (std::size_t i5 = 0; i5 < n; ++i5) {
                        k[4] = imlab::mode_of_flat(i5, g);
                        for (int a = 0; a < 3; ++a)
                            k[5][a] = k[0][a] - k[1][a] + k[2][a] - k[3][a] + k[4][a];
                        if (!imlab::mode_in_band(k[5], g)) continue;
                        std::array<Vec3, 6> xs{};
                        for (int j = 0; j < 6; ++j) {
                            const double sign = (j % 2 == 0) ? 1.0 : -1.0;
                            xs[j] = Vec3{sign * dxi * k[j][0], sign * dxi * k[j][1],
                                         sign * dxi * k[j][2]};
                        }
                        Complex term = symbol6(xs);
                        term *= s.coeffs[i1] * std::conj(s.coeffs[i2]) * s.coeffs[i3];
                        term *= std::conj(s.coeffs[i4]) * s.coeffs[i5] *
                                std::conj(s.coeffs[imlab::flat_of_mode(k[5], g)]);
                        acc += term;
                    }
                }
            }
        }
    }
    double weight = std::pow(imlab::kTwoPi, -2.0 * g.dim);
    for (int j = 0; j < 5; ++j) weight *= g.mode_cell_volume();
    return weight * acc;
}

}  // namespace oracle
