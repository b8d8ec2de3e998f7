// Pseudospectral integrator for the defocusing cubic Schrodinger equation
//   i u_t + Lap u = |u|^2 u   <=>   u_t = i Lap u - i |u|^2 u,
// by Strang splitting with exact substep flows:
//   free flow     u-hat(xi) *= exp(-i t |xi|^2)
//   nonlinear     u(x)      *= exp(-i t |u(x)|^2)   (|u| is invariant)
// plus conserved-quantity evaluation, Duhamel decomposition, and the
// scaling transform u(x) -> lambda^{-1} u(x / lambda).
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <stdexcept>
#include <utility>

#include "imlab/fft.hpp"
#include "imlab/field.hpp"
#include "imlab/multiplier.hpp"
#include "imlab/norms.hpp"
#include "imlab/reduce.hpp"
#include "imlab/trajectory.hpp"

namespace imlab {

struct SolverConfig {
    Grid grid;
    double dt = 0.0;
    double t_end = 0.0;
    std::int64_t record_stride = 1;
    // Alias-free cubic via factor-2 padding: the semidiscrete system is then
    // the exact band-truncated flow, at the cost of shedding the out-of-band
    // tail each step (invisible for resolved data). Without it every substep
    // is an exact isometry, so mass is conserved to roundoff for any data.
    bool dealias = true;
    double overflow_guard = 1.0e6;  // sup-norm abort threshold

    // Step count; dt must tile [0, t_end] to 1e-12.
    std::int64_t steps() const {
        if (!(dt > 0.0)) throw std::invalid_argument("SolverConfig: dt must be positive");
        if (!(t_end >= 0.0)) throw std::invalid_argument("SolverConfig: t_end must be nonnegative");
        if (record_stride < 1) throw std::invalid_argument("SolverConfig: record_stride must be >= 1");
        if (!(overflow_guard > 0.0))
            throw std::invalid_argument("SolverConfig: overflow_guard must be positive");
        const auto n = static_cast<std::int64_t>(std::llround(t_end / dt));
        if (std::abs(static_cast<double>(n) * dt - t_end) > 1.0e-12)
            throw std::invalid_argument("SolverConfig: dt does not divide t_end");
        return n;
    }
};

namespace detail {

inline void half_free_phase(Spectrum& s, double dt) {
    const double half = 0.5 * dt;
    for (std::size_t i = 0; i < s.coeffs.size(); ++i) {
        auto xi = frequency_of_mode(mode_of_flat(i, s.grid), s.grid);
        const double r2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
        s.coeffs[i] *= std::polar(1.0, -half * r2);
    }
}

inline void nonlinear_phase(Field& u, double dt) {
    for (auto& v : u.values) v *= std::polar(1.0, -dt * std::norm(v));
}

// One Strang step in coefficient space. With dealiasing the nonlinear
// substep runs on a zero-padded grid (factor 2), which keeps every cubic
// interaction alias-free on the retained modes.
inline void strang_step_spectrum(Spectrum& s, double dt, bool dealias) {
    half_free_phase(s, dt);
    if (dealias) {
        Spectrum wide = pad_spectrum(s, 2);
        Field u = inverse_transform(wide);
        nonlinear_phase(u, dt);
        s = truncate_spectrum(transform(u), s.grid.modes);
    } else {
        Field u = inverse_transform(s);
        nonlinear_phase(u, dt);
        s = transform(u);
    }
    half_free_phase(s, dt);
}

}  // namespace detail

inline Field strang_step(const Field& field, double dt, bool dealias = true) {
    Spectrum s = transform(field);
    detail::strang_step_spectrum(s, dt, dealias);
    return inverse_transform(s);
}

inline Trajectory evolve(const Field& u0, const SolverConfig& cfg) {
    if (!(u0.grid == cfg.grid)) throw std::invalid_argument("evolve: field grid differs from config grid");
    const std::int64_t n = cfg.steps();
    Trajectory traj{cfg.grid, {}, {}};
    traj.append(0.0, u0);
    if (n == 0) return traj;
    Spectrum s = transform(u0);
    for (std::int64_t step = 1; step <= n; ++step) {
        detail::strang_step_spectrum(s, cfg.dt, cfg.dealias);
        if (!std::isfinite(std::norm(s.coeffs[0])))
            throw std::runtime_error("evolve: non-finite coefficients at t = " +
                                     std::to_string(static_cast<double>(step) * cfg.dt) +
                                     "; the run is under-resolved, refine dt or the grid");
        if (step % cfg.record_stride == 0 || step == n) {
            Field u = inverse_transform(s);
            double sup = 0.0;
            for (const auto& v : u.values) sup = std::max(sup, std::abs(v));
            if (!(sup <= cfg.overflow_guard))
                throw std::runtime_error(
                    "evolve: sup norm " + std::to_string(sup) + " exceeded the overflow guard at t = " +
                    std::to_string(static_cast<double>(step) * cfg.dt) +
                    "; the run is under-resolved (the equation is defocusing), refine dt or the grid");
            traj.append(static_cast<double>(step) * cfg.dt, std::move(u));
        }
    }
    return traj;
}

inline double mass(const Field& u) {
    const double hd = u.grid.cell_volume();
    return hd * parallel_reduce(u.values.size(), [&](std::size_t i) { return std::norm(u.values[i]); });
}

// (1/2) int |grad u|^2 + (1/4) int |u|^4. The gradient term is spectral;
// the quartic term is summed on a factor-2 padded grid, where the trig
// polynomial |u|^4 of a band-limited u is integrated exactly.
inline double energy(const Field& u) {
    Spectrum s = transform(u);
    const double dxi_d = s.grid.mode_cell_volume();
    const double kinetic = dxi_d * parallel_reduce(s.coeffs.size(), [&](std::size_t i) {
        auto xi = frequency_of_mode(mode_of_flat(i, s.grid), s.grid);
        const double r2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
        return r2 * std::norm(s.coeffs[i]);
    });
    Field wide = inverse_transform(pad_spectrum(s, 2));
    const double hd = wide.grid.cell_volume();
    const double quartic = hd * parallel_reduce(wide.values.size(), [&](std::size_t i) {
        const double a2 = std::norm(wide.values[i]);
        return a2 * a2;
    });
    return 0.5 * kinetic + 0.25 * quartic;
}

inline double energy_I(const Field& u, double N, double s) {
    Spectrum su = apply_multiplier(transform(u), smoothing_op(N, s));
    return energy(inverse_transform(su));
}

inline Field free_flow(const Field& u0, double t) {
    Spectrum s = transform(u0);
    for (std::size_t i = 0; i < s.coeffs.size(); ++i) {
        auto xi = frequency_of_mode(mode_of_flat(i, s.grid), s.grid);
        const double r2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
        s.coeffs[i] *= std::polar(1.0, -t * r2);
    }
    return inverse_transform(s);
}

struct DecompositionResult {
    Trajectory linear;
    Trajectory nonlinear;
    double origin_time = 0.0;
};

// linear(t) = exp(i (t - t0) Lap) u(t0), nonlinear(t) = u(t) - linear(t).
// At t0 itself the linear part is the stored state, so nonlinear(t0) = 0
// exactly rather than to transform roundoff.
inline DecompositionResult duhamel_split(const Trajectory& traj, double t0) {
    if (traj.size() == 0) throw std::invalid_argument("duhamel_split: empty trajectory");
    if (traj.times.front() != t0)
        throw std::invalid_argument("duhamel_split: t0 must equal the trajectory's first sample time");
    DecompositionResult out{Trajectory{traj.grid, {}, {}}, Trajectory{traj.grid, {}, {}}, t0};
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const double t = traj.times[i];
        Field lin = (i == 0) ? traj.fields[0] : free_flow(traj.fields[0], t - t0);
        Field rem = Field::zero(traj.grid);
        for (std::size_t j = 0; j < rem.values.size(); ++j)
            rem.values[j] = traj.fields[i].values[j] - lin.values[j];
        out.linear.append(t, std::move(lin));
        out.nonlinear.append(t, std::move(rem));
    }
    return out;
}

// u(x) -> lambda^{-1} u(x / lambda), realized exactly in coefficient space:
// same mode indices on a box of length lambda L, coefficients scaled by
// lambda^{d-1}. Mass scales by lambda^{d-2}, ||grad u|| by lambda^{(d-4)/2}.
inline Field rescale(const Field& u, double lambda) {
    if (!(lambda > 0.0)) throw std::invalid_argument("rescale: lambda must be positive");
    Spectrum s = transform(u);
    Grid stretched = s.grid;
    stretched.box = lambda * s.grid.box;
    Spectrum out = Spectrum::zero(stretched);
    const double amp = std::pow(lambda, s.grid.dim - 1);
    for (std::size_t i = 0; i < s.coeffs.size(); ++i) out.coeffs[i] = amp * s.coeffs[i];
    return inverse_transform(out);
}

// max{1, ||u||^4_{L^4 in t and x}}^{1/q}; the loss factor attached to
// inverse-exponent q in the refined local bounds.
inline double m_factor(const Trajectory& traj, const ExtRational& q) {
    if (q.is_infinite()) return 1.0;
    if (!(q.finite_value() > Rational(0)))
        throw std::invalid_argument("m_factor: q must be positive");
    const ExtRational four{Rational(4)};
    const double l4 = spacetime_norm(traj, four, four);
    const double base = std::max(1.0, l4 * l4 * l4 * l4);
    return std::pow(base, 1.0 / q.finite_value().to_double());
}

}  // namespace imlab
