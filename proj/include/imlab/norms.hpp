// Spatial Lebesgue norms, mixed space-time norms over trajectories, and the
// admissibility arithmetic for dispersive estimates in dimension three.
#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "imlab/field.hpp"
#include "imlab/multiplier.hpp"
#include "imlab/rational.hpp"
#include "imlab/reduce.hpp"
#include "imlab/trajectory.hpp"

namespace imlab {

// L^r norm with the cell-volume quadrature weight; r = infinity gives the
// grid supremum.
inline double lebesgue_norm(const Field& u, double r) {
    if (std::isinf(r)) {
        double sup = 0.0;
        for (const auto& v : u.values) sup = std::max(sup, std::abs(v));
        return sup;
    }
    if (!(r >= 1.0)) throw std::invalid_argument("lebesgue_norm: exponent must be >= 1");
    const double hd = u.grid.cell_volume();
    const double sum = parallel_reduce(u.values.size(), [&](std::size_t i) {
        return std::pow(std::abs(u.values[i]), r);
    });
    return std::pow(hd * sum, 1.0 / r);
}

inline double lebesgue_norm(const Field& u, const ExtRational& r) {
    return lebesgue_norm(u, r.to_double());
}

// L^q in time of the spatial L^r norm, trapezoid rule on the sample times;
// q = infinity gives the max over samples.
inline double spacetime_norm(const Trajectory& traj, const ExtRational& q, const ExtRational& r) {
    if (traj.size() == 0) throw std::invalid_argument("spacetime_norm: empty trajectory");
    std::vector<double> spatial(traj.size());
    for (std::size_t i = 0; i < traj.size(); ++i) spatial[i] = lebesgue_norm(traj.fields[i], r);
    if (q.is_infinite()) return *std::max_element(spatial.begin(), spatial.end());
    const double qd = q.finite_value().to_double();
    if (!(qd >= 1.0)) throw std::invalid_argument("spacetime_norm: exponent must be >= 1");
    if (traj.size() == 1) return 0.0;
    double integral = 0.0;
    for (std::size_t i = 0; i + 1 < traj.size(); ++i) {
        const double dt = traj.times[i + 1] - traj.times[i];
        integral += 0.5 * dt * (std::pow(spatial[i], qd) + std::pow(spatial[i + 1], qd));
    }
    return std::pow(integral, 1.0 / qd);
}

// Exponent pair (q, r) for space-time bounds. Admissible in dimension three
// means 2/q = 3(1/2 - 1/r) with q >= 2, checked in exact arithmetic.
struct AdmissiblePair {
    ExtRational q;
    ExtRational r;
};

inline bool is_admissible(const ExtRational& q, const ExtRational& r) {
    const Rational half(1, 2);
    const Rational two_over_q = Rational(2) * q.reciprocal();
    const Rational gap = Rational(3) * (half - r.reciprocal());
    if (two_over_q != gap) return false;
    if (q.is_infinite()) return true;
    return q.finite_value() >= Rational(2);
}

inline bool is_admissible(const AdmissiblePair& p) { return is_admissible(p.q, p.r); }

// The pairs whose maximum defines the iteration-space norm of the local
// theory: energy, symmetric-exponent, midpoint, and a high-q member.
inline std::vector<AdmissiblePair> default_iteration_pairs() {
    return {
        {ExtRational::infinity(), ExtRational(Rational(2))},
        {ExtRational(Rational(2)), ExtRational(Rational(6))},
        {ExtRational(Rational(4)), ExtRational(Rational(3))},
        {ExtRational(Rational(8)), ExtRational(Rational(12, 5))},
    };
}

// Max over the pair list of the space-time norms of grad I u, the norm the
// iteration of the local theory runs in. The sup over all admissible pairs
// is approximated by the supplied finite family.
inline double iteration_norm(const Trajectory& traj, double N, double s,
                             const std::vector<AdmissiblePair>& pairs) {
    if (pairs.empty()) throw std::invalid_argument("iteration_norm: empty pair list");
    for (const auto& p : pairs)
        if (!is_admissible(p)) throw std::invalid_argument("iteration_norm: inadmissible pair");
    const MultiplierSpec chain[] = {derivative_weight(1.0, +1), smoothing_op(N, s)};
    Trajectory filtered{traj.grid, {}, {}};
    for (std::size_t i = 0; i < traj.size(); ++i)
        filtered.append(traj.times[i], apply_multiplier(traj.fields[i], chain));
    double best = 0.0;
    for (const auto& p : pairs) best = std::max(best, spacetime_norm(filtered, p.q, p.r));
    return best;
}

inline double iteration_norm(const Trajectory& traj, double N, double s) {
    return iteration_norm(traj, N, s, default_iteration_pairs());
}

// || grad I_N u ||_{L^2} evaluated spectrally; the quantity whose square the
// modified energy tracks.
inline double filtered_gradient_norm(const Field& u, double N, double s) {
    Spectrum su = transform(u);
    const double dxi_d = su.grid.mode_cell_volume();
    const double sum = parallel_reduce(su.coeffs.size(), [&](std::size_t i) {
        Mode k = mode_of_flat(i, su.grid);
        auto xi = frequency_of_mode(k, su.grid);
        const double r2 = xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2];
        const double m = smoothing_symbol(std::sqrt(r2), N, s);
        return r2 * m * m * std::norm(su.coeffs[i]);
    });
    return std::sqrt(dxi_d * sum);
}

}  // namespace imlab
