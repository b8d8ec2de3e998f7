// Seeded random generators of zero-sum frequency quadruples in R^3, one per
// regime the inequality checks probe: generic (uniform ball), near-critical
// transverse angle, resonant, resonant with comparable top pair, and
// resonant high-high-low-low splits. Construction guarantees the zero sum
// exactly: the strata parametrize (xi1, xi12, xi14) and derive the rest.
#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

#include "imlab/rng.hpp"
#include "imlab/symbols.hpp"
#include "imlab/tuples.hpp"

namespace imlab {

inline Vec3 random_unit_vec3(Rng& rng) {
    while (true) {
        Vec3 v{rng.gaussian(), rng.gaussian(), rng.gaussian()};
        const double n = vnorm(v);
        if (n > 1.0e-6) return vscale(1.0 / n, v);
    }
}

// Uniform in the ball of the given radius.
inline Vec3 random_ball_vec3(Rng& rng, double radius) {
    const double r = radius * std::cbrt(rng.uniform());
    return vscale(r, random_unit_vec3(rng));
}

// Unit vector at exact cosine c to the given unit vector.
inline Vec3 unit_at_cosine(Rng& rng, const Vec3& e1, double c) {
    Vec3 e2{};
    while (true) {
        Vec3 w = random_unit_vec3(rng);
        Vec3 perp = vsub(w, vscale(vdot(w, e1), e1));
        const double n = vnorm(perp);
        if (n > 1.0e-6) {
            e2 = vscale(1.0 / n, perp);
            break;
        }
    }
    return vadd(vscale(c, e1), vscale(std::sqrt(1.0 - c * c), e2));
}

// Tuple from the hyperplane coordinates (xi1, a = xi12, b = xi14):
// xi2 = a - xi1, xi4 = b - xi1, xi3 = xi1 - a - b.
inline FrequencyTuple tuple_from_coordinates(const Vec3& x1, const Vec3& a, const Vec3& b) {
    return FrequencyTuple::quad(x1, vsub(a, x1), vsub(vsub(x1, a), b), vsub(b, x1));
}

// Generic stratum: three frequencies uniform in the ball of radius 8N.
inline FrequencyTuple sample_uniform_tuple(Rng& rng, const ResonanceSpec& spec) {
    Vec3 x1 = random_ball_vec3(rng, 8.0 * spec.N);
    Vec3 x2 = random_ball_vec3(rng, 8.0 * spec.N);
    Vec3 x3 = random_ball_vec3(rng, 8.0 * spec.N);
    Vec3 x4 = vneg(vadd(vadd(x1, x2), x3));
    return FrequencyTuple::quad(x1, x2, x3, x4);
}

// Near-critical transverse stratum: |cos angle(xi12, xi14)| in
// [theta0/4, min(4 theta0, 1)], magnitudes of order N.
inline FrequencyTuple sample_near_angle_tuple(Rng& rng, const ResonanceSpec& spec) {
    const double lo = spec.theta0 / 4.0;
    const double hi = std::min(4.0 * spec.theta0, 1.0);
    const double c = (rng.uniform() < 0.5 ? -1.0 : 1.0) * rng.uniform(lo, hi);
    Vec3 ea = random_unit_vec3(rng);
    Vec3 eb = unit_at_cosine(rng, ea, c);
    Vec3 a = vscale(rng.uniform(0.25 * spec.N, 4.0 * spec.N), ea);
    Vec3 b = vscale(rng.uniform(0.25 * spec.N, 4.0 * spec.N), eb);
    Vec3 x1 = random_ball_vec3(rng, 4.0 * spec.N);
    return tuple_from_coordinates(x1, a, b);
}

// Resonant stratum: |xi1| in [2N, 8N] guarantees a frequency above N, and
// cos angle(xi12, xi14) is placed in (-theta0/2, theta0/2) by construction.
inline FrequencyTuple sample_resonant_tuple(Rng& rng, const ResonanceSpec& spec) {
    const double c = rng.uniform(-0.5 * spec.theta0, 0.5 * spec.theta0);
    Vec3 ea = random_unit_vec3(rng);
    Vec3 eb = unit_at_cosine(rng, ea, c);
    Vec3 a = vscale(rng.uniform(0.0, 4.0 * spec.N), ea);
    Vec3 b = vscale(rng.uniform(0.0, 4.0 * spec.N), eb);
    Vec3 x1 = vscale(rng.uniform(2.0 * spec.N, 8.0 * spec.N), random_unit_vec3(rng));
    return tuple_from_coordinates(x1, a, b);
}

// Resonant stratum with comparable top pair: |xi12| <= 2 theta0 |xi1| makes
// | |xi1| - |xi2| | <= 2 theta0 |xi1| by the triangle inequality, the regime
// of the resonant-set geometry bound.
inline FrequencyTuple sample_resonant_comparable_tuple(Rng& rng, const ResonanceSpec& spec) {
    const double c = rng.uniform(-0.5 * spec.theta0, 0.5 * spec.theta0);
    Vec3 ea = random_unit_vec3(rng);
    Vec3 eb = unit_at_cosine(rng, ea, c);
    const double r1 = rng.uniform(2.0 * spec.N, 8.0 * spec.N);
    Vec3 a = vscale(rng.uniform(0.0, 2.0 * spec.theta0 * r1), ea);
    Vec3 b = vscale(rng.uniform(0.0, 4.0 * spec.N), eb);
    Vec3 x1 = vscale(r1, random_unit_vec3(rng));
    return tuple_from_coordinates(x1, a, b);
}

// Resonant high-high-low-low stratum: top pair of size R >= 2N, bottom pair
// well below N. Constructed by aiming xi12 nearly orthogonal to xi14 and
// verified; retries until the sorted-magnitude constraints hold.
inline FrequencyTuple sample_resonant_hilo_tuple(Rng& rng, const ResonanceSpec& spec) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
        const double r1 = rng.uniform(2.0 * spec.N, 8.0 * spec.N);
        Vec3 x1 = vscale(r1, random_unit_vec3(rng));
        Vec3 x3 = vscale(rng.uniform(0.02 * spec.N, 0.25 * spec.N), random_unit_vec3(rng));
        Vec3 v = vsub(x1, x3);  // direction xi14 will take, up to the small a
        Vec3 ev = vscale(1.0 / vnorm(v), v);
        const double c = rng.uniform(-0.125 * spec.theta0, 0.125 * spec.theta0);
        Vec3 ea = unit_at_cosine(rng, ev, c);
        Vec3 a = vscale(rng.uniform(0.0, 0.25 * spec.theta0 * r1), ea);
        // xi3 is prescribed: b = xi1 - a - xi3.
        Vec3 b = vsub(vsub(x1, a), x3);
        FrequencyTuple t = tuple_from_coordinates(x1, a, b);
        double m[4];
        for (int j = 0; j < 4; ++j) m[j] = vnorm(t.xi(j + 1));
        std::sort(m, m + 4, std::greater<double>());
        if (resonant_indicator(t, spec) == 1 && m[1] >= spec.N && m[2] <= 0.5 * spec.N)
            return t;
    }
    throw std::runtime_error(
        "sample_resonant_hilo_tuple: constraints unsatisfiable after 1000 attempts for N = " +
        std::to_string(spec.N));
}

}  // namespace imlab
