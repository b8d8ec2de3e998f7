// Radial Fourier multipliers: smooth frequency cutoffs, the smoothing
// operator I_N of endpoint-regularity analysis, and |xi|^a derivative
// weights. All act diagonally on Spectrum coefficients.
#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "imlab/field.hpp"
#include "imlab/fft.hpp"

namespace imlab {

// C^2 radial bump: 1 on r <= 1, 0 on r >= 2, and on (1, 2) the quintic
// 1 - t^3 (10 - 15 t + 6 t^2) with t = r - 1, whose first and second
// derivatives vanish at both ends.
inline double bump(double r) {
    if (r <= 1.0) return 1.0;
    if (r >= 2.0) return 0.0;
    const double t = r - 1.0;
    return 1.0 - t * t * t * (10.0 - 15.0 * t + 6.0 * t * t);
}

enum class MultiplierKind {
    Smoothing,   // 1 on |xi| <= N, (N/|xi|)^(1-s) beyond
    LowPass,     // bump(|xi|/N)
    HighPass,    // 1 - bump(|xi|/N)
    BandPass,    // bump(|xi|/N) - bump(2|xi|/N)
    SharpLow,    // indicator of |xi| <= N
    SharpHigh,   // indicator of |xi| > N
    Derivative,  // |xi|^(sign*order)
};

struct MultiplierSpec {
    MultiplierKind kind;
    double cutoff = 0.0;  // N for the cutoff kinds
    double s = 0.0;       // regularity parameter of Smoothing
    double order = 0.0;   // derivative order (order >= 0; sign gives +/-)
    int sign = +1;
};

inline MultiplierSpec smoothing_op(double N, double s) {
    if (!(N > 0.0)) throw std::invalid_argument("smoothing_op: N must be positive");
    if (!(s >= 0.5) || !(s < 1.0))
        throw std::invalid_argument("smoothing_op: s must lie in [1/2, 1)");
    return MultiplierSpec{MultiplierKind::Smoothing, N, s, 0.0, +1};
}

inline MultiplierSpec low_pass(double N) {
    if (!(N > 0.0)) throw std::invalid_argument("low_pass: N must be positive");
    return MultiplierSpec{MultiplierKind::LowPass, N, 0.0, 0.0, +1};
}

inline MultiplierSpec high_pass(double N) {
    if (!(N > 0.0)) throw std::invalid_argument("high_pass: N must be positive");
    return MultiplierSpec{MultiplierKind::HighPass, N, 0.0, 0.0, +1};
}

inline MultiplierSpec band_pass(double N) {
    if (!(N > 0.0)) throw std::invalid_argument("band_pass: N must be positive");
    return MultiplierSpec{MultiplierKind::BandPass, N, 0.0, 0.0, +1};
}

// Sharp complementary projections: sharp_low(N) + sharp_high(N) = identity,
// and each is exactly idempotent (the symbol takes only the values 0 and 1).
inline MultiplierSpec sharp_low(double N) {
    if (!(N > 0.0)) throw std::invalid_argument("sharp_low: N must be positive");
    return MultiplierSpec{MultiplierKind::SharpLow, N, 0.0, 0.0, +1};
}

inline MultiplierSpec sharp_high(double N) {
    if (!(N > 0.0)) throw std::invalid_argument("sharp_high: N must be positive");
    return MultiplierSpec{MultiplierKind::SharpHigh, N, 0.0, 0.0, +1};
}

inline MultiplierSpec derivative_weight(double order, int sign) {
    if (!(order >= 0.0)) throw std::invalid_argument("derivative_weight: order must be >= 0");
    if (sign != +1 && sign != -1) throw std::invalid_argument("derivative_weight: sign must be +1 or -1");
    return MultiplierSpec{MultiplierKind::Derivative, 0.0, 0.0, order, sign};
}

// Smoothing symbol m_N(|xi|) as a plain function; shared with the symbol
// calculus on off-lattice frequency tuples.
inline double smoothing_symbol(double xi_norm, double N, double s) {
    if (xi_norm <= N) return 1.0;
    return std::pow(N / xi_norm, 1.0 - s);
}

inline double evaluate_multiplier(const MultiplierSpec& m, double xi_norm) {
    switch (m.kind) {
        case MultiplierKind::Smoothing:
            return smoothing_symbol(xi_norm, m.cutoff, m.s);
        case MultiplierKind::LowPass:
            return bump(xi_norm / m.cutoff);
        case MultiplierKind::HighPass:
            return 1.0 - bump(xi_norm / m.cutoff);
        case MultiplierKind::BandPass:
            return bump(xi_norm / m.cutoff) - bump(2.0 * xi_norm / m.cutoff);
        case MultiplierKind::SharpLow:
            return xi_norm <= m.cutoff ? 1.0 : 0.0;
        case MultiplierKind::SharpHigh:
            return xi_norm > m.cutoff ? 1.0 : 0.0;
        case MultiplierKind::Derivative: {
            const double p = m.sign * m.order;
            if (xi_norm == 0.0) {
                if (p < 0.0)
                    throw std::domain_error("evaluate_multiplier: negative-order derivative at xi = 0");
                return p == 0.0 ? 1.0 : 0.0;
            }
            return std::pow(xi_norm, p);
        }
    }
    throw std::logic_error("evaluate_multiplier: unknown kind");
}

// Applies the pointwise product of the given symbols. Evaluating the product
// before touching the coefficient keeps application order irrelevant down to
// the last bit (IEEE multiplication is commutative).
inline Spectrum apply_multiplier(const Spectrum& in, std::span<const MultiplierSpec> chain) {
    const double dxi = in.grid.mode_spacing();
    for (const auto& m : chain) {
        if (m.kind != MultiplierKind::Derivative && m.cutoff < dxi)
            throw std::invalid_argument(
                "apply_multiplier: cutoff below the frequency lattice spacing has no representable action");
    }
    Spectrum out = in;
    for (std::size_t i = 0; i < out.coeffs.size(); ++i) {
        Mode k = mode_of_flat(i, in.grid);
        auto xi = frequency_of_mode(k, in.grid);
        const double r = std::sqrt(xi[0] * xi[0] + xi[1] * xi[1] + xi[2] * xi[2]);
        double symbol = 1.0;
        for (const auto& m : chain) symbol *= evaluate_multiplier(m, r);
        out.coeffs[i] *= symbol;
    }
    return out;
}

inline Spectrum apply_multiplier(const Spectrum& in, const MultiplierSpec& m) {
    return apply_multiplier(in, std::span<const MultiplierSpec>(&m, 1));
}

inline Field apply_multiplier(const Field& in, std::span<const MultiplierSpec> chain) {
    return inverse_transform(apply_multiplier(transform(in), chain));
}

inline Field apply_multiplier(const Field& in, const MultiplierSpec& m) {
    return apply_multiplier(in, std::span<const MultiplierSpec>(&m, 1));
}

}  // namespace imlab
