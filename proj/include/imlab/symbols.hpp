// Symbol calculus on the zero-sum frequency hyperplane: the quadratic and
// quartic energy symbols, the resonance function and its angle geometry,
// the resonance-corrected quartic symbol, symmetrization over the slot
// group, and the extension of a quartic symbol to six slots.
//
// Sign conventions are fixed by two exact identities, both enforced in the
// test suite:
//   (a) [-2i X(sigma2)]_sym = (i/4) sum_j (-1)^{j-1} m_j^2 |xi_j|^2,
//   (b) d/dt Lambda2(sigma2) = Lambda4(-2i X(sigma2)) along the truncated
//       cubic flow.
// The corrected symbol is the quotient of (a) by i*alpha4 on the
// non-resonant set, which makes its plateau value exactly 1/4.
#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "imlab/field.hpp"
#include "imlab/multiplier.hpp"
#include "imlab/tuples.hpp"

namespace imlab {

struct ResonanceSpec {
    double N = 0.0;
    double s = 0.0;
    double theta0 = 0.0;  // transverse-angle threshold, default N^(-7/8)

    static ResonanceSpec make(double N, double s, double theta0_exponent = -7.0 / 8.0) {
        if (!(N > 0.0)) throw std::invalid_argument("ResonanceSpec: N must be positive");
        if (!(s > 0.5) || !(s < 1.0))
            throw std::invalid_argument("ResonanceSpec: s must lie in (1/2, 1)");
        if (!(theta0_exponent <= 0.0))
            throw std::invalid_argument("ResonanceSpec: theta0 exponent must be <= 0");
        ResonanceSpec spec{N, s, std::pow(N, theta0_exponent)};
        if (!(spec.theta0 > 0.0) || !(spec.theta0 <= 1.0))
            throw std::invalid_argument("ResonanceSpec: theta0 must lie in (0, 1]");
        return spec;
    }
};

// sigma2(xi) = (1/2) |xi|^2 m(xi)^2: the symbol whose quadratic functional
// is the filtered kinetic energy.
inline double sigma2(const Vec3& xi, double N, double s) {
    const double m = smoothing_symbol(vnorm(xi), N, s);
    return 0.5 * vnorm2(xi) * m * m;
}

// sigma4 = (1/4) m1 m2 m3 m4: the symbol whose quartic functional is the
// potential term of the filtered energy.
inline double sigma4(const FrequencyTuple& t, double N, double s) {
    double prod = 0.25;
    for (int j = 1; j <= 4; ++j) prod *= smoothing_symbol(vnorm(t.xi(j)), N, s);
    return prod;
}

// alpha4 = 2 xi12 . xi14; on the hyperplane it equals the alternating sum
// |xi1|^2 - |xi2|^2 + |xi3|^2 - |xi4|^2.
inline double alpha4(const FrequencyTuple& t) { return 2.0 * vdot(t.xi12(), t.xi14()); }

// cos of the angle between xi12 and xi14; defined as 0 when either vanishes
// (tie-break: such tuples count as resonant whenever any frequency exceeds N).
inline double cos_angle(const FrequencyTuple& t) {
    const Vec3 a = t.xi12();
    const Vec3 b = t.xi14();
    const double na2 = vnorm2(a);
    const double nb2 = vnorm2(b);
    if (na2 == 0.0 || nb2 == 0.0) return 0.0;
    return vdot(a, b) / std::sqrt(na2 * nb2);
}

// Omega1: every |xi_j| <= N (squared comparison, exact on integer lattices).
inline bool in_low_plateau(const FrequencyTuple& t, const ResonanceSpec& spec) {
    const double n2 = spec.N * spec.N;
    for (int j = 1; j <= 4; ++j)
        if (vnorm2(t.xi(j)) > n2) return false;
    return true;
}

// Omega2: |cos angle(xi12, xi14)| >= theta0.
inline bool in_transverse_set(const FrequencyTuple& t, const ResonanceSpec& spec) {
    return std::abs(cos_angle(t)) >= spec.theta0;
}

inline bool in_nonresonant_set(const FrequencyTuple& t, const ResonanceSpec& spec) {
    return in_low_plateau(t, spec) || in_transverse_set(t, spec);
}

// Indicator of the resonant set: some frequency above N and nearly
// orthogonal xi12, xi14.
inline int resonant_indicator(const FrequencyTuple& t, const ResonanceSpec& spec) {
    return in_nonresonant_set(t, spec) ? 0 : 1;
}

// Alternating weighted square sum: sum_j (-1)^{j-1} m_j^2 |xi_j|^2. Equals
// alpha4 when every m_j = 1.
inline double alternating_square_sum(const FrequencyTuple& t, const ResonanceSpec& spec) {
    double sum = 0.0;
    for (int j = 1; j <= 4; ++j) {
        const double m = smoothing_symbol(vnorm(t.xi(j)), spec.N, spec.s);
        sum += (j % 2 == 1 ? 1.0 : -1.0) * m * m * vnorm2(t.xi(j));
    }
    return sum;
}

// The corrected quartic symbol: on the low plateau exactly 1/4 (removable
// singularity included), on the transverse set the quotient
// (1/4) alternating_square_sum / alpha4, zero on the resonant set. There
// alpha4 cannot vanish: |cos| >= theta0 > 0 forces xi12 . xi14 != 0.
inline double sigma4_tilde(const FrequencyTuple& t, const ResonanceSpec& spec) {
    if (in_low_plateau(t, spec)) return 0.25;
    if (in_transverse_set(t, spec)) return 0.25 * alternating_square_sum(t, spec) / alpha4(t);
    return 0.0;
}

// Quartic integrand of the modified-energy increment: purely imaginary,
// supported on the resonant set.
inline Complex increment_symbol4(const FrequencyTuple& t, const ResonanceSpec& spec) {
    if (resonant_indicator(t, spec) == 0) return Complex{0.0, 0.0};
    return Complex{0.0, 0.25 * alternating_square_sum(t, spec)};
}

struct SymbolK {
    int arity = 4;
    std::string name;
    std::function<Complex(const FrequencyTuple&)> eval;
};

namespace detail {

inline std::vector<std::array<int, 3>> slot_permutations(int half) {
    std::array<int, 3> base{0, 1, 2};
    std::vector<std::array<int, 3>> out;
    std::vector<int> idx(base.begin(), base.begin() + half);
    do {
        std::array<int, 3> p{0, 1, 2};
        for (int i = 0; i < half; ++i) p[static_cast<std::size_t>(i)] = idx[static_cast<std::size_t>(i)];
        out.push_back(p);
    } while (std::next_permutation(idx.begin(), idx.end()));
    return out;
}

}  // namespace detail

// Group average over slot symmetries: permutations of odd slots, of even
// slots, and the pair-swap-with-conjugation involution
// (hM)(x1,x2,...) = conj(M(x2,x1,...)). Group order 8 at arity 4, 72 at 6.
inline SymbolK symmetrize(const SymbolK& m) {
    if (m.arity != 4 && m.arity != 6) throw std::invalid_argument("symmetrize: arity must be 4 or 6");
    const int half = m.arity / 2;
    auto perms = detail::slot_permutations(half);
    auto inner = m.eval;
    const int arity = m.arity;
    auto eval = [perms, inner, arity, half](const FrequencyTuple& t) -> Complex {
        Complex acc{0.0, 0.0};
        std::array<Vec3, 6> ys{};
        for (const auto& pa : perms) {
            for (const auto& pb : perms) {
                for (int i = 0; i < half; ++i) {
                    ys[static_cast<std::size_t>(2 * i)] = t.xi(2 * pa[static_cast<std::size_t>(i)] + 1);
                    ys[static_cast<std::size_t>(2 * i + 1)] = t.xi(2 * pb[static_cast<std::size_t>(i)] + 2);
                }
                acc += inner(FrequencyTuple::unchecked(arity, ys));
                std::array<Vec3, 6> zs{};
                for (int i = 0; i < half; ++i) {
                    zs[static_cast<std::size_t>(2 * i)] = ys[static_cast<std::size_t>(2 * i + 1)];
                    zs[static_cast<std::size_t>(2 * i + 1)] = ys[static_cast<std::size_t>(2 * i)];
                }
                acc += std::conj(inner(FrequencyTuple::unchecked(arity, zs)));
            }
        }
        const double order = 2.0 * static_cast<double>(perms.size() * perms.size());
        return acc / order;
    };
    return SymbolK{m.arity, "[" + m.name + "]_sym", std::move(eval)};
}

// Extension of a quartic symbol to six slots: the first three frequencies
// enter only through their sum.
inline SymbolK extend_symbol(const SymbolK& m) {
    if (m.arity != 4) throw std::invalid_argument("extend_symbol: arity must be 4");
    auto inner = m.eval;
    auto eval = [inner](const FrequencyTuple& t) -> Complex {
        if (t.arity() != 6) throw std::invalid_argument("extended symbol: tuple arity must be 6");
        return inner(FrequencyTuple::unchecked(4, {t.xi123(), t.xi(4), t.xi(5), t.xi(6), Vec3{}, Vec3{}}));
    };
    return SymbolK{6, "X(" + m.name + ")", std::move(eval)};
}

// Ready-made symbol objects.

inline SymbolK sigma4_symbol(double N, double s) {
    return SymbolK{4, "sigma4",
                   [N, s](const FrequencyTuple& t) { return Complex{sigma4(t, N, s), 0.0}; }};
}

inline SymbolK sigma4_tilde_symbol(const ResonanceSpec& spec) {
    return SymbolK{4, "sigma4_tilde",
                   [spec](const FrequencyTuple& t) { return Complex{sigma4_tilde(t, spec), 0.0}; }};
}

inline SymbolK increment_symbol4_symbol(const ResonanceSpec& spec) {
    return SymbolK{4, "increment4",
                   [spec](const FrequencyTuple& t) { return increment_symbol4(t, spec); }};
}

// -2i sigma2(xi123) as an (unsymmetrized) quartic symbol; its group average
// is identity (a) in the header comment.
inline SymbolK minus2i_extended_sigma2(double N, double s) {
    return SymbolK{4, "-2iX(sigma2)", [N, s](const FrequencyTuple& t) {
                       return Complex{0.0, -2.0} * sigma2(t.xi123(), N, s);
                   }};
}

// Check variant for the increment representation: returns the subtraction
// form [-2i X(sigma2)]_sym - i alpha4 sigma4_tilde (left, via the literal
// group average) and the indicator form (right); the two must agree.
inline std::pair<Complex, Complex> increment_symbol_forms(const FrequencyTuple& t,
                                                          const ResonanceSpec& spec) {
    SymbolK sym = symmetrize(minus2i_extended_sigma2(spec.N, spec.s));
    const Complex left = sym.eval(t) - Complex{0.0, 1.0} * alpha4(t) * sigma4_tilde(t, spec);
    const Complex right = increment_symbol4(t, spec);
    return {left, right};
}

}  // namespace imlab
