// Periodic box discretization. Physical sites x_i = i*(L/M) per axis;
// frequency lattice xi_k = (2*pi/L)*k with integer modes k in [-M/2, M/2).
// Spectra are stored in FFT index order: index j maps to mode j for
// j < M/2 and to mode j - M otherwise.
#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <stdexcept>

namespace imlab {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

struct Grid {
    int dim = 1;
    int modes = 0;        // per-axis mode count M (even)
    double box = 0.0;     // per-axis box length L

    std::size_t site_count() const {
        std::size_t n = 1;
        for (int a = 0; a < dim; ++a) n *= static_cast<std::size_t>(modes);
        return n;
    }
    double spacing() const { return box / modes; }            // L/M
    double mode_spacing() const { return kTwoPi / box; }      // delta xi
    double cell_volume() const {
        double v = 1.0;
        for (int a = 0; a < dim; ++a) v *= spacing();
        return v;
    }
    double mode_cell_volume() const {
        double v = 1.0;
        for (int a = 0; a < dim; ++a) v *= mode_spacing();
        return v;
    }
    double box_volume() const {
        double v = 1.0;
        for (int a = 0; a < dim; ++a) v *= box;
        return v;
    }

    friend bool operator==(const Grid& a, const Grid& b) {
        return a.dim == b.dim && a.modes == b.modes && a.box == b.box;
    }
};

inline Grid make_grid(int dim, int modes_per_dim, double box_length) {
    if (dim < 1 || dim > 3) throw std::invalid_argument("make_grid: dim must be 1, 2, or 3");
    if (modes_per_dim < 4 || modes_per_dim % 2 != 0)
        throw std::invalid_argument("make_grid: modes_per_dim must be even and >= 4");
    if (!(box_length > 0.0)) throw std::invalid_argument("make_grid: box_length must be positive");
    return Grid{dim, modes_per_dim, box_length};
}

// Signed integer mode triple; unused axes are zero.
using Mode = std::array<int, 3>;

inline int signed_mode(int fft_index, int modes) {
    return fft_index < modes / 2 ? fft_index : fft_index - modes;
}

inline int fft_index(int mode, int modes) {
    return mode >= 0 ? mode : mode + modes;
}

inline bool mode_in_band(const Mode& k, const Grid& g) {
    for (int a = 0; a < g.dim; ++a) {
        if (k[a] < -g.modes / 2 || k[a] > g.modes / 2 - 1) return false;
    }
    return true;
}

inline Mode mode_of_flat(std::size_t flat, const Grid& g) {
    Mode k{0, 0, 0};
    for (int a = g.dim - 1; a >= 0; --a) {
        int idx = static_cast<int>(flat % g.modes);
        flat /= g.modes;
        k[a] = signed_mode(idx, g.modes);
    }
    return k;
}

inline std::size_t flat_of_mode(const Mode& k, const Grid& g) {
    std::size_t flat = 0;
    for (int a = 0; a < g.dim; ++a) {
        flat = flat * g.modes + static_cast<std::size_t>(fft_index(k[a], g.modes));
    }
    return flat;
}

// Physical coordinates of flat site index (row-major, axis 0 slowest).
inline std::array<double, 3> site_of_flat(std::size_t flat, const Grid& g) {
    std::array<double, 3> x{0.0, 0.0, 0.0};
    for (int a = g.dim - 1; a >= 0; --a) {
        std::size_t idx = flat % g.modes;
        flat /= g.modes;
        x[a] = static_cast<double>(idx) * g.spacing();
    }
    return x;
}

inline std::array<double, 3> frequency_of_mode(const Mode& k, const Grid& g) {
    const double dxi = g.mode_spacing();
    return {dxi * k[0], dxi * k[1], dxi * k[2]};
}

}  // namespace imlab
