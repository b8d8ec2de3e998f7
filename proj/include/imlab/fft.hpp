// Discrete Fourier transforms between Field and Spectrum, normalized so that
//   sum |u(x)|^2 (L/M)^d  ==  sum |u_hat(xi)|^2 (2*pi/L)^d
// holds exactly (Plancherel). Transforms are backed by FFTW3 with
// FFTW_ESTIMATE plans, which are deterministic for a given size.
#pragma once

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

#include <fftw3.h>

#include "imlab/field.hpp"

namespace imlab {

namespace detail {

class PlanCache {
public:
    static PlanCache& instance() {
        static PlanCache cache;
        return cache;
    }

    void execute(const Grid& g, int sign, const Complex* in, Complex* out) {
        fftw_plan plan = get(g, sign);
        // const_cast is safe: FFTW does not modify the input of an
        // out-of-place c2c transform.
        fftw_execute_dft(plan,
                         reinterpret_cast<fftw_complex*>(const_cast<Complex*>(in)),
                         reinterpret_cast<fftw_complex*>(out));
    }

private:
    std::mutex mutex_;
    std::map<std::tuple<int, int, int>, fftw_plan> plans_;

    fftw_plan get(const Grid& g, int sign) {
        std::lock_guard<std::mutex> lock(mutex_);
        auto key = std::make_tuple(g.dim, g.modes, sign);
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;

        std::vector<Complex> a(g.site_count()), b(g.site_count());
        int n[3] = {g.modes, g.modes, g.modes};
        fftw_plan plan = fftw_plan_dft(g.dim, n,
                                       reinterpret_cast<fftw_complex*>(a.data()),
                                       reinterpret_cast<fftw_complex*>(b.data()),
                                       sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
        if (plan == nullptr) throw std::runtime_error("fft: FFTW plan creation failed");
        plans_.emplace(key, plan);
        return plan;
    }
};

}  // namespace detail

inline Spectrum transform(const Field& u) {
    Spectrum s = Spectrum::zero(u.grid);
    detail::PlanCache::instance().execute(u.grid, FFTW_FORWARD, u.values.data(), s.coeffs.data());
    const double scale = std::pow(kTwoPi, -0.5 * u.grid.dim) * u.grid.cell_volume();
    for (auto& c : s.coeffs) c *= scale;
    return s;
}

inline Field inverse_transform(const Spectrum& s) {
    Field u = Field::zero(s.grid);
    detail::PlanCache::instance().execute(s.grid, FFTW_BACKWARD, s.coeffs.data(), u.values.data());
    const double scale = std::pow(kTwoPi, -0.5 * s.grid.dim) * s.grid.mode_cell_volume();
    for (auto& c : u.values) c *= scale;
    return u;
}

// Embeds the coefficient band into a grid with factor*M modes per axis.
// Coefficient values are unchanged: the mode-cell normalization depends only
// on L, so the padded spectrum represents the same trigonometric polynomial.
inline Spectrum pad_spectrum(const Spectrum& s, int factor) {
    if (factor < 1) throw std::invalid_argument("pad_spectrum: factor must be >= 1");
    Grid fine{s.grid.dim, s.grid.modes * factor, s.grid.box};
    Spectrum out = Spectrum::zero(fine);
    for (std::size_t i = 0; i < s.coeffs.size(); ++i) {
        if (s.coeffs[i] == Complex{}) continue;
        out.at_mode(mode_of_flat(i, s.grid)) = s.coeffs[i];
    }
    return out;
}

// Restricts to the band of a grid with target_modes per axis, discarding
// coefficients outside it.
inline Spectrum truncate_spectrum(const Spectrum& s, int target_modes) {
    if (target_modes > s.grid.modes)
        throw std::invalid_argument("truncate_spectrum: target exceeds source band");
    Grid coarse{s.grid.dim, target_modes, s.grid.box};
    Spectrum out = Spectrum::zero(coarse);
    for (std::size_t i = 0; i < out.coeffs.size(); ++i) {
        Mode k = mode_of_flat(i, coarse);
        out.coeffs[i] = s.at_mode(k);
    }
    return out;
}

}  // namespace imlab
