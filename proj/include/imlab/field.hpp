// Value types for physical-space fields and Fourier coefficients.
#pragma once

#include <complex>
#include <vector>

#include "imlab/grid.hpp"

namespace imlab {

using Complex = std::complex<double>;

struct Field {
    Grid grid;
    std::vector<Complex> values;  // row-major over sites, axis 0 slowest

    static Field zero(const Grid& g) { return Field{g, std::vector<Complex>(g.site_count())}; }
};

struct Spectrum {
    Grid grid;
    std::vector<Complex> coeffs;  // row-major over FFT indices, axis 0 slowest

    static Spectrum zero(const Grid& g) { return Spectrum{g, std::vector<Complex>(g.site_count())}; }

    const Complex& at_mode(const Mode& k) const { return coeffs[flat_of_mode(k, grid)]; }
    Complex& at_mode(const Mode& k) { return coeffs[flat_of_mode(k, grid)]; }
};

}  // namespace imlab
