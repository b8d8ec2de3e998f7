// Report containers for the empirical-inequality harness: normalized-ratio
// suprema with saturation probes, and parameter sweeps with log-log fits.
#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace imlab {

struct DecadeBin {
    double lo = 0.0;   // dominant-frequency decade [lo, 10 lo)
    double sup = 0.0;
    std::size_t count = 0;
};

struct BoundReport {
    std::string quantity;
    std::size_t n_samples = 0;
    double sup_ratio = 0.0;
    bool saturated = false;          // sup at 10n samples <= 2 * sup at n
    double sup_ratio_10x = 0.0;
    std::vector<DecadeBin> decades;  // keyed by decade of max_j |xi_j|
};

namespace detail {

inline void decade_insert(std::vector<DecadeBin>& bins, double scale, double ratio) {
    if (!(scale > 0.0)) scale = 1.0;
    const double lo = std::pow(10.0, std::floor(std::log10(scale)));
    for (auto& b : bins) {
        if (b.lo == lo) {
            b.sup = std::max(b.sup, ratio);
            ++b.count;
            return;
        }
    }
    bins.push_back(DecadeBin{lo, ratio, 1});
}

}  // namespace detail

struct SweepReport {
    std::string quantity;
    std::vector<double> params;
    std::vector<double> values;
    double slope = 0.0;
    double fit_residual = 0.0;  // rms residual of the log-log fit
};

// Least-squares slope of log(value) against log(param). Requires >= 4
// positive points; otherwise the slope is NaN and the values stand alone.
inline void loglog_fit(SweepReport& report) {
    const std::size_t n = report.params.size();
    if (n != report.values.size()) throw std::invalid_argument("loglog_fit: length mismatch");
    bool usable = n >= 4;
    for (std::size_t i = 0; i < n && usable; ++i)
        usable = report.params[i] > 0.0 && report.values[i] > 0.0;
    if (!usable) {
        report.slope = std::nan("");
        report.fit_residual = std::nan("");
        return;
    }
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = std::log(report.params[i]);
        const double y = std::log(report.values[i]);
        sx += x; sy += y; sxx += x * x; sxy += x * y;
    }
    const double nn = static_cast<double>(n);
    const double denom = nn * sxx - sx * sx;
    report.slope = (nn * sxy - sx * sy) / denom;
    const double intercept = (sy - report.slope * sx) / nn;
    double rss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = std::log(report.values[i]) -
                         (report.slope * std::log(report.params[i]) + intercept);
        rss += r * r;
    }
    report.fit_residual = std::sqrt(rss / nn);
}

}  // namespace imlab
