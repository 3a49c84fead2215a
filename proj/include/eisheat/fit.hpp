#pragma once

#include <span>

namespace eis {

/// Least-squares line through (log10 x, log10 y).
struct LogLogFit {
    double slope = 0.0;
    double intercept = 0.0;
    /// Root-mean-square residual in log10 units.
    double rms_residual = 0.0;
};

LogLogFit fit_loglog(std::span<const double> x, std::span<const double> y);

}  // namespace eis
