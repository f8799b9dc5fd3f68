#pragma once

#include <span>
#include <vector>

namespace fxnet {

/// Silverman's rule of thumb, 0.9 * min(sd, IQR / 1.34) * n^(-1/5), with
/// fallbacks to sd, |x_0| and finally 1 when the spread is zero.
double silverman_bandwidth(std::span<const double> samples);

struct DensityCurve {
    std::vector<double> x;
    std::vector<double> density;
    double bandwidth = 0.0;
};

/// Gaussian-kernel density on `points` equally spaced nodes over [lo, hi].
/// Mass falling outside the interval is reflected back at both ends, so the
/// curve integrates to 1 on [lo, hi] for samples inside it (bandwidth up to
/// about the interval width).
DensityCurve gaussian_kde(std::span<const double> samples, double bandwidth, double lo = 0.0, double hi = 1.0,
                          int points = 512);

/// Trapezoidal integral of a curve on its grid.
double trapezoid(const DensityCurve& curve);

}  // namespace fxnet
