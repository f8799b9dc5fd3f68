#include "fxnet/kde.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "fxnet/errors.hpp"

namespace fxnet {

namespace {

double quantile(const std::vector<double>& sorted, double p) {
    const double h = (static_cast<double>(sorted.size()) - 1.0) * p;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

}  // namespace

double silverman_bandwidth(std::span<const double> samples) {
    if (samples.empty()) throw InvalidSample("silverman_bandwidth: no samples");
    const double n = static_cast<double>(samples.size());
    const double mean = std::accumulate(samples.begin(), samples.end(), 0.0) / n;
    double ss = 0.0;
    for (double v : samples) ss += (v - mean) * (v - mean);
    const double sd = samples.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;

    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    const double iqr = quantile(sorted, 0.75) - quantile(sorted, 0.25);

    // rounding in the mean leaves a point mass with sd around 1e-17
    const double negligible = 1e-12 * std::max(std::abs(mean), 1.0);
    double spread = std::min(sd, iqr / 1.34);
    if (!(spread > negligible)) spread = sd;
    if (!(spread > negligible)) spread = std::abs(mean);
    if (!(spread > 0.0)) spread = 1.0;
    return 0.9 * spread * std::pow(n, -0.2);
}

DensityCurve gaussian_kde(std::span<const double> samples, double bandwidth, double lo, double hi, int points) {
    if (samples.empty()) throw InvalidSample("gaussian_kde: no samples");
    if (!(bandwidth > 0.0)) throw InvalidParameter("gaussian_kde: bandwidth must be > 0");
    if (!(hi > lo) || points < 2) throw InvalidParameter("gaussian_kde: need hi > lo and >= 2 grid points");

    DensityCurve curve;
    curve.bandwidth = bandwidth;
    curve.x.resize(static_cast<std::size_t>(points));
    curve.density.assign(static_cast<std::size_t>(points), 0.0);
    constexpr int kImages = 2;
    const double width = hi - lo;
    const double step = width / (points - 1);
    const double norm = 1.0 / (static_cast<double>(samples.size()) * bandwidth * std::sqrt(2.0 * std::numbers::pi));
    for (int g = 0; g < points; ++g) {
        const double x = lo + step * g;
        curve.x[static_cast<std::size_t>(g)] = x;
        double sum = 0.0;
        for (double s : samples) {
            // mirror images of s under repeated reflection at lo and hi
            for (int m = -kImages; m <= kImages; ++m) {
                for (double centre : {s + 2.0 * m * width, 2.0 * lo - s + 2.0 * m * width}) {
                    const double z = (x - centre) / bandwidth;
                    sum += std::exp(-0.5 * z * z);
                }
            }
        }
        curve.density[static_cast<std::size_t>(g)] = sum * norm;
    }
    return curve;
}

double trapezoid(const DensityCurve& curve) {
    double area = 0.0;
    for (std::size_t i = 1; i < curve.x.size(); ++i) {
        area += 0.5 * (curve.density[i] + curve.density[i - 1]) * (curve.x[i] - curve.x[i - 1]);
    }
    return area;
}

}  // namespace fxnet
