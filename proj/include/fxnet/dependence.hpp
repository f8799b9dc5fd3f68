#pragma once

// Randomized Dependence Coefficient (RDC) and the Pearson baseline.
//
// The RDC of two samples is the largest canonical correlation between
// random sine/cosine features of their empirical copula transforms. It
// estimates the Hirschfeld-Gebelein-Renyi maximal correlation
// sup_{f,g} corr(f(X), g(Y)), which is not computable directly.

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "fxnet/rng.hpp"

namespace fxnet {

/// Floor applied to the median heuristic when the median distance is zero.
inline constexpr double kMinScale = 1e-6;

struct RdcParams {
    /// Random features per sample; each contributes a cosine and a sine row.
    int k = 10;
    /// Kernel width. Unset means: median heuristic, per sample.
    std::optional<double> fixed_scale;
    /// Independent evaluations; the median is reported.
    int repetitions = 5;
    std::uint64_t seed = 0;
    /// Added to the diagonal of each within-set covariance before CCA.
    double ridge = 1e-6;

    /// Throws InvalidParameter when a field is out of range.
    void validate() const;
};

/// Throws InvalidSample unless `x` has at least two finite values.
void validate_sample(std::span<const double> x);

/// Normalized ranks rank(x_i)/n, ties receiving their average rank.
std::vector<double> copula_transform(std::span<const double> x);

/// Median of the n(n-1)/2 pairwise squared distances, floored at kMinScale.
double median_heuristic(std::span<const double> u);

/// 2k x n feature matrix. Rows 2i and 2i+1 hold cos and sin of w_i*u + b_i
/// with w_i ~ N(0, 1/s) and b_i ~ U[-pi, pi]; `s` acts as the squared width
/// of the Gaussian kernel the features approximate.
Eigen::MatrixXd random_projection(std::span<const double> u, int k, double s, std::mt19937_64& rng);

/// Same layout with caller-supplied weights and phases.
Eigen::MatrixXd random_projection(std::span<const double> u, std::span<const double> w,
                                  std::span<const double> b);

struct CanonicalCorrelation {
    double value = 0.0;
    /// Set when either block has zero variance in every direction.
    bool rank_deficient = false;
};

/// Largest canonical correlation between the rows of X (p x n) and Y (q x n).
/// Columns are paired observations. Rows are mean-centered internally.
CanonicalCorrelation canonical_correlation(const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y,
                                           double ridge);

/// A sample reduced to what the RDC needs: copula values and kernel width.
struct PreparedSample {
    std::vector<double> u;
    double scale = kMinScale;
    bool constant = false;
};

PreparedSample prepare_sample(std::span<const double> x, const RdcParams& params);

struct RdcResult {
    double value = 0.0;
    /// One entry per repetition, in draw order.
    std::vector<double> repetitions;
    /// Set when either input is constant; `value` is then 0.
    bool degenerate = false;
};

/// RDC with per-repetition streams derived from (params.seed, cell.window,
/// cell.cell, repetition). `cell.repetition` is ignored.
RdcResult rdc(std::span<const double> x, std::span<const double> y, const RdcParams& params,
              StreamKey cell = {});

RdcResult rdc(const PreparedSample& x, const PreparedSample& y, const RdcParams& params,
              StreamKey cell = {});

/// Sample Pearson correlation. Throws DegenerateSample on a constant input.
double pearson(std::span<const double> x, std::span<const double> y);

/// Median of a non-empty range (mean of the two central values for even sizes).
double median(std::vector<double> values);

}  // namespace fxnet
