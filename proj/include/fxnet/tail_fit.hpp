#pragma once

// Discrete power-law and log-normal fits to the upper tail of a degree
// distribution.

#include <cstddef>
#include <map>
#include <span>

namespace fxnet {

struct TailFit {
    /// False when the sample has fewer than two distinct values.
    bool available = false;
    double alpha = 0.0;
    int xmin = 1;
    /// Degrees >= xmin used by both fits.
    std::size_t tail_size = 0;
    double mu = 0.0;
    double sigma = 0.0;
    /// Kolmogorov-Smirnov distance of the tail to each fitted model.
    double ks_pl = 0.0;
    double ks_ln = 0.0;
};

/// Hurwitz zeta sum_{k>=0} (k + q)^-s for s > 1, q > 0.
double hurwitz_zeta(double s, double q);

/// Power law: alpha by maximum likelihood for each candidate xmin, keeping
/// the xmin whose fit has the smallest KS distance. Log-normal: maximum
/// likelihood (mean and deviation of ln x) on the same tail, compared
/// through its unit-bin discretization truncated at xmin.
/// Throws InvalidParameter on a degree < 1.
TailFit fit_degree_tail(std::span<const int> degrees);

/// Histogram form: degree -> count.
TailFit fit_degree_tail(const std::map<int, std::size_t>& histogram);

}  // namespace fxnet
