#include "fxnet/dependence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include "fxnet/errors.hpp"

namespace fxnet {

void RdcParams::validate() const {
    if (k < 1) throw InvalidParameter("rdc: k must be >= 1, got " + std::to_string(k));
    if (repetitions < 1) {
        throw InvalidParameter("rdc: repetitions must be >= 1, got " + std::to_string(repetitions));
    }
    if (!(ridge >= 0.0) || !std::isfinite(ridge)) {
        throw InvalidParameter("rdc: ridge must be finite and >= 0");
    }
    if (fixed_scale && !(*fixed_scale > 0.0 && std::isfinite(*fixed_scale))) {
        throw InvalidParameter("rdc: fixed scale must be finite and > 0");
    }
}

void validate_sample(std::span<const double> x) {
    if (x.size() < 2) {
        throw InvalidSample("sample needs at least 2 values, got " + std::to_string(x.size()));
    }
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!std::isfinite(x[i])) {
            throw InvalidSample("sample value at index " + std::to_string(i) + " is not finite");
        }
    }
}

std::vector<double> copula_transform(std::span<const double> x) {
    validate_sample(x);
    const std::size_t n = x.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });

    std::vector<double> u(n);
    const double inv_n = 1.0 / static_cast<double>(n);
    for (std::size_t first = 0; first < n;) {
        std::size_t last = first;
        while (last + 1 < n && x[order[last + 1]] == x[order[first]]) ++last;
        // 1-based average rank of the tie group [first, last]
        const double rank = 0.5 * static_cast<double>(first + last) + 1.0;
        for (std::size_t i = first; i <= last; ++i) u[order[i]] = rank * inv_n;
        first = last + 1;
    }
    return u;
}

double median(std::vector<double> values) {
    if (values.empty()) throw InvalidSample("median of an empty range");
    const std::size_t mid = values.size() / 2;
    std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid), values.end());
    const double upper = values[mid];
    if (values.size() % 2 == 1) return upper;
    const double lower = *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid));
    return 0.5 * (lower + upper);
}

double median_heuristic(std::span<const double> u) {
    validate_sample(u);
    const std::size_t n = u.size();
    std::vector<double> distances;
    distances.reserve(n * (n - 1) / 2);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = u[i] - u[j];
            distances.push_back(d * d);
        }
    }
    const double m = median(std::move(distances));
    return m > kMinScale ? m : kMinScale;
}

Eigen::MatrixXd random_projection(std::span<const double> u, std::span<const double> w,
                                  std::span<const double> b) {
    if (w.size() != b.size() || w.empty()) {
        throw InvalidParameter("random_projection: need equally many (>= 1) weights and phases");
    }
    const auto k = static_cast<Eigen::Index>(w.size());
    const auto n = static_cast<Eigen::Index>(u.size());
    Eigen::MatrixXd features(2 * k, n);
    for (Eigen::Index i = 0; i < k; ++i) {
        for (Eigen::Index t = 0; t < n; ++t) {
            const double arg = w[static_cast<std::size_t>(i)] * u[static_cast<std::size_t>(t)] +
                               b[static_cast<std::size_t>(i)];
            features(2 * i, t) = std::cos(arg);
            features(2 * i + 1, t) = std::sin(arg);
        }
    }
    return features;
}

Eigen::MatrixXd random_projection(std::span<const double> u, int k, double s, std::mt19937_64& rng) {
    if (k < 1) throw InvalidParameter("random_projection: k must be >= 1");
    if (!(s > 0.0) || !std::isfinite(s)) throw InvalidParameter("random_projection: s must be > 0");
    std::normal_distribution<double> weight(0.0, 1.0 / std::sqrt(s));
    std::uniform_real_distribution<double> phase(-std::numbers::pi, std::numbers::pi);
    std::vector<double> w(static_cast<std::size_t>(k));
    std::vector<double> b(static_cast<std::size_t>(k));
    for (std::size_t i = 0; i < w.size(); ++i) {
        w[i] = weight(rng);
        b[i] = phase(rng);
    }
    return random_projection(u, w, b);
}

namespace {

// Symmetric inverse square root; directions with eigenvalue at the level of
// rounding noise are dropped (pseudo-inverse).
Eigen::MatrixXd inverse_sqrt(const Eigen::MatrixXd& c) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(c);
    const Eigen::VectorXd& values = solver.eigenvalues();
    const double top = std::max(values.maxCoeff(), 0.0);
    const double tol = top * static_cast<double>(c.rows()) * std::numeric_limits<double>::epsilon();
    Eigen::VectorXd scaled(values.size());
    for (Eigen::Index i = 0; i < values.size(); ++i) {
        scaled(i) = values(i) > tol && values(i) > 0.0 ? 1.0 / std::sqrt(values(i)) : 0.0;
    }
    const Eigen::MatrixXd& v = solver.eigenvectors();
    return v * scaled.asDiagonal() * v.transpose();
}

// Rejects factorizations that succeeded only nominally on a numerically
// singular matrix.
bool positive_pivots(const Eigen::LLT<Eigen::MatrixXd>& llt) {
    const Eigen::VectorXd d = llt.matrixLLT().diagonal();
    return d.minCoeff() > 1e-7 * d.maxCoeff();
}

bool no_variance(const Eigen::MatrixXd& centered_cov, double magnitude) {
    if (centered_cov.size() == 0) return true;
    const double largest = centered_cov.diagonal().maxCoeff();
    return largest <= 1e-24 * (1.0 + magnitude * magnitude);
}

}  // namespace

CanonicalCorrelation canonical_correlation(const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y, double ridge) {
    if (X.cols() != Y.cols()) {
        throw InvalidPair("canonical_correlation: observation counts differ (" + std::to_string(X.cols()) +
                          " vs " + std::to_string(Y.cols()) + ")");
    }
    if (X.cols() < 2) throw InvalidSample("canonical_correlation: need at least 2 observations");
    if (!(ridge >= 0.0)) throw InvalidParameter("canonical_correlation: ridge must be >= 0");

    const Eigen::Index p = X.rows();
    const Eigen::Index q = Y.rows();
    const double denom = static_cast<double>(X.cols() - 1);

    Eigen::MatrixXd joint(p + q, X.cols());
    joint.topRows(p) = X.colwise() - X.rowwise().mean();
    joint.bottomRows(q) = Y.colwise() - Y.rowwise().mean();
    Eigen::MatrixXd lower = Eigen::MatrixXd::Zero(p + q, p + q);
    lower.selfadjointView<Eigen::Lower>().rankUpdate(joint, 1.0 / denom);
    const Eigen::MatrixXd cov = lower.selfadjointView<Eigen::Lower>();

    Eigen::MatrixXd cxx = cov.topLeftCorner(p, p);
    Eigen::MatrixXd cyy = cov.bottomRightCorner(q, q);
    const double magnitude = std::max(X.cwiseAbs().maxCoeff(), Y.cwiseAbs().maxCoeff());
    if (no_variance(cxx, magnitude) || no_variance(cyy, magnitude)) return {0.0, true};

    cxx.diagonal().array() += ridge;
    cyy.diagonal().array() += ridge;

    // Lx^-1 Cxy Ly^-T has the same singular values as Cxx^-1/2 Cxy Cyy^-1/2,
    // and the Cholesky route is several times cheaper.
    const Eigen::LLT<Eigen::MatrixXd> lx(cxx);
    const Eigen::LLT<Eigen::MatrixXd> ly(cyy);
    Eigen::MatrixXd whitened;
    if (lx.info() == Eigen::Success && ly.info() == Eigen::Success && positive_pivots(lx) && positive_pivots(ly)) {
        whitened = lx.matrixL().solve(cov.topRightCorner(p, q));
        whitened = ly.matrixL().solve(whitened.transpose()).transpose();
    } else {
        whitened = inverse_sqrt(cxx) * cov.topRightCorner(p, q) * inverse_sqrt(cyy);
    }
    const Eigen::MatrixXd gram = p <= q ? Eigen::MatrixXd(whitened * whitened.transpose())
                                        : Eigen::MatrixXd(whitened.transpose() * whitened);
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram, Eigen::EigenvaluesOnly);
    const double top = std::sqrt(std::max(solver.eigenvalues().maxCoeff(), 0.0));
    return {std::clamp(top, 0.0, 1.0), false};
}

PreparedSample prepare_sample(std::span<const double> x, const RdcParams& params) {
    validate_sample(x);
    PreparedSample out;
    out.constant = std::all_of(x.begin(), x.end(), [&](double v) { return v == x.front(); });
    out.u = copula_transform(x);
    out.scale = params.fixed_scale ? *params.fixed_scale : median_heuristic(out.u);
    return out;
}

RdcResult rdc(const PreparedSample& x, const PreparedSample& y, const RdcParams& params, StreamKey cell) {
    params.validate();
    if (x.u.size() != y.u.size()) {
        throw InvalidPair("rdc: sample lengths differ (" + std::to_string(x.u.size()) + " vs " +
                          std::to_string(y.u.size()) + ")");
    }
    RdcResult result;
    if (x.constant || y.constant) {
        result.degenerate = true;
        result.repetitions.assign(static_cast<std::size_t>(params.repetitions), 0.0);
        return result;
    }
    result.repetitions.reserve(static_cast<std::size_t>(params.repetitions));
    for (int r = 0; r < params.repetitions; ++r) {
        cell.repetition = static_cast<std::uint64_t>(r);
        auto rng = make_stream(params.seed, cell);
        const Eigen::MatrixXd fx = random_projection(x.u, params.k, x.scale, rng);
        const Eigen::MatrixXd fy = random_projection(y.u, params.k, y.scale, rng);
        result.repetitions.push_back(canonical_correlation(fx, fy, params.ridge).value);
    }
    result.value = std::clamp(median(result.repetitions), 0.0, 1.0);
    return result;
}

RdcResult rdc(std::span<const double> x, std::span<const double> y, const RdcParams& params, StreamKey cell) {
    params.validate();
    if (x.size() != y.size()) {
        throw InvalidPair("rdc: sample lengths differ (" + std::to_string(x.size()) + " vs " +
                          std::to_string(y.size()) + ")");
    }
    return rdc(prepare_sample(x, params), prepare_sample(y, params), params, cell);
}

double pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) {
        throw InvalidPair("pearson: sample lengths differ (" + std::to_string(x.size()) + " vs " +
                          std::to_string(y.size()) + ")");
    }
    validate_sample(x);
    validate_sample(y);
    const auto is_constant = [](std::span<const double> v) {
        return std::all_of(v.begin(), v.end(), [&](double e) { return e == v.front(); });
    };
    if (is_constant(x) || is_constant(y)) throw DegenerateSample("pearson: constant sample");
    const double n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxy = 0.0;
    double sxx = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) throw DegenerateSample("pearson: constant sample");
    return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

}  // namespace fxnet
