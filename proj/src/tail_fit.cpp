#include "fxnet/tail_fit.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include <boost/math/tools/minima.hpp>

#include "fxnet/errors.hpp"

namespace fxnet {

double hurwitz_zeta(double s, double q) {
    if (!(s > 1.0) || !(q > 0.0)) throw InvalidParameter("hurwitz_zeta: need s > 1 and q > 0");
    // Euler-Maclaurin with a direct head of `head` terms.
    constexpr int head = 12;
    // B_{2j} / (2j)!
    constexpr std::array<double, 7> bernoulli_over_factorial{
        1.0 / 12.0,       -1.0 / 720.0,         1.0 / 30240.0,       -1.0 / 1209600.0,
        1.0 / 47900160.0, -691.0 / 1307674368000.0, 1.0 / 74724249600.0,
    };
    double sum = 0.0;
    for (int k = 0; k < head; ++k) sum += std::pow(q + k, -s);
    const double a = q + head;
    sum += std::pow(a, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(a, -s);
    // rising factorial s (s+1) ... (s+2j-2) times a^{-s-2j+1}
    double factor = s * std::pow(a, -s - 1.0);
    for (std::size_t j = 0; j < bernoulli_over_factorial.size(); ++j) {
        sum += bernoulli_over_factorial[j] * factor;
        const double m = static_cast<double>(2 * j + 1);
        factor *= (s + m) * (s + m + 1.0) / (a * a);
    }
    return sum;
}

namespace {

struct PowerLawFit {
    double alpha = 0.0;
    double ks = std::numeric_limits<double>::infinity();
};

// `tail` sorted ascending, all >= xmin.
PowerLawFit fit_power_law(std::span<const int> tail, int xmin) {
    const double n = static_cast<double>(tail.size());
    double sum_log = 0.0;
    for (int x : tail) sum_log += std::log(static_cast<double>(x));
    const auto negative_log_likelihood = [&](double alpha) {
        return n * std::log(hurwitz_zeta(alpha, xmin)) + alpha * sum_log;
    };
    const auto [alpha, nll] = boost::math::tools::brent_find_minima(negative_log_likelihood, 1.0 + 1e-6, 20.0, 40);
    (void)nll;

    PowerLawFit fit;
    fit.alpha = alpha;
    const double norm = hurwitz_zeta(alpha, xmin);
    const auto model_cdf = [&](int x) { return 1.0 - hurwitz_zeta(alpha, x + 1.0) / norm; };
    double ks = 0.0;
    for (std::size_t i = 0; i < tail.size();) {
        std::size_t j = i;
        while (j < tail.size() && tail[j] == tail[i]) ++j;
        const double before = static_cast<double>(i) / n;
        const double after = static_cast<double>(j) / n;
        // the empirical CDF is flat between observed values; check both ends of each step
        ks = std::max(ks, std::abs(after - model_cdf(tail[i])));
        if (tail[i] > xmin) ks = std::max(ks, std::abs(before - model_cdf(tail[i] - 1)));
        i = j;
    }
    fit.ks = ks;
    return fit;
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

}  // namespace

TailFit fit_degree_tail(std::span<const int> degrees) {
    std::vector<int> sorted(degrees.begin(), degrees.end());
    for (int d : sorted) {
        if (d < 1) throw InvalidParameter("fit_degree_tail: degrees must be >= 1");
    }
    std::sort(sorted.begin(), sorted.end());
    std::vector<int> distinct = sorted;
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

    TailFit result;
    if (distinct.size() < 2) return result;

    // every candidate leaves at least two distinct values in the tail
    for (std::size_t c = 0; c + 1 < distinct.size(); ++c) {
        const int xmin = distinct[c];
        const auto begin = std::lower_bound(sorted.begin(), sorted.end(), xmin);
        const std::span<const int> tail(&*begin, static_cast<std::size_t>(sorted.end() - begin));
        const PowerLawFit fit = fit_power_law(tail, xmin);
        if (!result.available || fit.ks < result.ks_pl) {
            result.available = true;
            result.alpha = fit.alpha;
            result.xmin = xmin;
            result.ks_pl = fit.ks;
            result.tail_size = tail.size();
        }
    }

    const auto begin = std::lower_bound(sorted.begin(), sorted.end(), result.xmin);
    const std::span<const int> tail(&*begin, static_cast<std::size_t>(sorted.end() - begin));
    const double n = static_cast<double>(tail.size());
    double mu = 0.0;
    for (int x : tail) mu += std::log(static_cast<double>(x));
    mu /= n;
    double var = 0.0;
    for (int x : tail) {
        const double d = std::log(static_cast<double>(x)) - mu;
        var += d * d;
    }
    result.mu = mu;
    result.sigma = std::sqrt(var / n);

    const auto bin_cdf = [&](double x) { return normal_cdf((std::log(x) - mu) / result.sigma); };
    const double lower = bin_cdf(result.xmin - 0.5);
    const double mass = 1.0 - lower;
    const auto model_cdf = [&](int x) { return (bin_cdf(x + 0.5) - lower) / mass; };
    double ks = 0.0;
    for (std::size_t i = 0; i < tail.size();) {
        std::size_t j = i;
        while (j < tail.size() && tail[j] == tail[i]) ++j;
        ks = std::max(ks, std::abs(static_cast<double>(j) / n - model_cdf(tail[i])));
        if (tail[i] > result.xmin) ks = std::max(ks, std::abs(static_cast<double>(i) / n - model_cdf(tail[i] - 1)));
        i = j;
    }
    result.ks_ln = ks;
    return result;
}

TailFit fit_degree_tail(const std::map<int, std::size_t>& histogram) {
    std::vector<int> degrees;
    for (const auto& [degree, count] : histogram) degrees.insert(degrees.end(), count, degree);
    return fit_degree_tail(degrees);
}

}  // namespace fxnet
