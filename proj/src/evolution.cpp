#include "fxnet/evolution.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <thread>

#include "fxnet/errors.hpp"

namespace fxnet {

namespace {

std::optional<NetworkEntry> build_window(const ReturnsMatrix& returns, std::size_t end, int window, Measure measure,
                                         const RdcParams& params) {
    const std::size_t start = end + 1 - static_cast<std::size_t>(window);
    std::vector<Eigen::Index> columns;
    std::vector<std::string> labels;
    for (std::size_t e = 0; e < returns.currencies.size(); ++e) {
        if (returns.valid_from[e] <= start) {
            columns.push_back(static_cast<Eigen::Index>(e));
            labels.push_back(returns.currencies[e]);
        }
    }
    if (columns.size() < 2) return std::nullopt;

    Eigen::MatrixXd slice(window, static_cast<Eigen::Index>(columns.size()));
    for (std::size_t c = 0; c < columns.size(); ++c) {
        slice.col(static_cast<Eigen::Index>(c)) =
            returns.returns.block(static_cast<Eigen::Index>(start), columns[c], window, 1);
    }
    const DependenceMatrix c = dependence_matrix(slice, labels, measure, params, end);
    NetworkEntry entry;
    entry.end_date = returns.dates[end];
    entry.tree = mst(distance_matrix(c));
    entry.degrees = degree_map(entry.tree);
    return entry;
}

int year_of(const std::string& date) { return std::stoi(date.substr(0, 4)); }

}  // namespace

NetworkSeries rolling_networks(const ReturnsMatrix& returns, int window, Measure measure, const RdcParams& params,
                               unsigned jobs) {
    if (window < 2) throw InvalidParameter("rolling_networks: window must be >= 2");
    if (static_cast<std::size_t>(window) > returns.rows()) {
        throw InvalidParameter("rolling_networks: window " + std::to_string(window) + " exceeds the " +
                               std::to_string(returns.rows()) + " available return rows");
    }
    if (measure == Measure::Rdc) params.validate();

    const std::size_t first_end = static_cast<std::size_t>(window) - 1;
    const std::size_t count = returns.rows() - first_end;
    std::vector<std::optional<NetworkEntry>> built(count);

    if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
    jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, count));

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    const auto worker = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                built[i] = build_window(returns, first_end + i, window, measure, params);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = count;
                return;
            }
        }
    };
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(jobs);
        for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);

    NetworkSeries series;
    series.window_length = window;
    series.measure = measure;
    series.entries.reserve(count);
    for (auto& entry : built) {
        if (entry) series.entries.push_back(std::move(*entry));
    }
    return series;
}

std::vector<int> years(const NetworkSeries& series) {
    std::vector<int> out;
    for (const auto& e : series.entries) out.push_back(year_of(e.end_date));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

Ranking average_degree_ranking(const NetworkSeries& series, std::optional<int> year) {
    std::map<std::string, std::pair<double, std::size_t>> totals;
    std::size_t used = 0;
    for (const auto& entry : series.entries) {
        if (year && year_of(entry.end_date) != *year) continue;
        ++used;
        for (const auto& [currency, degree] : entry.degrees) {
            auto& [sum, n] = totals[currency];
            sum += degree;
            ++n;
        }
    }
    if (used == 0) {
        throw InvalidParameter(year ? "no networks end in " + std::to_string(*year) : std::string("no networks"));
    }

    Ranking ranking;
    ranking.period = year ? std::to_string(*year) : "all";
    for (const auto& [currency, total] : totals) {
        ranking.rows.push_back({0, currency, total.first / static_cast<double>(total.second)});
    }
    std::stable_sort(ranking.rows.begin(), ranking.rows.end(), [](const RankingRow& a, const RankingRow& b) {
        if (a.average_degree != b.average_degree) return a.average_degree > b.average_degree;
        return a.currency < b.currency;
    });
    for (std::size_t i = 0; i < ranking.rows.size(); ++i) ranking.rows[i].rank = static_cast<int>(i + 1);
    return ranking;
}

DegreeSeries degree_series(const NetworkSeries& series, const std::string& currency) {
    DegreeSeries out;
    out.currency = currency;
    for (const auto& entry : series.entries) {
        const auto it = entry.degrees.find(currency);
        if (it == entry.degrees.end()) continue;
        out.dates.push_back(entry.end_date);
        out.values.push_back(it->second);
    }
    if (out.values.empty()) throw ConfigurationError("currency " + currency + " does not occur in any network");
    return out;
}

DegreeSeries smooth(const DegreeSeries& raw, int smoothing) {
    if (smoothing < 1) throw InvalidParameter("smoothing must be >= 1");
    const auto s = static_cast<std::size_t>(smoothing);
    if (s > raw.values.size()) {
        throw InvalidParameter("smoothing " + std::to_string(smoothing) + " exceeds series length " +
                               std::to_string(raw.values.size()));
    }
    DegreeSeries out;
    out.currency = raw.currency;
    for (std::size_t end = s - 1; end < raw.values.size(); ++end) {
        const auto first = raw.values.begin() + static_cast<std::ptrdiff_t>(end + 1 - s);
        const double sum = std::accumulate(first, first + static_cast<std::ptrdiff_t>(s), 0.0);
        out.dates.push_back(raw.dates[end]);
        out.values.push_back(sum / static_cast<double>(s));
    }
    return out;
}

DegreeSeries smoothed_degree_series(const NetworkSeries& series, const std::string& currency, int smoothing) {
    return smooth(degree_series(series, currency), smoothing);
}

std::pair<int, int> max_degree_gap(const SpanningTree& tree) {
    auto deg = degrees(tree);
    if (deg.size() < 2) throw InvalidParameter("max_degree_gap: need at least 2 nodes");
    std::partial_sort(deg.begin(), deg.begin() + 2, deg.end(), std::greater<>());
    return {deg[0], deg[0] - deg[1]};
}

std::pair<DegreeSeries, DegreeSeries> max_degree_gap_series(const NetworkSeries& series, int smoothing) {
    DegreeSeries max_raw{"max", {}, {}};
    DegreeSeries gap_raw{"gap", {}, {}};
    for (const auto& entry : series.entries) {
        const auto [top, gap] = max_degree_gap(entry.tree);
        max_raw.dates.push_back(entry.end_date);
        max_raw.values.push_back(top);
        gap_raw.dates.push_back(entry.end_date);
        gap_raw.values.push_back(gap);
    }
    return {smooth(max_raw, smoothing), smooth(gap_raw, smoothing)};
}

SeriesCorrelation degree_series_correlation(const NetworkSeries& series, const std::string& a, const std::string& b,
                                            int smoothing) {
    const DegreeSeries sa = smoothed_degree_series(series, a, smoothing);
    const DegreeSeries sb = smoothed_degree_series(series, b, smoothing);
    std::vector<double> xa;
    std::vector<double> xb;
    for (std::size_t i = 0, j = 0; i < sa.dates.size() && j < sb.dates.size();) {
        if (sa.dates[i] < sb.dates[j]) {
            ++i;
        } else if (sb.dates[j] < sa.dates[i]) {
            ++j;
        } else {
            xa.push_back(sa.values[i++]);
            xb.push_back(sb.values[j++]);
        }
    }
    SeriesCorrelation out;
    out.points = xa.size();
    if (xa.size() < 2) throw InvalidParameter("degree series of " + a + " and " + b + " share fewer than 2 dates");
    try {
        out.value = pearson(xa, xb);
    } catch (const DegenerateSample&) {
        out.degenerate = true;
    }
    return out;
}

IntracontinentalDistribution intracontinental_distribution(const NetworkSeries& series, const ContinentMap& mapping,
                                                           int grid_points) {
    if (series.entries.empty()) throw InvalidParameter("intracontinental_distribution: empty series");
    IntracontinentalDistribution out;
    for (const auto& entry : series.entries) {
        out.dates.push_back(entry.end_date);
        out.samples.push_back(intracontinental_fraction(entry.tree, mapping));
    }
    const double n = static_cast<double>(out.samples.size());
    const bool point_mass = std::all_of(out.samples.begin(), out.samples.end(),
                                        [&](double v) { return v == out.samples.front(); });
    if (point_mass) {
        out.mean = out.samples.front();
        out.sd = 0.0;
    } else {
        out.mean = std::accumulate(out.samples.begin(), out.samples.end(), 0.0) / n;
        double ss = 0.0;
        for (double v : out.samples) ss += (v - out.mean) * (v - out.mean);
        out.sd = std::sqrt(ss / (n - 1.0));
    }
    out.density = gaussian_kde(out.samples, silverman_bandwidth(out.samples), 0.0, 1.0, grid_points);
    return out;
}

std::vector<int> degrees_on(const NetworkSeries& series, const std::string& date) {
    for (const auto& entry : series.entries) {
        if (entry.end_date == date) return degrees(entry.tree);
    }
    throw ConfigurationError("no network ends on " + date);
}

}  // namespace fxnet
