#pragma once

// Rolling-window network pipeline and the time-evolution statistics computed
// from its trees.

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fxnet/kde.hpp"
#include "fxnet/network.hpp"
#include "fxnet/returns.hpp"

namespace fxnet {

struct NetworkEntry {
    /// Date of the last row of the window.
    std::string end_date;
    SpanningTree tree;
    std::map<std::string, int> degrees;
};

struct NetworkSeries {
    std::vector<NetworkEntry> entries;
    int window_length = 0;
    Measure measure = Measure::Rdc;
};

/// One MST per window of `window` consecutive return rows, stride 1.
/// Currencies whose series has not started by the first row of a window are
/// left out of that window's network; windows with fewer than two usable
/// currencies are skipped. `jobs` = 0 uses the available hardware threads.
NetworkSeries rolling_networks(const ReturnsMatrix& returns, int window, Measure measure, const RdcParams& params,
                               unsigned jobs = 0);

struct DegreeSeries {
    std::string currency;
    std::vector<std::string> dates;
    std::vector<double> values;
};

struct RankingRow {
    int rank = 0;
    std::string currency;
    double average_degree = 0.0;
};

struct Ranking {
    /// "all" or the calendar year.
    std::string period;
    std::vector<RankingRow> rows;
};

/// Mean degree per currency over the networks ending in `year` (all networks
/// when unset), sorted descending; ties by currency code.
Ranking average_degree_ranking(const NetworkSeries& series, std::optional<int> year = std::nullopt);

/// Years present among the end dates, ascending.
std::vector<int> years(const NetworkSeries& series);

/// Raw degree of `currency` in every network that contains it.
DegreeSeries degree_series(const NetworkSeries& series, const std::string& currency);

/// Trailing mean over `smoothing` consecutive values, labeled by the last
/// date; the output is smoothing - 1 entries shorter than the input.
DegreeSeries smooth(const DegreeSeries& raw, int smoothing);

DegreeSeries smoothed_degree_series(const NetworkSeries& series, const std::string& currency, int smoothing = 30);

/// Largest degree and its lead over the runner-up (second element of the
/// degree multiset sorted descending).
std::pair<int, int> max_degree_gap(const SpanningTree& tree);

/// Smoothed max-degree and gap series, labeled "max" and "gap".
std::pair<DegreeSeries, DegreeSeries> max_degree_gap_series(const NetworkSeries& series, int smoothing = 30);

struct SeriesCorrelation {
    double value = 0.0;
    /// Set when either smoothed series is constant (value is then 0).
    bool degenerate = false;
    std::size_t points = 0;
};

/// Pearson correlation of two smoothed degree series over their common dates.
SeriesCorrelation degree_series_correlation(const NetworkSeries& series, const std::string& a, const std::string& b,
                                            int smoothing = 30);

struct IntracontinentalDistribution {
    std::vector<std::string> dates;
    std::vector<double> samples;
    double mean = 0.0;
    double sd = 0.0;
    DensityCurve density;
};

/// Per-network intracontinental share plus a Gaussian KDE (Silverman
/// bandwidth, `grid_points` nodes on [0, 1]).
IntracontinentalDistribution intracontinental_distribution(const NetworkSeries& series, const ContinentMap& mapping,
                                                           int grid_points = 512);

/// Degree multiset of the network ending on `date`.
std::vector<int> degrees_on(const NetworkSeries& series, const std::string& date);

}  // namespace fxnet
