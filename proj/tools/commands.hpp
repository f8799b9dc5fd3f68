#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "fxnet/dependence.hpp"
#include "fxnet/network.hpp"

namespace fxnet::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitInput = 2;

struct RunConfig {
    std::filesystem::path input;
    /// Denomination of the input file.
    std::string source_base = "XAG";
    /// Re-denominate into this code before computing returns.
    std::optional<std::string> base;
    Measure measure = Measure::Rdc;
    int window = 100;
    int smoothing = 30;
    RdcParams rdc;
    /// Empty: built-in mapping.
    std::filesystem::path continents;
    std::filesystem::path out;
    std::optional<int> year;
    /// 0: all hardware threads.
    unsigned jobs = 0;

    void validate() const;
};

struct RdcCommand {
    std::filesystem::path input;
    std::string x_column;
    std::string y_column;
    RdcParams params;
};

/// Prints `rdc <value>` followed by one `repetition <i> <value>` line each.
void cmd_rdc(const RdcCommand& command, std::ostream& out);

/// Full pipeline; writes all result files below config.out. On failure the
/// partially written output is removed.
void cmd_evolve(const RunConfig& config, std::ostream& log);

/// Ranking CSV (period,rank,currency,avg_degree) recomputed from stored trees.
void cmd_rank(const std::filesystem::path& run_dir, std::optional<int> year, std::ostream& out);

struct PlotSelection {
    /// degree | correlation | maxgap | intrafrac | kde | degdist | tailfit
    std::string kind = "degree";
    std::vector<std::string> currencies;
    std::optional<std::string> date;
    std::optional<int> smoothing;
    std::filesystem::path continents;
};

void cmd_plotdata(const std::filesystem::path& run_dir, const PlotSelection& selection, std::ostream& out);

/// Entry point shared by main() and the tests. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fxnet::cli
