#pragma once

// Exchange-rate ingestion, re-denomination and logarithmic returns.

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace fxnet {

/// Header plus string cells of a comma- or tab-delimited text table.
struct DelimitedTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    /// 1-based source line of each row.
    std::vector<std::size_t> lines;
    char delimiter = ',';

    /// Index of the header cell equal to `name`; throws ConfigurationError.
    std::size_t column(std::string_view name) const;
};

/// `delimiter` 0 means: tab if the header line contains one, comma otherwise.
DelimitedTable read_delimited(std::istream& in, char delimiter = 0);

/// Dated rates, one column per currency, all quoted in `base` per unit of the
/// column currency. A currency whose series starts late holds NaN before its
/// first observation; every other cell is positive and finite.
struct RateTable {
    std::vector<std::string> dates;
    std::vector<std::string> currencies;
    Eigen::MatrixXd rates;
    std::string base;

    std::size_t rows() const noexcept { return dates.size(); }
    std::size_t column(std::string_view code) const;
    /// Row of the first observed rate for `column`.
    std::size_t first_observed(std::size_t column) const;
    void validate() const;
};

struct ParseOptions {
    char delimiter = 0;
    /// Denomination of the input file.
    std::string base = "XAG";
};

/// Parses `date,CCY1,CCY2,...` with ISO-8601 dates. Rows are sorted by date;
/// interior gaps are forward-filled. Empty cells and NA/N/A/NaN count as
/// missing. Throws IngestionError naming the offending cell.
RateTable parse_rates(std::istream& in, const ParseOptions& options = {});

/// Re-expresses every rate in units of `new_base`. The old base becomes a
/// column quoted at 1/p_b and the new base column is dropped.
RateTable redenominate(const RateTable& table, const std::string& new_base);

/// r(t, e) = ln p_e(t) - ln p_e(t-1); one row shorter than the rate table.
struct ReturnsMatrix {
    std::vector<std::string> dates;
    std::vector<std::string> currencies;
    Eigen::MatrixXd returns;
    /// First row at which each column is finite. Earlier rows hold NaN.
    std::vector<std::size_t> valid_from;

    std::size_t rows() const noexcept { return dates.size(); }
    std::size_t column(std::string_view code) const;
};

ReturnsMatrix log_returns(const RateTable& table);

void write_returns(std::ostream& out, const ReturnsMatrix& returns, char delimiter = ',');

/// True for `YYYY-MM-DD` with a plausible month and day.
bool is_iso_date(std::string_view text) noexcept;

}  // namespace fxnet
