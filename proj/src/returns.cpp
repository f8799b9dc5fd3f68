#include "fxnet/returns.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <set>

#include "fxnet/errors.hpp"
#include "fxnet/format.hpp"

namespace fxnet {

namespace {

constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();

std::string_view trim(std::string_view s) {
    const auto not_space = [](char c) { return c != ' ' && c != '\t' && c != '\r' && c != '\n'; };
    while (!s.empty() && !not_space(s.front())) s.remove_prefix(1);
    while (!s.empty() && !not_space(s.back())) s.remove_suffix(1);
    return s;
}

std::vector<std::string> split(std::string_view line, char delimiter) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(delimiter, start);
        const std::string_view cell = line.substr(start, pos == std::string_view::npos ? line.npos : pos - start);
        cells.emplace_back(trim(cell));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return cells;
}

bool is_missing(std::string_view cell) {
    return cell.empty() || cell == "NA" || cell == "N/A" || cell == "NaN" || cell == "nan";
}

std::size_t index_of(const std::vector<std::string>& names, std::string_view code, const char* what) {
    const auto it = std::find(names.begin(), names.end(), code);
    if (it == names.end()) throw ConfigurationError(std::string("unknown ") + what + " '" + std::string(code) + "'");
    return static_cast<std::size_t>(it - names.begin());
}

}  // namespace

bool is_iso_date(std::string_view text) noexcept {
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') return false;
    for (std::size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u}) {
        if (text[i] < '0' || text[i] > '9') return false;
    }
    const int month = (text[5] - '0') * 10 + (text[6] - '0');
    const int day = (text[8] - '0') * 10 + (text[9] - '0');
    return month >= 1 && month <= 12 && day >= 1 && day <= 31;
}

std::size_t DelimitedTable::column(std::string_view name) const { return index_of(header, name, "column"); }

DelimitedTable read_delimited(std::istream& in, char delimiter) {
    DelimitedTable table;
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        if (!have_header) {
            table.delimiter = delimiter != 0 ? delimiter : (line.find('\t') != std::string::npos ? '\t' : ',');
            table.header = split(line, table.delimiter);
            have_header = true;
            continue;
        }
        auto cells = split(line, table.delimiter);
        if (cells.size() != table.header.size()) {
            throw IngestionError("expected " + std::to_string(table.header.size()) + " cells, found " +
                                     std::to_string(cells.size()),
                                 line_no, std::min(cells.size(), table.header.size()) + 1);
        }
        table.rows.push_back(std::move(cells));
        table.lines.push_back(line_no);
    }
    if (!have_header) throw IngestionError("empty input: no header row", 1, 1);
    return table;
}

std::size_t RateTable::column(std::string_view code) const { return index_of(currencies, code, "currency"); }

std::size_t RateTable::first_observed(std::size_t column) const {
    for (Eigen::Index t = 0; t < rates.rows(); ++t) {
        if (!std::isnan(rates(t, static_cast<Eigen::Index>(column)))) return static_cast<std::size_t>(t);
    }
    return rows();
}

void RateTable::validate() const {
    if (static_cast<std::size_t>(rates.rows()) != dates.size() ||
        static_cast<std::size_t>(rates.cols()) != currencies.size()) {
        throw InvalidParameter("rate table: matrix shape does not match labels");
    }
    for (std::size_t t = 1; t < dates.size(); ++t) {
        if (!(dates[t - 1] < dates[t])) throw InvalidParameter("rate table: dates not strictly increasing");
    }
    std::set<std::string> seen;
    for (const auto& c : currencies) {
        if (!seen.insert(c).second) throw InvalidParameter("rate table: duplicate currency " + c);
    }
    for (Eigen::Index e = 0; e < rates.cols(); ++e) {
        bool observed = false;
        for (Eigen::Index t = 0; t < rates.rows(); ++t) {
            const double v = rates(t, e);
            if (std::isnan(v) && !observed) continue;
            observed = true;
            if (!(v > 0.0) || !std::isfinite(v)) {
                throw InvalidParameter("rate table: non-positive or missing rate for " +
                                       currencies[static_cast<std::size_t>(e)] + " on " +
                                       dates[static_cast<std::size_t>(t)]);
            }
        }
    }
}

RateTable parse_rates(std::istream& in, const ParseOptions& options) {
    const DelimitedTable raw = read_delimited(in, options.delimiter);
    if (raw.header.empty() || (raw.header[0] != "date" && raw.header[0] != "Date" && raw.header[0] != "DATE")) {
        throw IngestionError("first header cell must be 'date'", 1, 1);
    }
    if (raw.header.size() < 2) throw IngestionError("no currency columns", 1, 2);

    RateTable table;
    table.base = options.base;
    table.currencies.assign(raw.header.begin() + 1, raw.header.end());
    {
        std::set<std::string> seen;
        for (std::size_t c = 0; c < table.currencies.size(); ++c) {
            if (table.currencies[c].empty()) throw IngestionError("empty currency code", 1, c + 2);
            if (!seen.insert(table.currencies[c]).second) {
                throw IngestionError("duplicate currency code " + table.currencies[c], 1, c + 2);
            }
        }
    }

    const std::size_t n_rows = raw.rows.size();
    const std::size_t n_cols = table.currencies.size();
    std::vector<std::size_t> order(n_rows);
    std::iota(order.begin(), order.end(), std::size_t{0});
    for (std::size_t r = 0; r < n_rows; ++r) {
        if (!is_iso_date(raw.rows[r][0])) {
            throw IngestionError("invalid ISO-8601 date '" + raw.rows[r][0] + "'", raw.lines[r], 1);
        }
    }
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return raw.rows[a][0] < raw.rows[b][0]; });
    for (std::size_t i = 1; i < n_rows; ++i) {
        if (raw.rows[order[i]][0] == raw.rows[order[i - 1]][0]) {
            throw IngestionError("duplicate date " + raw.rows[order[i]][0], raw.lines[order[i]], 1);
        }
    }

    table.dates.reserve(n_rows);
    table.rates = Eigen::MatrixXd::Constant(static_cast<Eigen::Index>(n_rows), static_cast<Eigen::Index>(n_cols),
                                            kMissing);
    for (std::size_t i = 0; i < n_rows; ++i) {
        const std::size_t r = order[i];
        table.dates.push_back(raw.rows[r][0]);
        for (std::size_t c = 0; c < n_cols; ++c) {
            const std::string& cell = raw.rows[r][c + 1];
            if (is_missing(cell)) continue;
            double value = 0.0;
            const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
            if (ec != std::errc{} || ptr != cell.data() + cell.size() || !std::isfinite(value)) {
                throw IngestionError("unparseable number '" + cell + "'", raw.lines[r], c + 2);
            }
            if (!(value > 0.0)) {
                throw IngestionError("non-positive rate " + cell + " for " + table.currencies[c], raw.lines[r], c + 2);
            }
            table.rates(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) = value;
        }
    }

    // forward-fill interior gaps; leading gaps stay NaN
    for (Eigen::Index c = 0; c < table.rates.cols(); ++c) {
        double last = kMissing;
        for (Eigen::Index t = 0; t < table.rates.rows(); ++t) {
            double& v = table.rates(t, c);
            if (std::isnan(v)) {
                v = last;
            } else {
                last = v;
            }
        }
        if (n_rows > 0 && std::isnan(last)) {
            throw IngestionError("currency " + table.currencies[static_cast<std::size_t>(c)] + " has no values", 1,
                                 static_cast<std::size_t>(c) + 2);
        }
    }
    return table;
}

RateTable redenominate(const RateTable& table, const std::string& new_base) {
    if (new_base == table.base) return table;
    const std::size_t b = table.column(new_base);
    if (table.first_observed(b) != 0) {
        throw InvalidParameter("cannot re-denominate into " + new_base + ": its series has missing values");
    }
    const auto pivot = table.rates.col(static_cast<Eigen::Index>(b));

    RateTable out;
    out.dates = table.dates;
    out.base = new_base;
    const auto n_cols = static_cast<Eigen::Index>(table.currencies.size());
    out.rates.resize(table.rates.rows(), n_cols);
    Eigen::Index dst = 0;
    for (Eigen::Index e = 0; e < n_cols; ++e) {
        if (static_cast<std::size_t>(e) == b) continue;
        out.currencies.push_back(table.currencies[static_cast<std::size_t>(e)]);
        out.rates.col(dst++) = table.rates.col(e).cwiseQuotient(pivot);
    }
    out.currencies.push_back(table.base);
    out.rates.col(dst) = pivot.cwiseInverse();
    return out;
}

std::size_t ReturnsMatrix::column(std::string_view code) const { return index_of(currencies, code, "currency"); }

ReturnsMatrix log_returns(const RateTable& table) {
    if (table.rows() < 2) throw InvalidParameter("log_returns: need at least 2 dated rows");
    ReturnsMatrix out;
    out.dates.assign(table.dates.begin() + 1, table.dates.end());
    out.currencies = table.currencies;
    const Eigen::MatrixXd logs = table.rates.array().log().matrix();
    out.returns = logs.bottomRows(logs.rows() - 1) - logs.topRows(logs.rows() - 1);
    out.valid_from.reserve(table.currencies.size());
    for (std::size_t e = 0; e < table.currencies.size(); ++e) out.valid_from.push_back(table.first_observed(e));
    return out;
}

void write_returns(std::ostream& out, const ReturnsMatrix& returns, char delimiter) {
    out << "date";
    for (const auto& c : returns.currencies) out << delimiter << c;
    out << '\n';
    for (std::size_t t = 0; t < returns.rows(); ++t) {
        out << returns.dates[t];
        for (Eigen::Index e = 0; e < returns.returns.cols(); ++e) {
            out << delimiter;
            const double v = returns.returns(static_cast<Eigen::Index>(t), e);
            if (std::isfinite(v)) out << format_number(v);
        }
        out << '\n';
    }
}

}  // namespace fxnet
