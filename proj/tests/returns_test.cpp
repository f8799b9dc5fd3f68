#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "fxnet/errors.hpp"
#include "fxnet/returns.hpp"

namespace {

using namespace fxnet;

RateTable parse(const std::string& text, const std::string& base = "XAG") {
    std::istringstream in(text);
    return parse_rates(in, ParseOptions{0, base});
}

RateTable random_table(std::mt19937_64& rng, int rows, const std::vector<std::string>& codes) {
    std::lognormal_distribution<double> level(0.0, 1.5);
    RateTable t;
    t.base = "XAG";
    t.currencies = codes;
    t.rates.resize(rows, static_cast<Eigen::Index>(codes.size()));
    for (int r = 0; r < rows; ++r) {
        char buf[16];
        std::snprintf(buf, sizeof buf, "2010-01-%02d", r + 1);
        t.dates.emplace_back(buf);
        for (Eigen::Index c = 0; c < t.rates.cols(); ++c) t.rates(r, c) = level(rng);
    }
    return t;
}

TEST(ParseRates, WellFormedTwoByTwo) {
    const RateTable t = parse("date,EUR,USD\n2010-01-04,1.5,2.0\n2010-01-05,1.6,2.1\n");
    EXPECT_EQ(t.rows(), 2u);
    EXPECT_EQ(t.currencies, (std::vector<std::string>{"EUR", "USD"}));
    EXPECT_EQ(t.base, "XAG");
    EXPECT_EQ(t.rates(1, 1), 2.1);
}

TEST(ParseRates, TabDelimited) {
    const RateTable t = parse("date\tEUR\tUSD\n2010-01-04\t1.5\t2.0\n");
    EXPECT_EQ(t.currencies.size(), 2u);
    EXPECT_EQ(t.rates(0, 0), 1.5);
}

TEST(ParseRates, NonPositiveRateNamesCell) {
    try {
        parse("date,EUR,USD\n2010-01-04,1.5,2.0\n2010-01-05,1.6,-2.1\n");
        FAIL() << "expected IngestionError";
    } catch (const IngestionError& e) {
        EXPECT_EQ(e.row(), 3u);
        EXPECT_EQ(e.column(), 3u);
        EXPECT_NE(std::string(e.what()).find("row 3"), std::string::npos);
    }
    EXPECT_THROW(parse("date,EUR\n2010-01-04,0\n"), IngestionError);
}

TEST(ParseRates, UnparseableNumberAndDuplicateDate) {
    EXPECT_THROW(parse("date,EUR\n2010-01-04,1.2x\n"), IngestionError);
    EXPECT_THROW(parse("date,EUR\n2010-01-04,1.2\n2010-01-04,1.3\n"), IngestionError);
    EXPECT_THROW(parse("date,EUR\n04/01/2010,1.2\n"), IngestionError);
    EXPECT_THROW(parse("day,EUR\n2010-01-04,1.2\n"), IngestionError);
    EXPECT_THROW(parse("date,EUR,EUR\n2010-01-04,1.2,1.3\n"), IngestionError);
    EXPECT_THROW(parse("date,EUR\n2010-01-04,1.2,4\n"), IngestionError);
    EXPECT_THROW(parse("date,EUR\n2010-01-04,\n"), IngestionError);
}

TEST(ParseRates, UnsortedInputIsSorted) {
    const std::vector<std::pair<std::string, double>> rows{
        {"2011-03-01", 3.0}, {"2010-12-31", 1.0}, {"2011-01-15", 2.0}, {"2009-06-30", 0.5}};
    std::string text = "date,JPY\n";
    for (const auto& [d, v] : rows) text += d + "," + std::to_string(v) + "\n";
    const RateTable t = parse(text);
    auto expected = rows;
    std::sort(expected.begin(), expected.end());
    ASSERT_EQ(t.rows(), expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) {
        EXPECT_EQ(t.dates[i], expected[i].first);
        EXPECT_DOUBLE_EQ(t.rates(static_cast<Eigen::Index>(i), 0), expected[i].second);
    }
}

TEST(ParseRates, ForwardFillsGapsAndKeepsLeadingGaps) {
    const RateTable t = parse(
        "date,EUR,NEW\n"
        "2010-01-04,1.5,NA\n"
        "2010-01-05,,\n"
        "2010-01-06,1.7,3.0\n"
        "2010-01-07,N/A,3.1\n");
    EXPECT_EQ(t.rates(1, 0), 1.5);
    EXPECT_EQ(t.rates(3, 0), 1.7);
    EXPECT_TRUE(std::isnan(t.rates(0, 1)));
    EXPECT_TRUE(std::isnan(t.rates(1, 1)));
    EXPECT_EQ(t.first_observed(1), 2u);
    EXPECT_EQ(t.first_observed(0), 0u);
    EXPECT_NO_THROW(t.validate());

    const ReturnsMatrix r = log_returns(t);
    EXPECT_EQ(r.valid_from, (std::vector<std::size_t>{0, 2}));
    EXPECT_TRUE(std::isfinite(r.returns(2, 1)));
    EXPECT_TRUE(std::isnan(r.returns(1, 1)));
}

TEST(Redenominate, IdentityReturnsEqualTable) {
    const RateTable t = parse("date,A,B\n2010-01-04,2.0,4.0\n");
    const RateTable same = redenominate(t, "XAG");
    EXPECT_EQ(same.currencies, t.currencies);
    EXPECT_EQ(same.rates, t.rates);
    EXPECT_EQ(same.base, "XAG");
}

TEST(Redenominate, RatioArithmetic) {
    const RateTable t = parse("date,A,B\n2010-01-04,2.0,4.0\n", "X");
    const RateTable b = redenominate(t, "B");
    EXPECT_EQ(b.base, "B");
    EXPECT_EQ(b.currencies, (std::vector<std::string>{"A", "X"}));
    EXPECT_DOUBLE_EQ(b.rates(0, 0), 0.5);
    EXPECT_DOUBLE_EQ(b.rates(0, 1), 0.25);
}

TEST(Redenominate, UnknownCodeAndLateStarter) {
    const RateTable t = parse("date,A,B\n2010-01-04,2.0,\n2010-01-05,2.0,3.0\n");
    EXPECT_THROW(redenominate(t, "ZZZ"), ConfigurationError);
    EXPECT_THROW(redenominate(t, "B"), InvalidParameter);
}

TEST(Redenominate, RoundTripRecoversRates) {
    std::mt19937_64 rng(31);
    const std::vector<std::string> codes{"A", "B", "C", "D", "E"};
    for (int trial = 0; trial < 25; ++trial) {
        const RateTable t = random_table(rng, 12, codes);
        const std::string pivot = codes[static_cast<std::size_t>(trial % 5)];
        const RateTable back = redenominate(redenominate(t, pivot), "XAG");
        EXPECT_EQ(back.base, "XAG");
        ASSERT_EQ(back.currencies.size(), codes.size());
        for (const auto& code : codes) {
            const auto a = t.rates.col(static_cast<Eigen::Index>(t.column(code)));
            const auto b = back.rates.col(static_cast<Eigen::Index>(back.column(code)));
            EXPECT_LE(((a - b).array() / a.array()).abs().maxCoeff(), 1e-12) << code;
        }
    }
}

TEST(LogReturns, KnownColumns) {
    const double e = std::numbers::e;
    RateTable t;
    t.base = "XAG";
    t.dates = {"2010-01-01", "2010-01-02", "2010-01-03"};
    t.currencies = {"E", "C"};
    t.rates.resize(3, 2);
    t.rates << 1.0, 5.0, e, 5.0, e * e, 5.0;
    const ReturnsMatrix r = log_returns(t);
    EXPECT_EQ(r.dates, (std::vector<std::string>{"2010-01-02", "2010-01-03"}));
    EXPECT_NEAR(r.returns(0, 0), 1.0, 1e-15);
    EXPECT_NEAR(r.returns(1, 0), 1.0, 1e-15);
    EXPECT_EQ(r.returns(0, 1), 0.0);
    EXPECT_EQ(r.returns(1, 1), 0.0);

    const RateTable one = parse("date,X\n2010-01-01,100\n2010-01-02,110\n");
    EXPECT_NEAR(log_returns(one).returns(0, 0), std::log(1.1), 1e-15);
    EXPECT_NEAR(log_returns(one).returns(0, 0), 0.09531, 1e-5);
}

TEST(LogReturns, NeedsTwoRows) {
    EXPECT_THROW(log_returns(parse("date,X\n2010-01-01,100\n")), InvalidParameter);
}

TEST(LogReturns, ColumnSumsTelescope) {
    std::mt19937_64 rng(32);
    const RateTable t = random_table(rng, 28, {"A", "B", "C"});
    const ReturnsMatrix r = log_returns(t);
    for (Eigen::Index c = 0; c < 3; ++c) {
        EXPECT_NEAR(r.returns.col(c).sum(), std::log(t.rates(27, c) / t.rates(0, c)), 1e-10);
    }
}

TEST(LogReturns, LogRatioIdentityAfterRedenomination) {
    std::mt19937_64 rng(33);
    const std::vector<std::string> codes{"A", "B", "C", "D"};
    const RateTable t = random_table(rng, 20, codes);
    const ReturnsMatrix original = log_returns(t);
    const ReturnsMatrix rebased = log_returns(redenominate(t, "C"));
    const auto rb = original.returns.col(static_cast<Eigen::Index>(original.column("C")));
    for (const auto& code : {"A", "B", "D"}) {
        const auto lhs = rebased.returns.col(static_cast<Eigen::Index>(rebased.column(code)));
        const auto re = original.returns.col(static_cast<Eigen::Index>(original.column(code)));
        EXPECT_LE((lhs - (re - rb)).cwiseAbs().maxCoeff(), 1e-12) << code;
    }
    const auto old_base = rebased.returns.col(static_cast<Eigen::Index>(rebased.column("XAG")));
    EXPECT_LE((old_base + rb).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(WriteReturns, FormatsAndBlanksMissing) {
    const RateTable t = parse("date,A,B\n2010-01-04,1,\n2010-01-05,2,3\n2010-01-06,4,6\n");
    std::ostringstream out;
    write_returns(out, log_returns(t));
    EXPECT_EQ(out.str(), "date,A,B\n2010-01-05,0.693147,\n2010-01-06,0.693147,0.693147\n");
}

TEST(IsoDate, Shapes) {
    EXPECT_TRUE(is_iso_date("2013-12-31"));
    EXPECT_FALSE(is_iso_date("2013-13-01"));
    EXPECT_FALSE(is_iso_date("2013-1-01"));
    EXPECT_FALSE(is_iso_date("20131231"));
}

}  // namespace
