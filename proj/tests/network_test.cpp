#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "fxnet/continents.hpp"
#include "fxnet/errors.hpp"
#include "fxnet/network.hpp"
#include "fxnet/serialization.hpp"
#include "test_support.hpp"

namespace {

using namespace fxnet;
using fxnet::testing::exhaustive_min_tree_weight;
using fxnet::testing::prim_total_weight;
using fxnet::testing::random_distances;

std::vector<std::string> node_labels(int n) {
    std::vector<std::string> labels;
    for (int i = 0; i < n; ++i) labels.push_back("N" + std::to_string(100 + i));
    return labels;
}

DistanceMatrix as_distance(const Eigen::MatrixXd& d) { return {node_labels(static_cast<int>(d.rows())), d}; }

SpanningTree star(int n) {
    SpanningTree t;
    t.labels = node_labels(n);
    for (int j = 1; j < n; ++j) t.edges.push_back({0, j, 1.0});
    return t;
}

SpanningTree path(int n) {
    SpanningTree t;
    t.labels = node_labels(n);
    for (int j = 1; j < n; ++j) t.edges.push_back({j - 1, j, 1.0});
    return t;
}

TEST(DependenceMatrix, IdenticalColumnsUnderRdc) {
    std::mt19937_64 rng(41);
    Eigen::MatrixXd w(120, 2);
    for (int t = 0; t < 120; ++t) w(t, 0) = w(t, 1) = std::normal_distribution<>()(rng);
    const auto c = dependence_matrix(w, {"AAA", "BBB"}, Measure::Rdc, RdcParams{});
    EXPECT_GE(c.values(0, 1), 0.95);
}

TEST(DependenceMatrix, NegatedColumnUnderPearson) {
    std::mt19937_64 rng(42);
    Eigen::MatrixXd w(50, 3);
    for (int t = 0; t < 50; ++t) {
        w(t, 0) = std::normal_distribution<>()(rng);
        w(t, 1) = std::normal_distribution<>()(rng);
        w(t, 2) = -w(t, 0);
    }
    const auto c = dependence_matrix(w, {"a", "b", "c"}, Measure::Pearson, RdcParams{});
    EXPECT_DOUBLE_EQ(c.values(0, 2), -1.0);
}

TEST(DependenceMatrix, SymmetricWithUnitDiagonal) {
    std::mt19937_64 rng(43);
    const Eigen::MatrixXd w = Eigen::MatrixXd::NullaryExpr(60, 6, [&] { return std::normal_distribution<>()(rng); });
    for (Measure m : {Measure::Rdc, Measure::Pearson}) {
        const auto c = dependence_matrix(w, node_labels(6), m, RdcParams{});
        EXPECT_EQ((c.values - c.values.transpose()).cwiseAbs().maxCoeff(), 0.0);
        EXPECT_TRUE((c.values.diagonal().array() == 1.0).all());
        const double lo = m == Measure::Rdc ? 0.0 : -1.0;
        EXPECT_GE(c.values.minCoeff(), lo);
        EXPECT_LE(c.values.maxCoeff(), 1.0);
    }
}

TEST(DependenceMatrix, RdcCellsIgnoreColumnOrder) {
    std::mt19937_64 rng(44);
    const Eigen::MatrixXd w = Eigen::MatrixXd::NullaryExpr(80, 4, [&] { return std::normal_distribution<>()(rng); });
    const std::vector<std::string> labels{"EUR", "USD", "CNY", "AUD"};
    const std::vector<int> perm{2, 0, 3, 1};
    Eigen::MatrixXd shuffled(80, 4);
    std::vector<std::string> shuffled_labels;
    for (int c = 0; c < 4; ++c) {
        shuffled.col(c) = w.col(perm[static_cast<std::size_t>(c)]);
        shuffled_labels.push_back(labels[static_cast<std::size_t>(perm[static_cast<std::size_t>(c)])]);
    }
    const auto a = dependence_matrix(w, labels, Measure::Rdc, RdcParams{}, 9);
    const auto b = dependence_matrix(shuffled, shuffled_labels, Measure::Rdc, RdcParams{}, 9);
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            EXPECT_EQ(b.values(i, j), a.values(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]));
        }
    }
}

TEST(DependenceMatrix, ConstantColumnIsFlaggedForRdcAndFatalForPearson) {
    std::mt19937_64 rng(45);
    Eigen::MatrixXd w = Eigen::MatrixXd::NullaryExpr(40, 3, [&] { return std::normal_distribution<>()(rng); });
    w.col(1).setConstant(0.0);
    const auto c = dependence_matrix(w, node_labels(3), Measure::Rdc, RdcParams{});
    EXPECT_EQ(c.flagged.size(), 2u);
    EXPECT_EQ(c.values(0, 1), 0.0);
    const auto d = distance_matrix(c);
    EXPECT_DOUBLE_EQ(d.values(0, 1), std::numbers::sqrt2);
    EXPECT_THROW(dependence_matrix(w, node_labels(3), Measure::Pearson, RdcParams{}), DegenerateSample);
}

TEST(DependenceMatrix, ShapeErrors) {
    EXPECT_THROW(dependence_matrix(Eigen::MatrixXd::Ones(1, 3), node_labels(3), Measure::Pearson, {}),
                 InvalidParameter);
    EXPECT_THROW(dependence_matrix(Eigen::MatrixXd::Ones(5, 1), node_labels(1), Measure::Pearson, {}),
                 InvalidParameter);
    EXPECT_THROW(dependence_matrix(Eigen::MatrixXd::Ones(5, 2), node_labels(3), Measure::Pearson, {}),
                 InvalidParameter);
}

TEST(DistanceMatrix, KnownValues) {
    DependenceMatrix c;
    c.labels = node_labels(4);
    c.measure = Measure::Pearson;
    c.values = Eigen::MatrixXd::Identity(4, 4);
    c.values(0, 1) = c.values(1, 0) = 1.0;
    c.values(0, 2) = c.values(2, 0) = 0.0;
    c.values(0, 3) = c.values(3, 0) = -1.0;
    const auto d = distance_matrix(c);
    EXPECT_NEAR(d.values(0, 1), 0.0, 1e-12);
    EXPECT_NEAR(d.values(0, 2), std::sqrt(2.0), 1e-12);
    EXPECT_NEAR(d.values(0, 3), 2.0, 1e-12);
    EXPECT_TRUE((d.values.diagonal().array() == 0.0).all());
}

TEST(DistanceMatrix, MonotoneDecreasingInDependence) {
    DependenceMatrix c;
    c.labels = node_labels(2);
    c.values = Eigen::MatrixXd::Identity(2, 2);
    double previous = INFINITY;
    for (double v = -1.0; v <= 1.0; v += 0.01) {
        c.values(0, 1) = c.values(1, 0) = v;
        const double d = distance_matrix(c).values(0, 1);
        EXPECT_LE(d, previous);
        EXPECT_GE(d, 0.0);
        EXPECT_LE(d, 2.0);
        previous = d;
    }
}

TEST(Mst, ThreeNodes) {
    Eigen::MatrixXd d(3, 3);
    d << 0, 1, 2, 1, 0, 3, 2, 3, 0;
    const auto t = mst(as_distance(d));
    ASSERT_EQ(t.edges.size(), 2u);
    EXPECT_EQ(t.edges[0], (Edge{0, 1, 1.0}));
    EXPECT_EQ(t.edges[1], (Edge{0, 2, 2.0}));
    EXPECT_EQ(t.total_weight(), 3.0);
}

TEST(Mst, TwoNodes) {
    Eigen::MatrixXd d(2, 2);
    d << 0, 0.7, 0.7, 0;
    const auto t = mst(as_distance(d));
    ASSERT_EQ(t.edges.size(), 1u);
    EXPECT_EQ(t.edges[0], (Edge{0, 1, 0.7}));
}

TEST(Mst, TiesBrokenByIndexPair) {
    const Eigen::MatrixXd d = Eigen::MatrixXd::Ones(4, 4) - Eigen::MatrixXd::Identity(4, 4);
    const auto t = mst(as_distance(d));
    EXPECT_EQ(t.edges, (std::vector<Edge>{{0, 1, 1.0}, {0, 2, 1.0}, {0, 3, 1.0}}));
}

TEST(Mst, PrueferEnumerationVisitsCayleyCount) {
    std::mt19937_64 rng(46);
    long visited = 0;
    exhaustive_min_tree_weight(random_distances(7, rng), &visited);
    EXPECT_EQ(visited, 16807);
}

TEST(Mst, MatchesExhaustiveMinimumOnSevenNodes) {
    std::mt19937_64 rng(47);
    for (int trial = 0; trial < 20; ++trial) {
        const Eigen::MatrixXd d = random_distances(7, rng);
        EXPECT_EQ(mst(as_distance(d)).total_weight(), exhaustive_min_tree_weight(d));
    }
}

TEST(Mst, MatchesPrimOnLargerMatrices) {
    std::mt19937_64 rng(48);
    for (int trial = 0; trial < 30; ++trial) {
        const Eigen::MatrixXd d = random_distances(27, rng);
        EXPECT_EQ(mst(as_distance(d)).total_weight(), prim_total_weight(d));
    }
}

TEST(Mst, SameEdgesAfterIncreasingTransform) {
    std::mt19937_64 rng(49);
    for (int trial = 0; trial < 10; ++trial) {
        const Eigen::MatrixXd d = random_distances(15, rng);
        const auto a = mst(as_distance(d));
        const auto b = mst(as_distance(d.array().square().matrix()));
        EXPECT_EQ(a.label_pairs(), b.label_pairs());
    }
}

TEST(Mst, ProducesValidTree) {
    std::mt19937_64 rng(50);
    const auto t = mst(as_distance(random_distances(27, rng)));
    EXPECT_NO_THROW(check_spanning_tree(t));
    EXPECT_EQ(t.edges.size(), 26u);
    for (const auto& e : t.edges) EXPECT_LT(e.i, e.j);
}

TEST(CheckSpanningTree, RejectsCyclesAndWrongSizes) {
    SpanningTree cycle = path(4);
    cycle.edges.back() = {0, 2, 1.0};
    EXPECT_THROW(check_spanning_tree(cycle), InvalidParameter);
    SpanningTree shorter = path(4);
    shorter.edges.pop_back();
    EXPECT_THROW(check_spanning_tree(shorter), InvalidParameter);
    SpanningTree out_of_range = path(3);
    out_of_range.edges[0].j = 7;
    EXPECT_THROW(check_spanning_tree(out_of_range), InvalidParameter);
}

TEST(Degrees, StarAndPath) {
    EXPECT_EQ(degrees(star(4)), (std::vector<int>{3, 1, 1, 1}));
    EXPECT_EQ(degrees(path(3)), (std::vector<int>{1, 2, 1}));
    const auto m = degree_map(star(4));
    EXPECT_EQ(m.at("N100"), 3);
}

TEST(Degrees, HandshakeOnRandomTrees) {
    std::mt19937_64 rng(51);
    for (int n = 2; n < 30; ++n) {
        const auto deg = degrees(mst(as_distance(random_distances(n, rng))));
        int sum = 0;
        for (int d : deg) {
            EXPECT_GE(d, 1);
            sum += d;
        }
        EXPECT_EQ(sum, 2 * (n - 1));
    }
}

TEST(Intracontinental, ExtremesAndCounting) {
    const SpanningTree t = path(4);
    ContinentMap one;
    ContinentMap each;
    for (const auto& l : t.labels) {
        one[l] = "Earth";
        each[l] = l;
    }
    EXPECT_EQ(intracontinental_fraction(t, one), 1.0);
    EXPECT_EQ(intracontinental_fraction(t, each), 0.0);
    EXPECT_EQ(full_graph_intracontinental_fraction(t.labels, one), 1.0);
    EXPECT_EQ(full_graph_intracontinental_fraction(t.labels, each), 0.0);

    ContinentMap split{{"N100", "A"}, {"N101", "A"}, {"N102", "B"}, {"N103", "B"}};
    EXPECT_DOUBLE_EQ(intracontinental_fraction(t, split), 2.0 / 3.0);
    EXPECT_DOUBLE_EQ(full_graph_intracontinental_fraction(t.labels, split), 2.0 / 6.0);

    ContinentMap partial{{"N100", "A"}};
    EXPECT_THROW(intracontinental_fraction(t, partial), ConfigurationError);
    EXPECT_THROW(full_graph_intracontinental_fraction(t.labels, partial), ConfigurationError);
}

TEST(Intracontinental, DefaultMappingBaseline) {
    const auto& map = default_continents();
    ASSERT_EQ(map.size(), 27u);
    std::vector<std::string> labels;
    for (const auto& [code, continent] : map) labels.push_back(code);
    int same = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        for (std::size_t j = i + 1; j < labels.size(); ++j) same += map.at(labels[i]) == map.at(labels[j]);
    }
    EXPECT_EQ(same, 97);
    EXPECT_DOUBLE_EQ(full_graph_intracontinental_fraction(labels, map), 97.0 / 351.0);
}

TEST(Continents, ShippedFileMatchesBuiltIn) {
    std::ifstream in(std::string(FXNET_SOURCE_DIR) + "/config/continents.csv");
    ASSERT_TRUE(in);
    EXPECT_EQ(parse_continents(in), default_continents());
}

TEST(Continents, ParserSkipsCommentsAndRejectsJunk) {
    std::istringstream good("# header\n\nEUR,Europe\r\n USD , America\n");
    const auto m = parse_continents(good);
    EXPECT_EQ(m.size(), 2u);
    EXPECT_EQ(m.at("USD"), "America");
    std::istringstream bad("EUR\n");
    EXPECT_THROW(parse_continents(bad), InputError);
    std::istringstream duplicate("EUR,Europe\nEUR,Asia\n");
    EXPECT_THROW(parse_continents(duplicate), InputError);
}

TEST(EdgeList, Format) {
    SpanningTree t = path(3);
    t.edges[0].weight = 0.25;
    t.edges[1].weight = 1.0 / 3.0;
    std::ostringstream out;
    write_edge_list(out, "2010-01-01", t);
    EXPECT_EQ(out.str(), "2010-01-01,N100,N101,0.25\n2010-01-01,N101,N102,0.333333\n");
}

TEST(TreeJson, RoundTrip) {
    std::mt19937_64 rng(52);
    const auto t = mst(as_distance(random_distances(9, rng)));
    const auto doc = tree_to_json("2012-05-06", t);
    EXPECT_EQ(doc.at("degrees").at(t.labels[0]).get<int>(), degrees(t)[0]);
    const auto entry = tree_from_json(nlohmann::json::parse(doc.dump()));
    EXPECT_EQ(entry.end_date, "2012-05-06");
    EXPECT_EQ(entry.tree.labels, t.labels);
    EXPECT_EQ(entry.tree.edges, t.edges);
    EXPECT_EQ(entry.degrees, degree_map(t));
}

TEST(TreeJson, RejectsBrokenDocuments) {
    auto doc = tree_to_json("2012-05-06", path(4));
    doc["edges"].erase(doc["edges"].size() - 1);
    EXPECT_THROW(tree_from_json(doc), InputError);
    EXPECT_THROW(tree_from_json(nlohmann::json::parse(R"({"date": 3})")), InputError);
}

TEST(MeasureNames, ParseAndPrint) {
    EXPECT_EQ(parse_measure("RDC"), Measure::Rdc);
    EXPECT_EQ(parse_measure("pearson"), Measure::Pearson);
    EXPECT_EQ(to_string(Measure::Pearson), "pearson");
    EXPECT_THROW(parse_measure("spearman"), ConfigurationError);
}

}  // namespace
