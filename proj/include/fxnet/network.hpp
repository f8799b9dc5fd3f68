#pragma once

// Dependence and distance matrices of one window, their minimum spanning
// tree, and per-tree statistics.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "fxnet/dependence.hpp"

namespace fxnet {

enum class Measure { Rdc, Pearson };

std::string_view to_string(Measure m) noexcept;
/// Accepts "rdc" or "pearson" (case-insensitive); throws ConfigurationError.
Measure parse_measure(std::string_view text);

struct DependenceMatrix {
    std::vector<std::string> labels;
    Eigen::MatrixXd values;
    Measure measure = Measure::Rdc;
    /// Cells (i < j) whose estimate was degenerate (constant column).
    std::vector<std::pair<int, int>> flagged;
};

/// C[f][e] = measure(column f, column e) over the rows of `window`
/// (observations x currencies), mirrored, with unit diagonal.
///
/// RDC cells draw from stream (params.seed, window_index, label-pair key,
/// repetition) and always pass the lexicographically smaller label first,
/// so a cell does not depend on column order. Pearson throws
/// DegenerateSample on a constant column.
DependenceMatrix dependence_matrix(const Eigen::MatrixXd& window, const std::vector<std::string>& labels,
                                   Measure measure, const RdcParams& params, std::uint64_t window_index = 0);

struct DistanceMatrix {
    std::vector<std::string> labels;
    Eigen::MatrixXd values;
};

/// D = sqrt(2 (1 - C)); flagged cells are placed at distance sqrt(2).
DistanceMatrix distance_matrix(const DependenceMatrix& c);

struct Edge {
    int i = 0;
    int j = 0;
    double weight = 0.0;

    friend bool operator==(const Edge&, const Edge&) = default;
};

struct SpanningTree {
    std::vector<std::string> labels;
    /// i < j for every edge; N - 1 edges in insertion order.
    std::vector<Edge> edges;

    double total_weight() const noexcept;
    /// Edges as sorted (label, label) pairs, independent of node numbering.
    std::vector<std::pair<std::string, std::string>> label_pairs() const;
};

/// Disjoint-set forest with union by rank and path halving.
class UnionFind {
public:
    explicit UnionFind(std::size_t n);
    std::size_t find(std::size_t x) noexcept;
    /// False when x and y were already connected.
    bool unite(std::size_t x, std::size_t y) noexcept;

private:
    std::vector<std::size_t> parent_;
    std::vector<unsigned char> rank_;
};

/// Kruskal over edges in ascending distance, ties by (i, j).
SpanningTree mst(const DistanceMatrix& d);

/// Throws InvalidParameter unless `tree` is a spanning tree of its labels.
void check_spanning_tree(const SpanningTree& tree);

std::vector<int> degrees(const SpanningTree& tree);
std::map<std::string, int> degree_map(const SpanningTree& tree);

using ContinentMap = std::map<std::string, std::string, std::less<>>;

/// Lines `CCY,Continent`; blank lines and `#` comments are skipped.
ContinentMap parse_continents(std::istream& in);

/// Share of tree edges joining two currencies of the same continent.
double intracontinental_fraction(const SpanningTree& tree, const ContinentMap& mapping);

/// The same share over the complete graph: sum_i C(n_i, 2) / C(N, 2).
double full_graph_intracontinental_fraction(const std::vector<std::string>& labels, const ContinentMap& mapping);

/// `date,node_i,node_j,weight` lines, no header.
void write_edge_list(std::ostream& out, std::string_view date, const SpanningTree& tree);

}  // namespace fxnet
