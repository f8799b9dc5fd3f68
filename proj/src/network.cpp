#include "fxnet/network.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>

#include "fxnet/errors.hpp"
#include "fxnet/format.hpp"

namespace fxnet {

std::string_view to_string(Measure m) noexcept { return m == Measure::Rdc ? "rdc" : "pearson"; }

Measure parse_measure(std::string_view text) {
    std::string lower(text);
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
    if (lower == "rdc") return Measure::Rdc;
    if (lower == "pearson") return Measure::Pearson;
    throw ConfigurationError("unknown measure '" + std::string(text) + "' (expected rdc or pearson)");
}

DependenceMatrix dependence_matrix(const Eigen::MatrixXd& window, const std::vector<std::string>& labels,
                                   Measure measure, const RdcParams& params, std::uint64_t window_index) {
    const auto n = static_cast<int>(window.cols());
    if (window.rows() < 2) throw InvalidParameter("dependence_matrix: window needs at least 2 rows");
    if (n < 2) throw InvalidParameter("dependence_matrix: need at least 2 currencies");
    if (labels.size() != static_cast<std::size_t>(n)) {
        throw InvalidParameter("dependence_matrix: label count does not match column count");
    }
    const auto column = [&](int c) {
        return std::span<const double>(window.col(c).data(), static_cast<std::size_t>(window.rows()));
    };

    DependenceMatrix out;
    out.labels = labels;
    out.measure = measure;
    out.values = Eigen::MatrixXd::Identity(n, n);

    if (measure == Measure::Pearson) {
        for (int f = 0; f < n; ++f) {
            for (int e = f + 1; e < n; ++e) {
                out.values(f, e) = out.values(e, f) = pearson(column(f), column(e));
            }
        }
        return out;
    }

    params.validate();
    std::vector<PreparedSample> prepared;
    prepared.reserve(static_cast<std::size_t>(n));
    for (int c = 0; c < n; ++c) prepared.push_back(prepare_sample(column(c), params));

    for (int f = 0; f < n; ++f) {
        for (int e = f + 1; e < n; ++e) {
            const auto& lf = labels[static_cast<std::size_t>(f)];
            const auto& le = labels[static_cast<std::size_t>(e)];
            const bool f_first = lf <= le;
            const StreamKey key{window_index, label_pair_key(lf, le), 0};
            const RdcResult r = f_first ? rdc(prepared[static_cast<std::size_t>(f)], prepared[static_cast<std::size_t>(e)], params, key)
                                        : rdc(prepared[static_cast<std::size_t>(e)], prepared[static_cast<std::size_t>(f)], params, key);
            if (r.degenerate) out.flagged.emplace_back(f, e);
            out.values(f, e) = out.values(e, f) = r.value;
        }
    }
    return out;
}

DistanceMatrix distance_matrix(const DependenceMatrix& c) {
    DistanceMatrix d;
    d.labels = c.labels;
    d.values = (2.0 * (1.0 - c.values.array())).max(0.0).sqrt().matrix();
    for (const auto& [i, j] : c.flagged) d.values(i, j) = d.values(j, i) = std::numbers::sqrt2;
    d.values.diagonal().setZero();
    return d;
}

double SpanningTree::total_weight() const noexcept {
    double total = 0.0;
    for (const auto& e : edges) total += e.weight;
    return total;
}

std::vector<std::pair<std::string, std::string>> SpanningTree::label_pairs() const {
    std::vector<std::pair<std::string, std::string>> pairs;
    pairs.reserve(edges.size());
    for (const auto& e : edges) {
        auto a = labels[static_cast<std::size_t>(e.i)];
        auto b = labels[static_cast<std::size_t>(e.j)];
        if (b < a) std::swap(a, b);
        pairs.emplace_back(std::move(a), std::move(b));
    }
    std::sort(pairs.begin(), pairs.end());
    return pairs;
}

UnionFind::UnionFind(std::size_t n) : parent_(n), rank_(n, 0) {
    for (std::size_t i = 0; i < n; ++i) parent_[i] = i;
}

std::size_t UnionFind::find(std::size_t x) noexcept {
    while (parent_[x] != x) {
        parent_[x] = parent_[parent_[x]];
        x = parent_[x];
    }
    return x;
}

bool UnionFind::unite(std::size_t x, std::size_t y) noexcept {
    x = find(x);
    y = find(y);
    if (x == y) return false;
    if (rank_[x] < rank_[y]) std::swap(x, y);
    parent_[y] = x;
    if (rank_[x] == rank_[y]) ++rank_[x];
    return true;
}

SpanningTree mst(const DistanceMatrix& d) {
    const auto n = static_cast<int>(d.values.rows());
    if (n < 2 || d.values.cols() != n) throw InvalidParameter("mst: need a square matrix with N >= 2");
    if (!d.values.allFinite()) throw InvalidParameter("mst: distance matrix has non-finite entries");

    std::vector<Edge> candidates;
    candidates.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) candidates.push_back({i, j, d.values(i, j)});
    }
    std::sort(candidates.begin(), candidates.end(), [](const Edge& a, const Edge& b) {
        if (a.weight != b.weight) return a.weight < b.weight;
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
    });

    SpanningTree tree;
    tree.labels = d.labels;
    tree.edges.reserve(static_cast<std::size_t>(n - 1));
    UnionFind components(static_cast<std::size_t>(n));
    for (const auto& e : candidates) {
        if (components.unite(static_cast<std::size_t>(e.i), static_cast<std::size_t>(e.j))) {
            tree.edges.push_back(e);
            if (tree.edges.size() == static_cast<std::size_t>(n - 1)) break;
        }
    }
    return tree;
}

void check_spanning_tree(const SpanningTree& tree) {
    const std::size_t n = tree.labels.size();
    if (n < 2) throw InvalidParameter("tree: fewer than 2 nodes");
    if (tree.edges.size() != n - 1) {
        throw InvalidParameter("tree: expected " + std::to_string(n - 1) + " edges, found " +
                               std::to_string(tree.edges.size()));
    }
    UnionFind components(n);
    for (const auto& e : tree.edges) {
        if (e.i < 0 || e.j < 0 || static_cast<std::size_t>(e.j) >= n || e.i >= e.j) {
            throw InvalidParameter("tree: malformed edge");
        }
        if (!components.unite(static_cast<std::size_t>(e.i), static_cast<std::size_t>(e.j))) {
            throw InvalidParameter("tree: contains a cycle");
        }
    }
    // N-1 edges without a cycle connect all N nodes
}

std::vector<int> degrees(const SpanningTree& tree) {
    std::vector<int> deg(tree.labels.size(), 0);
    for (const auto& e : tree.edges) {
        ++deg[static_cast<std::size_t>(e.i)];
        ++deg[static_cast<std::size_t>(e.j)];
    }
    return deg;
}

std::map<std::string, int> degree_map(const SpanningTree& tree) {
    const auto deg = degrees(tree);
    std::map<std::string, int> out;
    for (std::size_t i = 0; i < deg.size(); ++i) out.emplace(tree.labels[i], deg[i]);
    return out;
}

ContinentMap parse_continents(std::istream& in) {
    ContinentMap mapping;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#') continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw IngestionError("expected 'CCY,Continent'", line_no, 1);
        auto strip = [](std::string s) {
            const auto b = s.find_first_not_of(" \t");
            const auto e = s.find_last_not_of(" \t");
            return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
        };
        std::string code = strip(line.substr(0, comma));
        std::string continent = strip(line.substr(comma + 1));
        if (code.empty() || continent.empty()) throw IngestionError("empty currency or continent", line_no, 1);
        if (!mapping.emplace(code, continent).second) {
            throw IngestionError("duplicate currency " + code + " in continent map", line_no, 1);
        }
    }
    return mapping;
}

namespace {

const std::string& continent_of(const ContinentMap& mapping, const std::string& code) {
    const auto it = mapping.find(code);
    if (it == mapping.end()) throw ConfigurationError("currency " + code + " has no continent in the mapping");
    return it->second;
}

}  // namespace

double intracontinental_fraction(const SpanningTree& tree, const ContinentMap& mapping) {
    for (const auto& l : tree.labels) continent_of(mapping, l);
    if (tree.edges.empty()) return 0.0;
    std::size_t same = 0;
    for (const auto& e : tree.edges) {
        if (continent_of(mapping, tree.labels[static_cast<std::size_t>(e.i)]) ==
            continent_of(mapping, tree.labels[static_cast<std::size_t>(e.j)])) {
            ++same;
        }
    }
    return static_cast<double>(same) / static_cast<double>(tree.edges.size());
}

double full_graph_intracontinental_fraction(const std::vector<std::string>& labels, const ContinentMap& mapping) {
    if (labels.size() < 2) throw InvalidParameter("full graph needs at least 2 nodes");
    std::map<std::string, std::size_t> counts;
    for (const auto& l : labels) ++counts[continent_of(mapping, l)];
    const auto pairs = [](std::size_t k) { return static_cast<double>(k) * static_cast<double>(k - 1) / 2.0; };
    double same = 0.0;
    for (const auto& [continent, k] : counts) same += pairs(k);
    return same / pairs(labels.size());
}

void write_edge_list(std::ostream& out, std::string_view date, const SpanningTree& tree) {
    for (const auto& e : tree.edges) {
        out << date << ',' << tree.labels[static_cast<std::size_t>(e.i)] << ','
            << tree.labels[static_cast<std::size_t>(e.j)] << ',' << format_number(e.weight) << '\n';
    }
}

}  // namespace fxnet
