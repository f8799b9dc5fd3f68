#include "fxnet/serialization.hpp"

#include "fxnet/errors.hpp"

namespace fxnet {

nlohmann::json tree_to_json(const std::string& date, const SpanningTree& tree) {
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& e : tree.edges) {
        edges.push_back({{"i", e.i},
                         {"j", e.j},
                         {"source", tree.labels[static_cast<std::size_t>(e.i)]},
                         {"target", tree.labels[static_cast<std::size_t>(e.j)]},
                         {"weight", e.weight}});
    }
    nlohmann::json degree_doc = nlohmann::json::object();
    for (const auto& [label, degree] : degree_map(tree)) degree_doc[label] = degree;
    return {{"date", date}, {"labels", tree.labels}, {"edges", std::move(edges)}, {"degrees", std::move(degree_doc)}};
}

NetworkEntry tree_from_json(const nlohmann::json& doc) {
    NetworkEntry entry;
    try {
        entry.end_date = doc.at("date").get<std::string>();
        entry.tree.labels = doc.at("labels").get<std::vector<std::string>>();
        for (const auto& e : doc.at("edges")) {
            entry.tree.edges.push_back({e.at("i").get<int>(), e.at("j").get<int>(), e.at("weight").get<double>()});
        }
    } catch (const nlohmann::json::exception& ex) {
        throw InputError(std::string("malformed tree document: ") + ex.what());
    }
    try {
        check_spanning_tree(entry.tree);
    } catch (const InvalidParameter& ex) {
        throw InputError("tree for " + entry.end_date + " is invalid: " + ex.what());
    }
    entry.degrees = degree_map(entry.tree);
    return entry;
}

}  // namespace fxnet
