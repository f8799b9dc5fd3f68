#pragma once

// JSON documents for spanning trees.
//
//   {"date": "...", "labels": [...],
//    "edges": [{"i": 0, "j": 3, "source": "AUD", "target": "NZD", "weight": 0.41}, ...],
//    "degrees": {"AUD": 2, ...}}

#include <string>

#include <json.hpp>

#include "fxnet/evolution.hpp"
#include "fxnet/network.hpp"

namespace fxnet {

nlohmann::json tree_to_json(const std::string& date, const SpanningTree& tree);

/// Inverse of tree_to_json; validates the tree structure.
NetworkEntry tree_from_json(const nlohmann::json& doc);

}  // namespace fxnet
