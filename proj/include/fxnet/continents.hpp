#pragma once

#include "fxnet/network.hpp"

namespace fxnet {

/// Continent assignment for the 27 currencies of the silver-denominated
/// study set. RUB, TRY and ILS are placed in Asia and FJD is grouped with
/// Asia rather than with AUD/NZD; with that split the complete graph has
/// 97 of 351 pairs (27.64%) inside one continent.
const ContinentMap& default_continents();

}  // namespace fxnet
