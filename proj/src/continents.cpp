#include "fxnet/continents.hpp"

namespace fxnet {

const ContinentMap& default_continents() {
    static const ContinentMap mapping{
        {"ARS", "America"}, {"BRL", "America"}, {"CAD", "America"}, {"CLP", "America"}, {"MXN", "America"},
        {"USD", "America"}, {"CHF", "Europe"},  {"DKK", "Europe"},  {"EUR", "Europe"},  {"GBP", "Europe"},
        {"NOK", "Europe"},  {"SEK", "Europe"},  {"CNY", "Asia"},    {"FJD", "Asia"},    {"HKD", "Asia"},
        {"ILS", "Asia"},    {"INR", "Asia"},    {"MYR", "Asia"},    {"PHP", "Asia"},    {"PKR", "Asia"},
        {"RUB", "Asia"},    {"THB", "Asia"},    {"TRY", "Asia"},    {"TWD", "Asia"},    {"AUD", "Oceania"},
        {"NZD", "Oceania"}, {"ZAR", "Africa"},
    };
    return mapping;
}

}  // namespace fxnet
