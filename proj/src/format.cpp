#include "fxnet/format.hpp"

#include <cstdio>

namespace fxnet {

std::string format_number(double value) {
    char buffer[32];
    const int n = std::snprintf(buffer, sizeof buffer, "%.6g", value);
    return std::string(buffer, static_cast<std::size_t>(n));
}

std::string format_exact(double value) {
    char buffer[40];
    const int n = std::snprintf(buffer, sizeof buffer, "%.17g", value);
    return std::string(buffer, static_cast<std::size_t>(n));
}

}  // namespace fxnet
