#pragma once

#include <string>

namespace fxnet {

/// printf-style `%.6g`, the numeric format of every text output.
std::string format_number(double value);

/// `%.17g`: round-trips a double exactly.
std::string format_exact(double value);

}  // namespace fxnet
