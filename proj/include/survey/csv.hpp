#pragma once

#include <optional>
#include <string>

namespace survey::csv {

/// Shortest decimal form that reads back to the same double.
std::string num(double v);

/// num(v), or "NA" when absent.
std::string num(const std::optional<double>& v);

}  // namespace survey::csv
