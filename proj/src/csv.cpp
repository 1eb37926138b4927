#include "survey/csv.hpp"

#include <charconv>
#include <cmath>

namespace survey::csv {

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

std::string num(const std::optional<double>& v) { return v ? num(*v) : "NA"; }

}  // namespace survey::csv
