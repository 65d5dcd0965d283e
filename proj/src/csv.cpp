#include "qrefl/csv.hpp"

#include <cmath>
#include <charconv>
#include <ostream>

namespace qrefl::csv {

std::string number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::scientific, 8);
  return std::string(buf, res.ptr);
}

void header(std::ostream& os, std::initializer_list<std::string_view> columns) {
  bool first = true;
  for (auto c : columns) {
    if (!first) os << ',';
    os << c;
    first = false;
  }
  os << '\n';
}

}  // namespace qrefl::csv
