#include "qrefl/quadrature.hpp"

namespace qrefl {

std::vector<double> geometric_breakpoints(double first, double last, double ratio, bool from_zero) {
  if (!(first > 0.0) || !(ratio > 1.0)) {
    throw std::invalid_argument("geometric_breakpoints: need first > 0 and ratio > 1");
  }
  std::vector<double> br;
  if (from_zero) br.push_back(0.0);
  for (double p = first; p < last; p *= ratio) {
    if (br.empty() || p > br.back()) br.push_back(p);
  }
  if (br.empty() || last > br.back()) br.push_back(last);
  return br;
}

}  // namespace qrefl
