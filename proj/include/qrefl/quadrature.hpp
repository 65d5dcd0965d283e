#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <queue>
#include <span>
#include <stdexcept>
#include <vector>

#include "qrefl/errors.hpp"

namespace qrefl {

struct QuadOptions {
  double rel_tol = 1e-10;
  double abs_tol = 0.0;
  int max_intervals = 2000;
};

struct QuadResult {
  double value = 0.0;
  double error = 0.0;
  int intervals = 0;
  long evaluations = 0;
  bool converged = false;
};

namespace detail {

// 21-point Kronrod rule with embedded 10-point Gauss rule (QUADPACK qk21).
inline constexpr std::array<double, 11> kGk21Nodes = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
inline constexpr std::array<double, 11> kGk21Weights = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077715943069385, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
// Gauss weights for the odd-indexed Kronrod nodes 1, 3, 5, 7, 9.
inline constexpr std::array<double, 5> kG10Weights = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Segment {
  double a, b, value, error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

template <class BatchFn>
Segment gk21(BatchFn& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  std::array<double, 21> x{};
  std::array<double, 21> y{};
  for (std::size_t i = 0; i < 10; ++i) {
    x[2 * i] = center - half * kGk21Nodes[i];
    x[2 * i + 1] = center + half * kGk21Nodes[i];
  }
  x[20] = center;
  f(std::span<const double>(x), std::span<double>(y));

  double kronrod = kGk21Weights[10] * y[20];
  double gauss = 0.0;
  double abs_sum = std::abs(kronrod);
  for (std::size_t i = 0; i < 10; ++i) {
    const double pair = y[2 * i] + y[2 * i + 1];
    kronrod += kGk21Weights[i] * pair;
    abs_sum += kGk21Weights[i] * (std::abs(y[2 * i]) + std::abs(y[2 * i + 1]));
    if (i % 2 == 1) gauss += kG10Weights[i / 2] * pair;
  }
  kronrod *= half;
  gauss *= half;
  abs_sum *= std::abs(half);
  const double roundoff = 50.0 * std::numeric_limits<double>::epsilon() * abs_sum;
  return {a, b, kronrod, std::max(std::abs(kronrod - gauss), roundoff)};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod (21 point) integration over the partition
/// given by `breakpoints` (at least two, increasing). The integrand is called
/// with a batch of abscissae and fills the matching outputs.
///
/// Returns converged=false instead of throwing when the interval budget runs
/// out; callers decide whether that is fatal.
template <class BatchFn>
QuadResult integrate_gk21(BatchFn&& f, std::span<const double> breakpoints,
                          const QuadOptions& opts = {}) {
  if (breakpoints.size() < 2) throw std::invalid_argument("integrate_gk21: need two breakpoints");
  std::priority_queue<detail::Segment> heap;
  QuadResult res;
  double total = 0.0;
  double total_err = 0.0;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    if (!(breakpoints[i + 1] > breakpoints[i])) {
      throw std::invalid_argument("integrate_gk21: breakpoints must be strictly increasing");
    }
    auto seg = detail::gk21(f, breakpoints[i], breakpoints[i + 1]);
    res.evaluations += 21;
    total += seg.value;
    total_err += seg.error;
    heap.push(seg);
  }
  auto tolerance = [&] { return std::max(opts.abs_tol, opts.rel_tol * std::abs(total)); };
  while (total_err > tolerance() && static_cast<int>(heap.size()) < opts.max_intervals) {
    auto worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {  // interval at machine resolution
      heap.push(worst);
      break;
    }
    auto left = detail::gk21(f, worst.a, mid);
    auto right = detail::gk21(f, mid, worst.b);
    res.evaluations += 42;
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }
  // re-sum
  total = 0.0;
  total_err = 0.0;
  res.intervals = static_cast<int>(heap.size());
  while (!heap.empty()) {
    total += heap.top().value;
    total_err += heap.top().error;
    heap.pop();
  }
  res.value = total;
  res.error = total_err;
  res.converged = total_err <= tolerance();
  return res;
}

template <class BatchFn>
QuadResult integrate_gk21(BatchFn&& f, double a, double b, const QuadOptions& opts = {}) {
  const std::array<double, 2> br{a, b};
  return integrate_gk21(std::forward<BatchFn>(f), std::span<const double>(br), opts);
}

/// Adapts a scalar callable to the batch interface.
template <class ScalarFn>
auto batched(ScalarFn f) {
  return [f = std::move(f)](std::span<const double> x, std::span<double> y) mutable {
    for (std::size_t i = 0; i < x.size(); ++i) y[i] = f(x[i]);
  };
}

/// Geometric breakpoints a, a*ratio, a*ratio^2, ... capped at b, preceded by 0
/// when `from_zero` is set. Used to resolve integrands peaked near an endpoint.
std::vector<double> geometric_breakpoints(double first, double last, double ratio, bool from_zero);

}  // namespace qrefl
