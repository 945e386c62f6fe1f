#include "udcg/harness/spearman.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "udcg/core/error.hpp"

namespace udcg::harness {

std::vector<double> average_ranks(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return values[a] < values[b];
  });
  std::vector<double> ranks(n);
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
    // positions i..j (0-based) share rank mean((i+1)..(j+1))
    const double rank = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = rank;
    i = j + 1;
  }
  return ranks;
}

bool is_constant(std::span<const double> values) {
  return std::adjacent_find(values.begin(), values.end(),
                            std::not_equal_to<>()) == values.end();
}

double spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size())
    throw DimensionError("spearman: inputs differ in length");
  if (x.size() < 2) throw DimensionError("spearman: need at least two values");
  for (double v : x)
    if (std::isnan(v)) throw InvariantError("spearman: NaN input");
  for (double v : y)
    if (std::isnan(v)) throw InvariantError("spearman: NaN input");
  const bool cx = is_constant(x);
  const bool cy = is_constant(y);
  if (cx && cy) throw InvariantError("spearman: both inputs are constant");
  if (cx || cy) return 0.0;

  const auto rx = average_ranks(x);
  const auto ry = average_ranks(y);
  const double n = static_cast<double>(x.size());
  const double mean = (n + 1.0) / 2.0;  // mean of average ranks is exact
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    const double dx = rx[i] - mean;
    const double dy = ry[i] - mean;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

}  // namespace udcg::harness
