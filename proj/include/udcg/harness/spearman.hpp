#pragma once

#include <span>
#include <vector>

namespace udcg::harness {

// 1-based ranks in ascending order; tied values share the mean of the rank
// positions they occupy.
std::vector<double> average_ranks(std::span<const double> values);

// Pearson correlation of average ranks. Throws DimensionError on a length
// mismatch or fewer than two values, InvariantError when both inputs are
// constant. Returns 0 when exactly one input is constant.
double spearman(std::span<const double> x, std::span<const double> y);

bool is_constant(std::span<const double> values);

}  // namespace udcg::harness
