#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "udcg/core/types.hpp"

namespace udcg::metrics {

// Per-position passage utilities of one context, each in [-1, 1].
class ContextUtilities {
 public:
  explicit ContextUtilities(std::vector<double> values);
  ContextUtilities(std::initializer_list<double> values)
      : ContextUtilities(std::vector<double>(values)) {}

  std::size_t k() const { return values_.size(); }
  std::span<const double> values() const { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }

 private:
  std::vector<double> values_;
};

struct UtilityParts {
  std::vector<double> positives;  // max(u_i, 0)
  std::vector<double> negatives;  // min(u_i, 0)
};

UtilityParts split_parts(const ContextUtilities& u);

double sigmoid(double x);

inline constexpr double kDefaultGamma = 1.0 / 3.0;

// Training-free score: sigmoid(mean positive part + gamma * mean negative
// part). Throws InvariantError when gamma is outside [0, 1].
double udcg(const ContextUtilities& u, double gamma = kDefaultGamma);

// Position-weighted score: sigmoid(sum alpha_i u_i^+ + sum beta_i u_i^-).
// Weights are applied as given, negative entries included.
double udcg_theta(const ContextUtilities& u, const ThetaWeights& theta);

// The argument of the sigmoid in udcg_theta.
double udcg_theta_linear(const ContextUtilities& u, const ThetaWeights& theta);

}  // namespace udcg::metrics
