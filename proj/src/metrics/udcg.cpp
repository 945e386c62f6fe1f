#include "udcg/metrics/udcg.hpp"

#include <cmath>
#include <string>

#include "udcg/core/error.hpp"

namespace udcg::metrics {

ContextUtilities::ContextUtilities(std::vector<double> values)
    : values_(std::move(values)) {
  if (values_.empty()) throw InvariantError("context utilities with k = 0");
  for (double v : values_)
    if (!(v >= -1.0 && v <= 1.0))
      throw InvariantError("utility " + std::to_string(v) +
                           " outside [-1, 1]");
}

UtilityParts split_parts(const ContextUtilities& u) {
  UtilityParts parts;
  parts.positives.reserve(u.k());
  parts.negatives.reserve(u.k());
  for (double v : u.values()) {
    parts.positives.push_back(v > 0.0 ? v : 0.0);
    parts.negatives.push_back(v < 0.0 ? v : 0.0);
  }
  return parts;
}

double sigmoid(double x) {
  if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

double udcg(const ContextUtilities& u, double gamma) {
  if (!(gamma >= 0.0 && gamma <= 1.0))
    throw InvariantError("gamma must lie in [0, 1]");
  double pos = 0.0;
  double neg = 0.0;
  for (double v : u.values()) {
    if (v > 0.0)
      pos += v;
    else
      neg += v;
  }
  const double k = static_cast<double>(u.k());
  return sigmoid(pos / k + gamma * neg / k);
}

double udcg_theta_linear(const ContextUtilities& u, const ThetaWeights& theta) {
  if (theta.k != u.k() || theta.alphas.size() != u.k() ||
      theta.betas.size() != u.k())
    throw DimensionError("theta has k = " + std::to_string(theta.k) +
                         " but the context has " + std::to_string(u.k()) +
                         " passages");
  double sum = 0.0;
  for (std::size_t i = 0; i < u.k(); ++i) {
    const double v = u[i];
    sum += v > 0.0 ? theta.alphas[i] * v : theta.betas[i] * v;
  }
  return sum;
}

double udcg_theta(const ContextUtilities& u, const ThetaWeights& theta) {
  return sigmoid(udcg_theta_linear(u, theta));
}

}  // namespace udcg::metrics
