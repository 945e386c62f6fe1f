#include "udcg/harness/simulator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "udcg/core/error.hpp"

namespace udcg::harness {

namespace {

constexpr std::array<double, 5> kUShape = {1.0, 0.7, 0.5, 0.7, 1.0};

bool unit(double v) { return v >= 0.0 && v <= 1.0; }

}  // namespace

void validate(const SimLlmProfile& profile) {
  if (profile.attention.empty())
    throw InvariantError("simulator profile with k = 0");
  if (!std::all_of(profile.attention.begin(), profile.attention.end(), unit) ||
      !unit(profile.distraction_gain))
    throw InvariantError("simulator parameters must lie in [0, 1]");
}

SimLlmProfile default_profile(std::size_t k) {
  if (k == 0) throw InvariantError("default_profile: k must be positive");
  SimLlmProfile p;
  p.attention.resize(k);
  if (k == 1) {
    p.attention[0] = kUShape.front();
    return p;
  }
  const double last = static_cast<double>(kUShape.size() - 1);
  for (std::size_t i = 0; i < k; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(k - 1) * last;
    const auto lo = std::min(static_cast<std::size_t>(t), kUShape.size() - 2);
    const double frac = t - static_cast<double>(lo);
    p.attention[i] = kUShape[lo] + frac * (kUShape[lo + 1] - kUShape[lo]);
  }
  return p;
}

std::string to_string(Aggregation a) {
  return a == Aggregation::kMax ? "max" : "noisy-or";
}

Aggregation aggregation_from_string(std::string_view s) {
  if (s == "max") return Aggregation::kMax;
  if (s == "noisy-or") return Aggregation::kNoisyOr;
  throw InvariantError("unknown aggregation '" + std::string(s) + "'");
}

std::string to_string(SimMode m) {
  return m == SimMode::kExpected ? "expected" : "sampled";
}

SimMode sim_mode_from_string(std::string_view s) {
  if (s == "expected") return SimMode::kExpected;
  if (s == "sampled") return SimMode::kSampled;
  throw InvariantError("unknown simulator mode '" + std::string(s) + "'");
}

SimLlmProfile flat_profile(std::size_t k, double distraction_gain) {
  SimLlmProfile p;
  p.attention.assign(k, 1.0);
  p.distraction_gain = distraction_gain;
  return p;
}

OutcomeDistribution simulate_outcome(const metrics::ContextUtilities& u,
                                     const std::vector<bool>& relevant,
                                     const SimLlmProfile& profile) {
  validate(profile);
  if (profile.k() != u.k() || relevant.size() != u.k())
    throw DimensionError("simulator profile has k = " +
                         std::to_string(profile.k()) + ", context has " +
                         std::to_string(u.k()));
  // Max keeps the strongest signal; noisy-OR lets every passage contribute
  // independently (c = 1 - prod(1 - a_i u_i)).
  const bool noisy_or = profile.aggregation == Aggregation::kNoisyOr;
  double c = 0.0;
  double d = 0.0;
  double miss = 1.0;
  double resist = 1.0;
  for (std::size_t i = 0; i < u.k(); ++i) {
    const double a = profile.attention[i];
    if (relevant[i]) {
      const double s = a * std::max(u[i], 0.0);
      c = std::max(c, s);
      miss *= 1.0 - s;
    } else {
      const double s = a * std::max(-u[i], 0.0);
      d = std::max(d, s);
      resist *= 1.0 - s;
    }
  }
  if (noisy_or) {
    c = 1.0 - miss;
    d = 1.0 - resist;
  }
  const double g = profile.distraction_gain;
  OutcomeDistribution dist;
  dist.correct = c * (1.0 - g * d * (1.0 - c));
  dist.wrong = (1.0 - dist.correct) * g * d;
  dist.abstain = 1.0 - (dist.correct + dist.wrong);
  return dist;
}

OutcomeDistribution simulate_outcome(const metrics::ContextUtilities& u,
                                     const SimLlmProfile& profile) {
  std::vector<bool> relevant(u.k());
  for (std::size_t i = 0; i < u.k(); ++i) relevant[i] = u[i] > 0.0;
  return simulate_outcome(u, relevant, profile);
}

Outcome sample_outcome(const OutcomeDistribution& dist, std::mt19937_64& rng) {
  const double r = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
  if (r < dist.correct) return Outcome::kCorrect;
  if (r < dist.correct + dist.wrong) return Outcome::kWrong;
  return Outcome::kAbstain;
}

Outcome most_likely(const OutcomeDistribution& dist) {
  if (dist.correct >= dist.abstain && dist.correct >= dist.wrong)
    return Outcome::kCorrect;
  if (dist.abstain >= dist.wrong) return Outcome::kAbstain;
  return Outcome::kWrong;
}

Outcome draw_outcome(const OutcomeDistribution& dist,
                     const SimLlmProfile& profile, std::mt19937_64& rng) {
  return profile.mode == SimMode::kExpected ? most_likely(dist)
                                            : sample_outcome(dist, rng);
}

}  // namespace udcg::harness
