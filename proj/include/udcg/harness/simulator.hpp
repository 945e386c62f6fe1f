#pragma once

// Closed-form stand-in for an LLM reading a k-passage context.
//
//   c = agg over relevant i of a_i * u_i          (0 without relevant)
//   d = agg over irrelevant i of a_i * |u_i|      (0 without distractors)
//   P(correct) = c * (1 - g * d * (1 - c))
//   P(wrong)   = (1 - P(correct)) * g * d
//   P(abstain) = 1 - P(correct) - P(wrong)
//
// a is the positional attention profile and g the distraction gain. A
// confident reader (c = 1) is never pulled off the answer; otherwise strong
// distractors both steal some correct answers and turn abstentions into
// wrong answers.
//
// agg is either max or noisy-OR (1 - prod(1 - x_i)). Under max a second
// hard distractor changes nothing; under noisy-OR each passage adds its
// own chance of steering the reader.

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "udcg/core/types.hpp"
#include "udcg/metrics/udcg.hpp"

namespace udcg::harness {

enum class Aggregation { kMax, kNoisyOr };
std::string to_string(Aggregation a);
Aggregation aggregation_from_string(std::string_view s);  // max, noisy-or

// expected: a context's outcome is the most likely one; sampled: drawn.
enum class SimMode { kExpected, kSampled };
std::string to_string(SimMode m);
SimMode sim_mode_from_string(std::string_view s);  // expected, sampled

struct SimLlmProfile {
  std::vector<double> attention;  // a_1..a_k, each in [0, 1]
  double distraction_gain = 0.8;
  Aggregation aggregation = Aggregation::kNoisyOr;
  SimMode mode = SimMode::kExpected;

  std::size_t k() const { return attention.size(); }
};

void validate(const SimLlmProfile& profile);

// U-shaped profile. For k = 5 it is {1.0, 0.7, 0.5, 0.7, 1.0}; other k
// interpolate the same curve linearly over relative position.
SimLlmProfile default_profile(std::size_t k);

// Attention 1 everywhere.
SimLlmProfile flat_profile(std::size_t k, double distraction_gain = 0.8);

struct OutcomeDistribution {
  double correct = 0.0;
  double wrong = 0.0;
  double abstain = 1.0;
};

// Throws DimensionError when the profile, flags, and utilities disagree on k.
OutcomeDistribution simulate_outcome(const metrics::ContextUtilities& u,
                                     const std::vector<bool>& relevant,
                                     const SimLlmProfile& profile);

// Relevance taken from the sign of each utility.
OutcomeDistribution simulate_outcome(const metrics::ContextUtilities& u,
                                     const SimLlmProfile& profile);

Outcome sample_outcome(const OutcomeDistribution& dist, std::mt19937_64& rng);

// Most likely outcome; ties resolve correct, then abstain, then wrong.
Outcome most_likely(const OutcomeDistribution& dist);

// most_likely in expected mode, sample_outcome in sampled mode.
Outcome draw_outcome(const OutcomeDistribution& dist,
                     const SimLlmProfile& profile, std::mt19937_64& rng);

}  // namespace udcg::harness
