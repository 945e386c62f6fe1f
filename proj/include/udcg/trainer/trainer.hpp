#pragma once

// Pairwise linear ranking model for the positional weights of udcg_theta.
//
// Each context becomes a feature vector [u+_1..u+_k, u-_1..u-_k] with an
// ordinal target (correct 2, abstain 1, wrong 0). Pairs are formed only
// between contexts of the same question whose targets differ. The model
// minimizes
//
//   lambda/2 |w|^2 + mean over pairs of max(0, margin - w.(x_hi - x_lo)) / margin
//
// by seeded stochastic subgradient descent with step lr/sqrt(epoch). The
// learned w is read back as alphas = w[0..k), betas = w[k..2k). Weights are
// not clamped: a negative alpha means the position hurts.

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "udcg/core/index.hpp"
#include "udcg/core/types.hpp"
#include "udcg/metrics/udcg.hpp"

namespace udcg::trainer {

enum class FeatureMode {
  kFull,           // utility positive and negative parts
  kRelevanceOnly,  // negative parts zeroed
  kBinary,         // positive parts replaced by 0/1 relevance, no negatives
};

FeatureMode feature_mode_from_string(std::string_view name);
std::string_view to_string(FeatureMode mode);

struct TrainExample {
  std::string question_id;
  std::vector<double> features;  // 2k values
  int target = 0;                // 2 correct, 1 abstain, 0 wrong
};

struct TrainerConfig {
  double regularization_c = 0.01;  // lambda above
  int max_epochs = 200;
  double learning_rate = 0.1;
  std::uint64_t seed = 0;
  double tolerance = 1e-6;  // relative objective change between epochs
  double margin = 1.0;
};

struct EpochLog {
  int epoch = 0;
  double loss = 0.0;
  double pairwise_accuracy = 0.0;
};

struct TrainResult {
  ThetaWeights theta;
  std::vector<EpochLog> log;
  bool converged = false;
};

std::vector<double> build_features(const metrics::ContextUtilities& u);
std::vector<double> build_features(const metrics::ContextUtilities& u,
                                   const std::vector<bool>& relevant,
                                   FeatureMode mode);

// One example per context; every context needs an outcome and annotations
// for all of its passages (judgments too unless mode is kFull).
std::vector<TrainExample> make_examples(const std::vector<EvalContext>& contexts,
                                        const AnnotationIndex& index,
                                        FeatureMode mode = FeatureMode::kFull);

// Throws InvariantError when no question has two contexts with different
// targets, Error when the objective stops being finite.
TrainResult train(const std::vector<TrainExample>& examples,
                  const TrainerConfig& config = {});

// Fraction of within-question ordered pairs scored in target order by
// theta; score ties count one half. Throws InvariantError without pairs.
double pairwise_accuracy(const ThetaWeights& theta,
                         const std::vector<TrainExample>& examples);

// Linear score w.x of one example under theta.
double linear_score(const ThetaWeights& theta, std::span<const double> features);

void write_training_log(std::ostream& out, const std::vector<EpochLog>& log);

}  // namespace udcg::trainer
