#pragma once

// Seeded synthetic retrieval suites: per question a pool of retrieved
// passages with relevance judgments and utility annotations, n sampled
// contexts, and an outcome for every context produced either by the
// simulated reader or by a planted linear scorer.

#include <cstddef>
#include <cstdint>
#include <variant>
#include <vector>

#include "udcg/core/index.hpp"
#include "udcg/core/types.hpp"
#include "udcg/harness/simulator.hpp"

namespace udcg::harness {

// Outcome = correct if theta.x > correct_above, wrong if theta.x <
// wrong_below, abstain otherwise (x = build_features of the context).
struct PlantedScorer {
  ThetaWeights theta;
  double correct_above = 0.0;
  double wrong_below = 0.0;
};

// U-shaped alphas {1.0, 0.5, 0.2, 0.5, 1.0} with betas loaded on the
// edges {1.0, 0.6, 0.3, 0.6, 1.0}; thresholds 0.25 / -0.75.
PlantedScorer planted_u_shape();

struct SyntheticConfig {
  std::size_t questions = 300;
  std::size_t contexts_per_question = 10;
  std::size_t k = 5;
  std::size_t pool = 25;
  // Share of questions whose pool holds no relevant passage.
  double no_relevant_rate = 0.13;
  std::size_t max_relevant = 5;
  double relevant_utility_min = 0.2;
  // Distracting effect mixture: weak in [0, 0.2), hard in (0.8, 1],
  // intermediate otherwise.
  double weak_share = 0.5;
  double hard_share = 0.2;
  std::uint64_t seed = 0;
  // Simulated reader (sampled outcomes) or planted scorer.
  std::variant<SimLlmProfile, PlantedScorer> outcome_model =
      default_profile(5);
};

struct SyntheticSuite {
  std::vector<Question> questions;
  std::vector<Passage> passages;
  std::vector<RelevanceJudgment> judgments;
  std::vector<UtilityAnnotation> annotations;
  std::vector<RankedList> rankings;
  std::vector<EvalContext> contexts;
  std::size_t questions_without_relevant = 0;

  AnnotationIndex index() const { return {annotations, judgments}; }
};

// Throws DimensionError when a simulator profile's k differs from config.k.
SyntheticSuite generate_suite(const SyntheticConfig& config);

// Splits by question: the first `train_questions` questions (in generation
// order) form the first part.
std::pair<std::vector<EvalContext>, std::vector<EvalContext>> split_by_question(
    const SyntheticSuite& suite, std::size_t train_questions);

}  // namespace udcg::harness
