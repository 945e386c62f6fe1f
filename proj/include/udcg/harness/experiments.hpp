#pragma once

// Desk-scale experiments on the simulated reader. Every runner is
// deterministic for a fixed seed and emits plot-ready CSV.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "udcg/core/types.hpp"
#include "udcg/harness/correlation.hpp"
#include "udcg/harness/simulator.hpp"
#include "udcg/harness/synthetic.hpp"
#include "udcg/trainer/trainer.hpp"

namespace udcg::harness {

// --- position sweep: one relevant passage moved through k slots ---------

struct SweepRow {
  std::size_t position = 0;  // 1-based
  double accuracy = 0.0;     // expected P(correct)
  double ndcg = 0.0;
  double map = 0.0;
  double mrr = 0.0;
  double precision = 0.0;
  double udcg = 0.0;
  double udcg_theta = 0.0;   // NaN without theta
};

// relevant_utility in (0, 1], distractor_utility in [-1, 0].
std::vector<SweepRow> position_sweep(std::size_t k, double relevant_utility,
                                     double distractor_utility,
                                     const SimLlmProfile& profile,
                                     const std::optional<ThetaWeights>& theta);

struct SweepTrainingOptions {
  std::size_t questions = 300;
  std::size_t contexts_per_question = 10;
  std::uint64_t seed = 0;
  trainer::TrainerConfig trainer;
};

// Questions with one relevant passage and k-1 distractors, each context a
// random arrangement of the same passages, outcomes drawn from `profile`
// according to its mode.
std::vector<trainer::TrainExample> sweep_training_examples(
    const SimLlmProfile& profile, const SweepTrainingOptions& options);
ThetaWeights train_sweep_theta(const SimLlmProfile& profile,
                               const SweepTrainingOptions& options = {});

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

// --- distractor gap: one relevant + weak vs hard distractors ------------

struct GapRow {
  std::string case_name;  // "weak" or "hard"
  double distractor_utility = 0.0;
  OutcomeDistribution outcome;
  double precision = 0.0;
  double ndcg = 0.0;
  double udcg = 0.0;
};

struct GapOptions {
  double relevant_utility = 0.9;
  double weak_utility = -0.1;
  double hard_utility = -0.9;
  std::size_t relevant_position = 1;  // 1-based
  double gamma = metrics::kDefaultGamma;
};

std::vector<GapRow> distractor_gap(const SimLlmProfile& profile,
                                   const GapOptions& options = {});
void write_gap_csv(std::ostream& out, const std::vector<GapRow>& rows);

// --- k sweep: mean Spearman per metric as the context size varies -------

struct KSweepResult {
  std::vector<std::string> metrics;
  std::vector<std::size_t> ks;
  std::vector<std::vector<double>> mean_rho;  // [k index][metric index]
  std::vector<double> stddev;                 // per metric, across k
};

// For each k, generates the suite `base` describes with k passages per
// context and the default U-shaped profile for that k (keeping gain,
// aggregation and mode of the profile in `base`), then correlates each
// metric. udcg_theta is not accepted here. Throws Error when a k
// yields no scorable question.
KSweepResult k_sweep(const std::vector<std::size_t>& ks,
                     const SyntheticConfig& base,
                     const std::vector<std::string>& metric_names,
                     double gamma = metrics::kDefaultGamma);

void write_k_sweep_csv(std::ostream& out, const KSweepResult& result);

// Sample standard deviation.
double stddev(const std::vector<double>& values);

// --- context bench: the full correlation protocol on a synthetic suite --

struct BenchOptions {
  std::size_t train_questions = 200;  // remainder is held out
  double gamma = metrics::kDefaultGamma;
  trainer::TrainerConfig trainer;
};

struct BenchResult {
  std::vector<CorrelationReport> reports;  // held-out questions only
  ThetaWeights theta;                      // full-feature model
  double heldout_pairwise_accuracy = 0.0;
};

// Trains udcg_theta (full, rel-only, binary) on the first questions and
// correlates every metric on the rest. Report names: precision, hits, mrr,
// map, ndcg, udcg, udcg_rel, udcg_theta, udcg_theta_rel, udcg_theta_binary.
BenchResult context_bench(const SyntheticSuite& suite,
                          const BenchOptions& options = {});

}  // namespace udcg::harness
