#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "udcg/core/index.hpp"
#include "udcg/core/types.hpp"
#include "udcg/metrics/udcg.hpp"
#include "udcg/trainer/trainer.hpp"

namespace udcg::harness {

using ContextScorer = std::function<double(const EvalContext&)>;

struct MetricOptions {
  double gamma = metrics::kDefaultGamma;
  std::optional<ThetaWeights> theta;  // required by udcg_theta
  trainer::FeatureMode theta_features = trainer::FeatureMode::kFull;
};

// precision, hits, mrr, map, ndcg, udcg, udcg_rel (gamma = 0), udcg_theta.
const std::vector<std::string>& known_metrics();

// Builds a scorer reading relevance and utilities from `index`, which must
// outlive the scorer. map uses the number of relevant passages in the
// context as its normalizer. Throws InvariantError for an unknown name or
// for udcg_theta without theta.
ContextScorer make_scorer(std::string_view metric, const AnnotationIndex& index,
                          const MetricOptions& options = {});

struct QuestionCorrelation {
  std::string question_id;
  std::size_t contexts = 0;
  std::optional<double> rho;  // empty when skipped
};

struct CorrelationReport {
  std::string metric;
  std::vector<QuestionCorrelation> per_question;  // sorted by question id
  double mean_rho = 0.0;                          // NaN when nothing scored
  std::size_t scored = 0;
  std::size_t skipped = 0;
};

// Per question: Spearman between metric scores and outcome ordinals
// (correct 2, abstain 1, wrong 0). Questions with fewer than two contexts
// or a constant score/outcome vector are skipped and counted. Throws
// InvariantError for a context without outcome.
CorrelationReport correlate_metric(std::string metric,
                                   const ContextScorer& scorer,
                                   const std::vector<EvalContext>& contexts);

// metric,mean_rho,scored,skipped
void write_summary_csv(std::ostream& out,
                       const std::vector<CorrelationReport>& reports);
nlohmann::json to_json(const std::vector<CorrelationReport>& reports);

}  // namespace udcg::harness
