#include "udcg/harness/correlation.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <ostream>

#include "udcg/core/error.hpp"
#include "udcg/harness/spearman.hpp"
#include "udcg/metrics/classic.hpp"

namespace udcg::harness {

using metrics::ContextUtilities;
using metrics::RelevanceVector;

const std::vector<std::string>& known_metrics() {
  static const std::vector<std::string> names = {
      "precision", "hits", "mrr", "map", "ndcg", "udcg", "udcg_rel", "udcg_theta"};
  return names;
}

ContextScorer make_scorer(std::string_view metric, const AnnotationIndex& index,
                          const MetricOptions& options) {
  const AnnotationIndex* idx = &index;
  auto rels = [idx](const EvalContext& c) {
    return RelevanceVector::binary(idx->relevance(c));
  };
  auto utils = [idx](const EvalContext& c) {
    return ContextUtilities(idx->utilities(c));
  };

  if (metric == "precision")
    return [rels](const EvalContext& c) { return metrics::precision_at_k(rels(c)); };
  if (metric == "hits")
    return [rels](const EvalContext& c) {
      return static_cast<double>(metrics::hits_at_k(rels(c)));
    };
  if (metric == "mrr")
    return [rels](const EvalContext& c) { return metrics::reciprocal_rank(rels(c)); };
  if (metric == "map")
    return [rels](const EvalContext& c) {
      const auto r = rels(c);
      return metrics::average_precision(r, r.hits());
    };
  if (metric == "ndcg")
    return [rels](const EvalContext& c) { return metrics::ndcg(rels(c)); };
  if (metric == "udcg" || metric == "udcg_rel") {
    const double gamma = metric == "udcg" ? options.gamma : 0.0;
    if (!(gamma >= 0.0 && gamma <= 1.0))
      throw InvariantError("gamma must lie in [0, 1]");
    return [utils, gamma](const EvalContext& c) {
      return metrics::udcg(utils(c), gamma);
    };
  }
  if (metric == "udcg_theta") {
    if (!options.theta)
      throw InvariantError("udcg_theta requires theta weights");
    const ThetaWeights theta = *options.theta;
    validate(theta);
    const auto mode = options.theta_features;
    if (mode == trainer::FeatureMode::kFull)
      return [utils, theta](const EvalContext& c) {
        return metrics::udcg_theta(utils(c), theta);
      };
    return [idx, utils, theta, mode](const EvalContext& c) {
      const auto x = trainer::build_features(utils(c), idx->relevance(c), mode);
      return metrics::sigmoid(trainer::linear_score(theta, x));
    };
  }
  throw InvariantError("unknown metric '" + std::string(metric) + "'");
}

CorrelationReport correlate_metric(std::string metric,
                                   const ContextScorer& scorer,
                                   const std::vector<EvalContext>& contexts) {
  std::map<std::string, std::vector<const EvalContext*>> groups;
  for (const auto& c : contexts) {
    if (!c.outcome)
      throw InvariantError("context (" + c.question_id + ", " + c.context_id +
                           ") has no outcome");
    groups[c.question_id].push_back(&c);
  }

  CorrelationReport report;
  report.metric = std::move(metric);
  double sum = 0.0;
  for (const auto& [qid, group] : groups) {
    std::vector<double> scores, ideal;
    for (const auto* c : group) {
      scores.push_back(scorer(*c));
      ideal.push_back(static_cast<double>(ordinal(*c->outcome)));
    }
    QuestionCorrelation qc{qid, group.size(), std::nullopt};
    if (group.size() >= 2 && !is_constant(scores) && !is_constant(ideal)) {
      qc.rho = spearman(scores, ideal);
      sum += *qc.rho;
      ++report.scored;
    } else {
      ++report.skipped;
    }
    report.per_question.push_back(std::move(qc));
  }
  report.mean_rho = report.scored
                        ? sum / static_cast<double>(report.scored)
                        : std::numeric_limits<double>::quiet_NaN();
  return report;
}

void write_summary_csv(std::ostream& out,
                       const std::vector<CorrelationReport>& reports) {
  out << "metric,mean_rho,scored,skipped\n";
  out.precision(12);
  for (const auto& r : reports)
    out << r.metric << ',' << r.mean_rho << ',' << r.scored << ','
        << r.skipped << '\n';
}

nlohmann::json to_json(const std::vector<CorrelationReport>& reports) {
  nlohmann::json out = nlohmann::json::object();
  for (const auto& r : reports) {
    nlohmann::json per = nlohmann::json::array();
    for (const auto& q : r.per_question) {
      nlohmann::json row{{"question_id", q.question_id},
                         {"contexts", q.contexts}};
      row["rho"] = q.rho ? nlohmann::json(*q.rho) : nlohmann::json(nullptr);
      per.push_back(std::move(row));
    }
    out[r.metric] = {{"mean_rho", std::isnan(r.mean_rho)
                                      ? nlohmann::json(nullptr)
                                      : nlohmann::json(r.mean_rho)},
                     {"scored", r.scored},
                     {"skipped", r.skipped},
                     {"per_question", std::move(per)}};
  }
  return out;
}

}  // namespace udcg::harness
