#include "udcg/harness/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <ostream>
#include <random>

#include "udcg/core/error.hpp"
#include "udcg/core/hash.hpp"
#include "udcg/metrics/classic.hpp"
#include "udcg/metrics/udcg.hpp"

namespace udcg::harness {

using metrics::ContextUtilities;
using metrics::RelevanceVector;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_unit_interval(double v, const char* what) {
  if (!(v >= -1.0 && v <= 1.0))
    throw InvariantError(std::string(what) + " must lie in [-1, 1]");
}

}  // namespace

std::vector<SweepRow> position_sweep(std::size_t k, double relevant_utility,
                                     double distractor_utility,
                                     const SimLlmProfile& profile,
                                     const std::optional<ThetaWeights>& theta) {
  if (k < 2) throw InvariantError("position_sweep: k must be at least 2");
  if (!(relevant_utility > 0.0 && relevant_utility <= 1.0))
    throw InvariantError("position_sweep: relevant utility must be in (0, 1]");
  if (!(distractor_utility <= 0.0 && distractor_utility >= -1.0))
    throw InvariantError("position_sweep: distractor utility must be in [-1, 0]");
  if (profile.k() != k)
    throw DimensionError("position_sweep: profile k differs from k");

  std::vector<SweepRow> rows;
  for (std::size_t pos = 0; pos < k; ++pos) {
    std::vector<double> values(k, distractor_utility);
    std::vector<bool> relevant(k, false);
    values[pos] = relevant_utility;
    relevant[pos] = true;
    const ContextUtilities u(values);
    const auto rels = RelevanceVector::binary(relevant);

    SweepRow row;
    row.position = pos + 1;
    row.accuracy = simulate_outcome(u, relevant, profile).correct;
    row.ndcg = metrics::ndcg(rels);
    row.map = metrics::average_precision(rels, 1);
    row.mrr = metrics::reciprocal_rank(rels);
    row.precision = metrics::precision_at_k(rels);
    row.udcg = metrics::udcg(u);
    row.udcg_theta = theta ? metrics::udcg_theta(u, *theta) : kNaN;
    rows.push_back(row);
  }
  return rows;
}

std::vector<trainer::TrainExample> sweep_training_examples(
    const SimLlmProfile& profile, const SweepTrainingOptions& options) {
  validate(profile);
  const std::size_t k = profile.k();
  std::vector<trainer::TrainExample> examples;
  for (std::size_t q = 0; q < options.questions; ++q) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "sweep%05zu", q);
    const std::string qid = buf;
    std::mt19937_64 rng(derive_seed(options.seed, qid));
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    const double relevant_utility = 0.2 + 0.8 * unit(rng);
    std::vector<double> distractors(k - 1);
    for (auto& d : distractors) d = -unit(rng);

    for (std::size_t c = 0; c < options.contexts_per_question; ++c) {
      const std::size_t slot =
          std::uniform_int_distribution<std::size_t>(0, k - 1)(rng);
      std::shuffle(distractors.begin(), distractors.end(), rng);
      std::vector<double> values;
      std::vector<bool> relevant;
      for (std::size_t i = 0, d = 0; i < k; ++i) {
        const bool is_relevant = i == slot;
        values.push_back(is_relevant ? relevant_utility : distractors[d++]);
        relevant.push_back(is_relevant);
      }
      const ContextUtilities u(values);
      const Outcome outcome =
          draw_outcome(simulate_outcome(u, relevant, profile), profile, rng);
      examples.push_back({qid, trainer::build_features(u), ordinal(outcome)});
    }
  }
  return examples;
}

ThetaWeights train_sweep_theta(const SimLlmProfile& profile,
                               const SweepTrainingOptions& options) {
  return trainer::train(sweep_training_examples(profile, options),
                        options.trainer)
      .theta;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "position,accuracy,ndcg,map,mrr,precision,udcg,udcg_theta\n";
  out.precision(12);
  for (const auto& r : rows) {
    out << r.position << ',' << r.accuracy << ',' << r.ndcg << ',' << r.map
        << ',' << r.mrr << ',' << r.precision << ',' << r.udcg << ',';
    if (std::isnan(r.udcg_theta))
      out << "";
    else
      out << r.udcg_theta;
    out << '\n';
  }
}

std::vector<GapRow> distractor_gap(const SimLlmProfile& profile,
                                   const GapOptions& options) {
  validate(profile);
  const std::size_t k = profile.k();
  if (options.relevant_position < 1 || options.relevant_position > k)
    throw InvariantError("distractor_gap: relevant position out of range");
  require_unit_interval(options.relevant_utility, "relevant utility");
  require_unit_interval(options.weak_utility, "weak distractor utility");
  require_unit_interval(options.hard_utility, "hard distractor utility");

  std::vector<GapRow> rows;
  for (const auto& [name, du] :
       {std::pair<std::string, double>{"weak", options.weak_utility},
        std::pair<std::string, double>{"hard", options.hard_utility}}) {
    std::vector<double> values(k, du);
    std::vector<bool> relevant(k, false);
    values[options.relevant_position - 1] = options.relevant_utility;
    relevant[options.relevant_position - 1] = true;
    const ContextUtilities u(values);
    const auto rels = RelevanceVector::binary(relevant);
    GapRow row;
    row.case_name = name;
    row.distractor_utility = du;
    row.outcome = simulate_outcome(u, relevant, profile);
    row.precision = metrics::precision_at_k(rels);
    row.ndcg = metrics::ndcg(rels);
    row.udcg = metrics::udcg(u, options.gamma);
    rows.push_back(row);
  }
  return rows;
}

void write_gap_csv(std::ostream& out, const std::vector<GapRow>& rows) {
  out << "case,distractor_utility,p_correct,p_abstain,p_wrong,precision,ndcg,"
         "udcg\n";
  out.precision(12);
  for (const auto& r : rows)
    out << r.case_name << ',' << r.distractor_utility << ','
        << r.outcome.correct << ',' << r.outcome.abstain << ','
        << r.outcome.wrong << ',' << r.precision << ',' << r.ndcg << ','
        << r.udcg << '\n';
}

double stddev(const std::vector<double>& values) {
  if (values.size() < 2) return 0.0;
  const double n = static_cast<double>(values.size());
  const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / (n - 1.0));
}

KSweepResult k_sweep(const std::vector<std::size_t>& ks,
                     const SyntheticConfig& base,
                     const std::vector<std::string>& metric_names,
                     double gamma) {
  if (ks.empty() || metric_names.empty())
    throw InvariantError("k_sweep: need at least one k and one metric");
  const auto* base_profile = std::get_if<SimLlmProfile>(&base.outcome_model);
  if (!base_profile)
    throw InvariantError("k_sweep: outcomes must come from the simulator");

  KSweepResult result;
  result.metrics = metric_names;
  result.ks = ks;
  MetricOptions options;
  options.gamma = gamma;
  for (std::size_t k : ks) {
    SyntheticConfig cfg = base;
    cfg.k = k;
    SimLlmProfile profile = default_profile(k);
    profile.distraction_gain = base_profile->distraction_gain;
    profile.aggregation = base_profile->aggregation;
    profile.mode = base_profile->mode;
    cfg.outcome_model = profile;
    const auto suite = generate_suite(cfg);
    const auto index = suite.index();
    std::vector<double> row;
    for (const auto& name : metric_names) {
      if (name == "udcg_theta")
        throw InvariantError("k_sweep: udcg_theta needs one model per k");
      const auto report =
          correlate_metric(name, make_scorer(name, index, options), suite.contexts);
      if (report.scored == 0)
        throw Error("k_sweep: no scorable question for k = " + std::to_string(k));
      row.push_back(report.mean_rho);
    }
    result.mean_rho.push_back(std::move(row));
  }
  for (std::size_t m = 0; m < metric_names.size(); ++m) {
    std::vector<double> column;
    for (const auto& row : result.mean_rho) column.push_back(row[m]);
    result.stddev.push_back(stddev(column));
  }
  return result;
}

void write_k_sweep_csv(std::ostream& out, const KSweepResult& result) {
  out << "k";
  for (const auto& m : result.metrics) out << ',' << m;
  out << '\n';
  out.precision(12);
  for (std::size_t i = 0; i < result.ks.size(); ++i) {
    out << result.ks[i];
    for (double v : result.mean_rho[i]) out << ',' << v;
    out << '\n';
  }
  out << "stddev";
  for (double v : result.stddev) out << ',' << v;
  out << '\n';
}

BenchResult context_bench(const SyntheticSuite& suite,
                          const BenchOptions& options) {
  const auto [train_contexts, test_contexts] =
      split_by_question(suite, options.train_questions);
  if (test_contexts.empty())
    throw InvariantError("context_bench: no held-out questions");
  const auto index = suite.index();

  BenchResult result;
  MetricOptions metric_options;
  metric_options.gamma = options.gamma;
  for (const auto& name :
       {"precision", "hits", "mrr", "map", "ndcg", "udcg", "udcg_rel"})
    result.reports.push_back(correlate_metric(
        name, make_scorer(name, index, metric_options), test_contexts));

  const std::pair<const char*, trainer::FeatureMode> variants[] = {
      {"udcg_theta", trainer::FeatureMode::kFull},
      {"udcg_theta_rel", trainer::FeatureMode::kRelevanceOnly},
      {"udcg_theta_binary", trainer::FeatureMode::kBinary}};
  for (const auto& [name, mode] : variants) {
    const auto examples = trainer::make_examples(train_contexts, index, mode);
    const auto trained = trainer::train(examples, options.trainer);
    MetricOptions theta_options;
    theta_options.theta = trained.theta;
    theta_options.theta_features = mode;
    result.reports.push_back(correlate_metric(
        name, make_scorer("udcg_theta", index, theta_options), test_contexts));
    if (mode == trainer::FeatureMode::kFull) {
      result.theta = trained.theta;
      result.heldout_pairwise_accuracy = trainer::pairwise_accuracy(
          trained.theta, trainer::make_examples(test_contexts, index, mode));
    }
  }
  return result;
}

}  // namespace udcg::harness
