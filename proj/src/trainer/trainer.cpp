#include "udcg/trainer/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <ostream>
#include <random>

#include "udcg/core/error.hpp"

namespace udcg::trainer {

namespace {

// Indices of examples grouped by question id, groups in order of first
// appearance.
std::vector<std::vector<std::size_t>> group_by_question(
    const std::vector<TrainExample>& examples) {
  std::map<std::string, std::size_t> slot;
  std::vector<std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < examples.size(); ++i) {
    auto [it, inserted] = slot.emplace(examples[i].question_id, groups.size());
    if (inserted) groups.emplace_back();
    groups[it->second].push_back(i);
  }
  return groups;
}

struct OrderedPair {
  std::size_t better;
  std::size_t worse;
};

std::vector<OrderedPair> ordered_pairs(
    const std::vector<TrainExample>& examples) {
  std::vector<OrderedPair> pairs;
  for (const auto& group : group_by_question(examples)) {
    for (std::size_t a = 0; a < group.size(); ++a) {
      for (std::size_t b = a + 1; b < group.size(); ++b) {
        const auto& x = examples[group[a]];
        const auto& y = examples[group[b]];
        if (x.target > y.target)
          pairs.push_back({group[a], group[b]});
        else if (y.target > x.target)
          pairs.push_back({group[b], group[a]});
      }
    }
  }
  return pairs;
}

double dot(std::span<const double> a, std::span<const double> b) {
  return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

ThetaWeights to_theta(const std::vector<double>& w) {
  const std::size_t k = w.size() / 2;
  ThetaWeights t;
  t.k = k;
  t.alphas.assign(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(k));
  t.betas.assign(w.begin() + static_cast<std::ptrdiff_t>(k), w.end());
  return t;
}

double accuracy_of(std::span<const double> scores,
                   const std::vector<OrderedPair>& pairs) {
  double agree = 0.0;
  for (const auto& p : pairs) {
    if (scores[p.better] > scores[p.worse])
      agree += 1.0;
    else if (scores[p.better] == scores[p.worse])
      agree += 0.5;
  }
  return agree / static_cast<double>(pairs.size());
}

}  // namespace

FeatureMode feature_mode_from_string(std::string_view name) {
  if (name == "full") return FeatureMode::kFull;
  if (name == "rel-only") return FeatureMode::kRelevanceOnly;
  if (name == "binary") return FeatureMode::kBinary;
  throw InvariantError("unknown feature mode '" + std::string(name) + "'");
}

std::string_view to_string(FeatureMode mode) {
  switch (mode) {
    case FeatureMode::kFull:
      return "full";
    case FeatureMode::kRelevanceOnly:
      return "rel-only";
    case FeatureMode::kBinary:
      return "binary";
  }
  return "?";
}

std::vector<double> build_features(const metrics::ContextUtilities& u) {
  auto parts = metrics::split_parts(u);
  auto& out = parts.positives;
  out.insert(out.end(), parts.negatives.begin(), parts.negatives.end());
  return std::move(out);
}

std::vector<double> build_features(const metrics::ContextUtilities& u,
                                   const std::vector<bool>& relevant,
                                   FeatureMode mode) {
  if (relevant.size() != u.k())
    throw DimensionError("relevance flags and utilities differ in length");
  auto x = build_features(u);
  const std::size_t k = u.k();
  if (mode == FeatureMode::kBinary)
    for (std::size_t i = 0; i < k; ++i) x[i] = relevant[i] ? 1.0 : 0.0;
  if (mode != FeatureMode::kFull) std::fill(x.begin() + k, x.end(), 0.0);
  return x;
}

std::vector<TrainExample> make_examples(const std::vector<EvalContext>& contexts,
                                        const AnnotationIndex& index,
                                        FeatureMode mode) {
  std::vector<TrainExample> out;
  out.reserve(contexts.size());
  for (const auto& c : contexts) {
    if (!c.outcome)
      throw InvariantError("context (" + c.question_id + ", " + c.context_id +
                           ") has no outcome");
    const metrics::ContextUtilities u(index.utilities(c));
    auto x = mode == FeatureMode::kFull
                 ? build_features(u)
                 : build_features(u, index.relevance(c), mode);
    out.push_back({c.question_id, std::move(x), ordinal(*c.outcome)});
  }
  return out;
}

double linear_score(const ThetaWeights& theta,
                    std::span<const double> features) {
  if (features.size() != 2 * theta.k)
    throw DimensionError("feature vector of length " +
                         std::to_string(features.size()) + " for theta k = " +
                         std::to_string(theta.k));
  double s = 0.0;
  for (std::size_t i = 0; i < theta.k; ++i)
    s += theta.alphas[i] * features[i] + theta.betas[i] * features[theta.k + i];
  return s;
}

TrainResult train(const std::vector<TrainExample>& examples,
                  const TrainerConfig& config) {
  if (!(config.regularization_c > 0.0) || !(config.learning_rate > 0.0) ||
      config.max_epochs <= 0 || !(config.margin > 0.0) ||
      !(config.tolerance >= 0.0))
    throw InvariantError("invalid trainer configuration");
  if (examples.empty()) throw InvariantError("no training examples");
  const std::size_t dim = examples.front().features.size();
  if (dim == 0 || dim % 2 != 0)
    throw DimensionError("feature vectors must have even, positive length");
  for (const auto& e : examples)
    if (e.features.size() != dim)
      throw DimensionError("example of question " + e.question_id +
                           " has a different feature length");

  const auto pairs = ordered_pairs(examples);
  if (pairs.empty())
    throw InvariantError("no orderable pair: every question group has "
                         "identical targets");

  // Difference vectors, one row per pair.
  std::vector<double> diffs(pairs.size() * dim);
  for (std::size_t p = 0; p < pairs.size(); ++p)
    for (std::size_t d = 0; d < dim; ++d)
      diffs[p * dim + d] = examples[pairs[p].better].features[d] -
                           examples[pairs[p].worse].features[d];
  auto row = [&](std::size_t p) {
    return std::span<const double>(diffs.data() + p * dim, dim);
  };

  const double lambda = config.regularization_c;
  const double margin = config.margin;
  auto objective = [&](const std::vector<double>& w) {
    double hinge = 0.0;
    for (std::size_t p = 0; p < pairs.size(); ++p)
      hinge += std::max(0.0, margin - dot(w, row(p))) / margin;
    return 0.5 * lambda * dot(w, w) + hinge / static_cast<double>(pairs.size());
  };

  std::vector<double> w(dim, 0.0);
  std::vector<std::size_t> order(pairs.size());
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(config.seed);
  std::vector<double> scores(examples.size());

  TrainResult result;
  double previous = objective(w);
  for (int epoch = 1; epoch <= config.max_epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    const double eta = config.learning_rate / std::sqrt(static_cast<double>(epoch));
    const double shrink = 1.0 - eta * lambda;
    for (std::size_t p : order) {
      const auto d = row(p);
      const bool active = margin - dot(w, d) > 0.0;
      for (std::size_t i = 0; i < dim; ++i) {
        w[i] *= shrink;
        if (active) w[i] += eta * d[i] / margin;
      }
    }

    const double loss = objective(w);
    if (!std::isfinite(loss))
      throw Error("training diverged at epoch " + std::to_string(epoch));
    for (std::size_t i = 0; i < examples.size(); ++i)
      scores[i] = dot(w, examples[i].features);
    result.log.push_back({epoch, loss, accuracy_of(scores, pairs)});

    if (std::fabs(previous - loss) <=
        config.tolerance * std::max(std::fabs(previous), 1e-300)) {
      result.converged = true;
      break;
    }
    previous = loss;
  }
  result.theta = to_theta(w);
  return result;
}

double pairwise_accuracy(const ThetaWeights& theta,
                         const std::vector<TrainExample>& examples) {
  const auto pairs = ordered_pairs(examples);
  if (pairs.empty()) throw InvariantError("no orderable pair to evaluate");
  std::vector<double> scores(examples.size());
  for (std::size_t i = 0; i < examples.size(); ++i)
    scores[i] = linear_score(theta, examples[i].features);
  return accuracy_of(scores, pairs);
}

void write_training_log(std::ostream& out, const std::vector<EpochLog>& log) {
  out << "epoch,loss,pairwise_accuracy\n";
  out.precision(17);
  for (const auto& e : log)
    out << e.epoch << ',' << e.loss << ',' << e.pairwise_accuracy << '\n';
}

}  // namespace udcg::trainer
