#include "udcg/metrics/classic.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "udcg/core/error.hpp"

namespace udcg::metrics {

namespace {

void require_binary(const RelevanceVector& rels, const char* metric) {
  if (!rels.is_binary())
    throw InvariantError(std::string(metric) + " requires binary gains");
}

double discounted_sum(std::span<const double> gains) {
  double sum = 0.0;
  for (std::size_t i = 0; i < gains.size(); ++i)
    sum += gains[i] / std::log2(static_cast<double>(i) + 2.0);
  return sum;
}

}  // namespace

RelevanceVector::RelevanceVector(std::vector<double> gains)
    : gains_(std::move(gains)) {
  if (gains_.empty()) throw InvariantError("relevance vector with k = 0");
  for (double g : gains_)
    if (!(g >= 0.0) || !std::isfinite(g))
      throw InvariantError("gain must be finite and non-negative");
}

RelevanceVector RelevanceVector::binary(const std::vector<bool>& relevant) {
  std::vector<double> gains(relevant.size());
  std::transform(relevant.begin(), relevant.end(), gains.begin(),
                 [](bool r) { return r ? 1.0 : 0.0; });
  return RelevanceVector(std::move(gains));
}

bool RelevanceVector::is_binary() const {
  return std::all_of(gains_.begin(), gains_.end(),
                     [](double g) { return g == 0.0 || g == 1.0; });
}

std::size_t RelevanceVector::hits() const {
  return static_cast<std::size_t>(
      std::count_if(gains_.begin(), gains_.end(), [](double g) { return g > 0; }));
}

double precision_at_k(const RelevanceVector& rels) {
  require_binary(rels, "precision");
  return static_cast<double>(rels.hits()) / static_cast<double>(rels.k());
}

int hits_at_k(const RelevanceVector& rels) {
  require_binary(rels, "hits");
  return rels.hits() > 0 ? 1 : 0;
}

double reciprocal_rank(const RelevanceVector& rels) {
  require_binary(rels, "reciprocal rank");
  for (std::size_t i = 0; i < rels.k(); ++i)
    if (rels[i] == 1.0) return 1.0 / static_cast<double>(i + 1);
  return 0.0;
}

double average_precision(const RelevanceVector& rels, std::size_t r_total) {
  require_binary(rels, "average precision");
  const auto hits = rels.hits();
  if (r_total < hits)
    throw InvariantError("average precision: r_total " +
                         std::to_string(r_total) + " < " +
                         std::to_string(hits) + " relevant in list");
  if (r_total == 0) return 0.0;
  double sum = 0.0;
  std::size_t seen = 0;
  for (std::size_t i = 0; i < rels.k(); ++i) {
    if (rels[i] != 1.0) continue;
    ++seen;
    sum += static_cast<double>(seen) / static_cast<double>(i + 1);
  }
  return sum / static_cast<double>(r_total);
}

double average_precision_at_cutoff(const RelevanceVector& rels,
                                   std::size_t corpus_relevant) {
  return average_precision(rels, std::min(corpus_relevant, rels.k()));
}

double dcg(const RelevanceVector& rels) { return discounted_sum(rels.gains()); }

double ndcg(const RelevanceVector& rels) {
  std::vector<double> ideal(rels.gains().begin(), rels.gains().end());
  std::sort(ideal.begin(), ideal.end(), std::greater<>());
  const double idcg = discounted_sum(ideal);
  if (idcg == 0.0) return 0.0;
  return discounted_sum(rels.gains()) / idcg;
}

}  // namespace udcg::metrics
