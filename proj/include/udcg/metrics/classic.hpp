#pragma once

// Traditional IR metrics at cutoff k = length of the gain vector.
// Binary-only metrics (precision, hits, reciprocal rank, average precision)
// reject gains outside {0, 1}; dcg/ndcg accept any non-negative grade.

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace udcg::metrics {

class RelevanceVector {
 public:
  // Throws InvariantError on an empty vector or a negative/non-finite gain.
  explicit RelevanceVector(std::vector<double> gains);
  RelevanceVector(std::initializer_list<double> gains)
      : RelevanceVector(std::vector<double>(gains)) {}

  static RelevanceVector binary(const std::vector<bool>& relevant);

  std::size_t k() const { return gains_.size(); }
  std::span<const double> gains() const { return gains_; }
  double operator[](std::size_t i) const { return gains_[i]; }
  bool is_binary() const;
  std::size_t hits() const;  // number of nonzero gains

 private:
  std::vector<double> gains_;
};

double precision_at_k(const RelevanceVector& rels);
int hits_at_k(const RelevanceVector& rels);
// 0 when nothing is relevant.
double reciprocal_rank(const RelevanceVector& rels);
// (1/r_total) * sum_i P@i * r(i). r_total = 0 with no hits yields 0.
double average_precision(const RelevanceVector& rels, std::size_t r_total);
// Average precision with the corpus-level relevant count clipped to k.
double average_precision_at_cutoff(const RelevanceVector& rels,
                                   std::size_t corpus_relevant);
double dcg(const RelevanceVector& rels);
// 0 when the ideal DCG is 0.
double ndcg(const RelevanceVector& rels);

}  // namespace udcg::metrics
