#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "udcg/core/types.hpp"

namespace udcg {

// Lookup of relevance and utility by (question id, passage id).
class AnnotationIndex {
 public:
  AnnotationIndex() = default;
  AnnotationIndex(const std::vector<UtilityAnnotation>& annotations,
                  const std::vector<RelevanceJudgment>& judgments);

  void add(const UtilityAnnotation& a);
  void add(const RelevanceJudgment& j);

  std::optional<double> find_utility(const std::string& q,
                                     const std::string& p) const;
  std::optional<bool> find_relevant(const std::string& q,
                                    const std::string& p) const;

  // Throw InvariantError naming the missing pair.
  double utility(const std::string& q, const std::string& p) const;
  bool relevant(const std::string& q, const std::string& p) const;

  std::vector<double> utilities(const EvalContext& c) const;
  std::vector<bool> relevance(const EvalContext& c) const;
  std::size_t relevant_count(const std::string& q) const;

 private:
  std::map<PairKey, double> utility_;
  std::map<PairKey, bool> relevant_;
  std::map<std::string, std::size_t> relevant_per_question_;
};

}  // namespace udcg
