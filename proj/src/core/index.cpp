#include "udcg/core/index.hpp"

#include "udcg/core/error.hpp"

namespace udcg {

AnnotationIndex::AnnotationIndex(
    const std::vector<UtilityAnnotation>& annotations,
    const std::vector<RelevanceJudgment>& judgments) {
  for (const auto& a : annotations) add(a);
  for (const auto& j : judgments) add(j);
}

void AnnotationIndex::add(const UtilityAnnotation& a) {
  utility_[{a.question_id, a.passage_id}] = a.utility;
}

void AnnotationIndex::add(const RelevanceJudgment& j) {
  auto [it, inserted] = relevant_.insert_or_assign({j.question_id, j.passage_id}, j.relevant);
  (void)it;
  if (inserted && j.relevant) ++relevant_per_question_[j.question_id];
}

std::optional<double> AnnotationIndex::find_utility(const std::string& q,
                                                    const std::string& p) const {
  auto it = utility_.find({q, p});
  if (it == utility_.end()) return std::nullopt;
  return it->second;
}

std::optional<bool> AnnotationIndex::find_relevant(const std::string& q,
                                                   const std::string& p) const {
  auto it = relevant_.find({q, p});
  if (it == relevant_.end()) return std::nullopt;
  return it->second;
}

double AnnotationIndex::utility(const std::string& q,
                                const std::string& p) const {
  if (auto u = find_utility(q, p)) return *u;
  throw InvariantError("no utility annotation for (" + q + ", " + p + ")");
}

bool AnnotationIndex::relevant(const std::string& q,
                               const std::string& p) const {
  if (auto r = find_relevant(q, p)) return *r;
  throw InvariantError("no relevance judgment for (" + q + ", " + p + ")");
}

std::vector<double> AnnotationIndex::utilities(const EvalContext& c) const {
  std::vector<double> out;
  out.reserve(c.k());
  for (const auto& pid : c.passage_ids) out.push_back(utility(c.question_id, pid));
  return out;
}

std::vector<bool> AnnotationIndex::relevance(const EvalContext& c) const {
  std::vector<bool> out;
  out.reserve(c.k());
  for (const auto& pid : c.passage_ids) out.push_back(relevant(c.question_id, pid));
  return out;
}

std::size_t AnnotationIndex::relevant_count(const std::string& q) const {
  auto it = relevant_per_question_.find(q);
  return it == relevant_per_question_.end() ? 0 : it->second;
}

}  // namespace udcg
