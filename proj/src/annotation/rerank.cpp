#include "udcg/annotation/rerank.hpp"

#include <algorithm>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "udcg/core/error.hpp"

namespace udcg::annotation {

EvalContext oracle_rerank(const RankedList& ranking,
                          const AnnotationIndex& index, RerankMode mode,
                          std::size_t m, std::size_t k) {
  if (k == 0) throw InvariantError("oracle_rerank: k must be positive");
  if (m < k)
    throw InvariantError("oracle_rerank: m = " + std::to_string(m) +
                         " is smaller than k = " + std::to_string(k));
  if (ranking.entries.size() < k)
    throw InvariantError("oracle_rerank: ranking for " + ranking.question_id +
                         " has " + std::to_string(ranking.entries.size()) +
                         " entries, need " + std::to_string(k));

  struct Candidate {
    const RankedEntry* entry;
    bool relevant;
    double utility;
  };
  const auto& qid = ranking.question_id;
  const std::size_t pool = std::min(m, ranking.entries.size());
  std::vector<Candidate> candidates;
  candidates.reserve(pool);
  for (std::size_t i = 0; i < pool; ++i) {
    const auto& e = ranking.entries[i];
    const bool rel = index.relevant(qid, e.passage_id);
    const double u =
        mode == RerankMode::kUtility ? index.utility(qid, e.passage_id) : 0.0;
    candidates.push_back({&e, rel, u});
  }

  auto key = [](const Candidate& c) {
    return std::make_tuple(-c.utility, !c.relevant, -c.entry->score,
                           std::string_view(c.entry->passage_id));
  };
  std::sort(candidates.begin(), candidates.end(),
            [&](const Candidate& a, const Candidate& b) { return key(a) < key(b); });

  EvalContext ctx;
  ctx.question_id = qid;
  ctx.context_id =
      mode == RerankMode::kUtility ? "oracle-utility" : "oracle-binary";
  for (std::size_t i = 0; i < k; ++i)
    ctx.passage_ids.push_back(candidates[i].entry->passage_id);
  return ctx;
}

}  // namespace udcg::annotation
