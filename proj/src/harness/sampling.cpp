#include "udcg/harness/sampling.hpp"

#include <algorithm>
#include <random>

#include "udcg/core/error.hpp"
#include "udcg/core/hash.hpp"

namespace udcg::harness {

namespace {

// k distinct picks from `pool`, in random order.
std::vector<std::string> draw(std::vector<std::string> pool, std::size_t k,
                              std::mt19937_64& rng) {
  for (std::size_t i = 0; i < k; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, pool.size() - 1);
    std::swap(pool[i], pool[pick(rng)]);
  }
  pool.resize(k);
  return pool;
}

}  // namespace

SampledContexts sample_contexts(const RankedList& ranking,
                                const AnnotationIndex& judgments,
                                const SampleOptions& options) {
  const auto& qid = ranking.question_id;
  if (options.k == 0 || options.n == 0)
    throw InvariantError("sample_contexts: n and k must be positive");
  const std::size_t depth = std::min(options.m, ranking.entries.size());
  if (depth < options.k)
    throw InvariantError("sample_contexts: question " + qid + " has " +
                         std::to_string(depth) + " candidates, need k = " +
                         std::to_string(options.k));

  std::vector<std::string> relevant, irrelevant, all;
  for (std::size_t i = 0; i < depth; ++i) {
    const auto& pid = ranking.entries[i].passage_id;
    (judgments.relevant(qid, pid) ? relevant : irrelevant).push_back(pid);
    all.push_back(pid);
  }

  SampledContexts out;
  out.no_relevant_in_pool = relevant.empty();
  const std::size_t with_relevant =
      out.no_relevant_in_pool ? 0 : (options.n + 1) / 2;
  const std::size_t without = options.n - with_relevant;
  if (without > 0 && irrelevant.size() < options.k)
    throw InvariantError("sample_contexts: question " + qid + " has only " +
                         std::to_string(irrelevant.size()) +
                         " irrelevant passages, need " +
                         std::to_string(options.k));

  std::mt19937_64 rng(derive_seed(options.seed, qid));
  for (std::size_t c = 0; c < options.n; ++c) {
    EvalContext ctx;
    ctx.question_id = qid;
    ctx.context_id = qid + "-c" + std::to_string(c);
    if (c < with_relevant) {
      std::uniform_int_distribution<std::size_t> pick(0, relevant.size() - 1);
      const std::string anchor = relevant[pick(rng)];
      std::vector<std::string> rest;
      rest.reserve(all.size() - 1);
      for (const auto& pid : all)
        if (pid != anchor) rest.push_back(pid);
      ctx.passage_ids = draw(std::move(rest), options.k - 1, rng);
      ctx.passage_ids.push_back(anchor);
      std::shuffle(ctx.passage_ids.begin(), ctx.passage_ids.end(), rng);
    } else {
      ctx.passage_ids = draw(irrelevant, options.k, rng);
    }
    out.contexts.push_back(std::move(ctx));
  }
  return out;
}

}  // namespace udcg::harness
