#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "udcg/core/index.hpp"
#include "udcg/core/types.hpp"

namespace udcg::harness {

struct SampleOptions {
  std::size_t n = 10;  // contexts per question
  std::size_t k = 5;   // passages per context
  std::size_t m = 25;  // retrieval depth the passages are drawn from
  std::uint64_t seed = 0;
};

struct SampledContexts {
  std::vector<EvalContext> contexts;
  // Set when the top m hold no relevant passage: every context is then
  // irrelevant-only.
  bool no_relevant_in_pool = false;
};

// Draws n contexts of k distinct passages from the top m of `ranking`.
// ceil(n/2) contexts hold at least one relevant passage (one relevant
// passage is drawn first, the remaining k-1 uniformly from the rest of the
// pool) and floor(n/2) hold only irrelevant ones. Passage order inside a
// context is random. The generator is seeded from `seed` and the question
// id. Context ids are "<question>-c<i>".
SampledContexts sample_contexts(const RankedList& ranking,
                                const AnnotationIndex& judgments,
                                const SampleOptions& options);

}  // namespace udcg::harness
