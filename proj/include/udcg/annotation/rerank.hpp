#pragma once

#include <cstddef>

#include "udcg/core/index.hpp"
#include "udcg/core/types.hpp"

namespace udcg::annotation {

enum class RerankMode { kUtility, kBinary };

// Oracle selection of k passages out of the top m retrieved ones.
//
// kUtility orders by utility (descending), then relevant before irrelevant,
// then retrieval score (descending), then passage id. kBinary orders
// relevant before irrelevant, then by retrieval score and passage id. The
// selection order becomes the prompt order of the returned context.
EvalContext oracle_rerank(const RankedList& ranking,
                          const AnnotationIndex& index, RerankMode mode,
                          std::size_t m = 25, std::size_t k = 5);

}  // namespace udcg::annotation
