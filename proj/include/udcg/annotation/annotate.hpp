#pragma once

#include <chrono>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "udcg/annotation/provider.hpp"
#include "udcg/annotation/utility.hpp"
#include "udcg/core/types.hpp"

namespace udcg::annotation {

struct AnnotateOptions {
  std::size_t max_in_flight = 1;
  // Extra attempts after a retryable provider failure.
  int max_retries = 2;
  // Sleep before retry n is backoff * 2^n.
  std::chrono::milliseconds backoff{200};
};

// One annotation per judgment, in judgment order. The provider is called
// exactly once per judged pair. Failures are rethrown as ProviderError with
// the pair named in the message.
std::vector<UtilityAnnotation> annotate(
    const std::vector<Question>& questions,
    const std::vector<Passage>& passages,
    const std::vector<RelevanceJudgment>& judgments,
    const AbstentionProvider& provider, const AnnotateOptions& options = {});

// Checks utility == R * (1 - p_no_response) for every annotation with a
// judgment. Throws InvariantError naming the first inconsistent pair.
void check_consistency(const std::vector<UtilityAnnotation>& annotations,
                       const std::vector<RelevanceJudgment>& judgments);

struct AnnotationSummary {
  std::size_t total = 0;
  std::size_t relevant = 0;
  std::map<DistractorClass, std::size_t> distractors;
};

AnnotationSummary summarize(const std::vector<UtilityAnnotation>& annotations,
                            const std::vector<RelevanceJudgment>& judgments);

}  // namespace udcg::annotation
