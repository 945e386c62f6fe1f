#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace udcg {

struct Question {
  std::string id;
  std::string text;
  std::vector<std::string> reference_answers;
};

struct Passage {
  std::string id;
  std::string text;
};

struct RelevanceJudgment {
  std::string question_id;
  std::string passage_id;
  bool relevant = false;
};

// How p_no_response was estimated. Only non-default values are serialized.
enum class Estimator { kFirstTokenLogprobs, kSampledFrequency };

struct UtilityAnnotation {
  std::string question_id;
  std::string passage_id;
  double p_no_response = 1.0;
  double utility = 0.0;
  Estimator estimator = Estimator::kFirstTokenLogprobs;
};

struct RankedEntry {
  std::string passage_id;
  double score = 0.0;
};

// Retrieval output for one question, best first.
struct RankedList {
  std::string question_id;
  std::vector<RankedEntry> entries;
};

enum class Outcome { kWrong = 0, kAbstain = 1, kCorrect = 2 };

std::string_view to_string(Outcome outcome);
Outcome outcome_from_string(std::string_view name);

// Ordinal used by the ideal context ranking: correct > abstain > wrong.
inline int ordinal(Outcome outcome) { return static_cast<int>(outcome); }

// k passages in prompt order (index 0 is position 1).
struct EvalContext {
  std::string question_id;
  std::string context_id;
  std::vector<std::string> passage_ids;
  std::optional<Outcome> outcome;

  std::size_t k() const { return passage_ids.size(); }
};

// Positional weights of the learnable metric: alphas scale the positive
// utility parts, betas the negative parts.
struct ThetaWeights {
  std::size_t k = 0;
  std::vector<double> alphas;
  std::vector<double> betas;

  static ThetaWeights uniform(std::size_t k, double gamma);
};

using PairKey = std::pair<std::string, std::string>;

// Invariant checks. Each throws InvariantError naming the offending ids.
void validate(const Question& q);
void validate(const Passage& p);
void validate(const RelevanceJudgment& j);
void validate(const UtilityAnnotation& a);
void validate(const RankedList& r);
void validate(const EvalContext& c);
void validate(const ThetaWeights& t);

// Tolerance used when checking |utility| == 1 - p_no_response on data read
// from disk.
inline constexpr double kUtilityTolerance = 1e-12;

}  // namespace udcg
