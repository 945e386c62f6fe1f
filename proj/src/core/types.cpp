#include "udcg/core/types.hpp"

#include <cmath>
#include <set>
#include <string>

#include "udcg/core/error.hpp"

namespace udcg {

namespace {

std::string pair_name(const std::string& q, const std::string& p) {
  return "(" + q + ", " + p + ")";
}

}  // namespace

std::string_view to_string(Outcome outcome) {
  switch (outcome) {
    case Outcome::kCorrect:
      return "correct";
    case Outcome::kAbstain:
      return "abstain";
    case Outcome::kWrong:
      return "wrong";
  }
  return "?";
}

Outcome outcome_from_string(std::string_view name) {
  if (name == "correct") return Outcome::kCorrect;
  if (name == "abstain") return Outcome::kAbstain;
  if (name == "wrong") return Outcome::kWrong;
  throw InvariantError("unknown outcome '" + std::string(name) + "'");
}

ThetaWeights ThetaWeights::uniform(std::size_t k, double gamma) {
  ThetaWeights t;
  t.k = k;
  t.alphas.assign(k, 1.0 / static_cast<double>(k));
  t.betas.assign(k, gamma / static_cast<double>(k));
  return t;
}

void validate(const Question& q) {
  if (q.id.empty()) throw InvariantError("question with empty id");
  if (q.reference_answers.empty())
    throw InvariantError("question " + q.id + " has no reference answer");
}

void validate(const Passage& p) {
  if (p.id.empty()) throw InvariantError("passage with empty id");
}

void validate(const RelevanceJudgment& j) {
  if (j.question_id.empty() || j.passage_id.empty())
    throw InvariantError("judgment with empty id " +
                         pair_name(j.question_id, j.passage_id));
}

void validate(const UtilityAnnotation& a) {
  const auto name = pair_name(a.question_id, a.passage_id);
  if (a.question_id.empty() || a.passage_id.empty())
    throw InvariantError("annotation with empty id " + name);
  if (!(a.p_no_response >= 0.0 && a.p_no_response <= 1.0))
    throw InvariantError("annotation " + name +
                         ": p_no_response outside [0,1]");
  if (!(std::fabs(a.utility) <= 1.0))
    throw InvariantError("annotation " + name + ": |utility| > 1");
  if (std::fabs(std::fabs(a.utility) - (1.0 - a.p_no_response)) >
      kUtilityTolerance)
    throw InvariantError("annotation " + name +
                         ": |utility| != 1 - p_no_response");
}

void validate(const RankedList& r) {
  if (r.question_id.empty()) throw InvariantError("ranking with empty id");
  std::set<std::string> seen;
  for (std::size_t i = 0; i < r.entries.size(); ++i) {
    const auto& e = r.entries[i];
    if (!seen.insert(e.passage_id).second)
      throw InvariantError("ranking " + r.question_id +
                           ": duplicate passage " + e.passage_id);
    if (!std::isfinite(e.score))
      throw InvariantError("ranking " + r.question_id +
                           ": non-finite score for " + e.passage_id);
    if (i > 0 && e.score > r.entries[i - 1].score)
      throw InvariantError("ranking " + r.question_id +
                           ": scores not descending at " + e.passage_id);
  }
}

void validate(const EvalContext& c) {
  const auto name = pair_name(c.question_id, c.context_id);
  if (c.question_id.empty() || c.context_id.empty())
    throw InvariantError("context with empty id " + name);
  if (c.passage_ids.empty())
    throw InvariantError("context " + name + " has no passages");
  std::set<std::string> seen;
  for (const auto& pid : c.passage_ids)
    if (!seen.insert(pid).second)
      throw InvariantError("context " + name + ": duplicate passage " + pid);
}

void validate(const ThetaWeights& t) {
  if (t.k == 0) throw InvariantError("theta with k = 0");
  if (t.alphas.size() != t.k || t.betas.size() != t.k)
    throw InvariantError("theta: expected " + std::to_string(t.k) +
                         " alphas and betas");
  for (std::size_t i = 0; i < t.k; ++i)
    if (!std::isfinite(t.alphas[i]) || !std::isfinite(t.betas[i]))
      throw InvariantError("theta: non-finite weight");
}

}  // namespace udcg
