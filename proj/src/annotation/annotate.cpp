#include "udcg/annotation/annotate.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <thread>
#include <unordered_map>

#include "udcg/core/error.hpp"

namespace udcg::annotation {

namespace {

std::string pair_name(const RelevanceJudgment& j) {
  return "(" + j.question_id + ", " + j.passage_id + ")";
}

double query_with_retries(const AbstentionProvider& provider,
                          const Question& q, const Passage& p,
                          const RelevanceJudgment& j,
                          const AnnotateOptions& options) {
  for (int attempt = 0;; ++attempt) {
    try {
      return provider.p_no_response(q, p);
    } catch (const ProviderError& e) {
      if (!e.retryable() || attempt >= options.max_retries)
        throw ProviderError("provider failed for " + pair_name(j) + ": " +
                                e.what(),
                            e.retryable());
      std::this_thread::sleep_for(options.backoff * (1 << attempt));
    }
  }
}

}  // namespace

std::vector<UtilityAnnotation> annotate(
    const std::vector<Question>& questions,
    const std::vector<Passage>& passages,
    const std::vector<RelevanceJudgment>& judgments,
    const AbstentionProvider& provider, const AnnotateOptions& options) {
  std::unordered_map<std::string, const Question*> qs;
  std::unordered_map<std::string, const Passage*> ps;
  for (const auto& q : questions) qs.emplace(q.id, &q);
  for (const auto& p : passages) ps.emplace(p.id, &p);

  struct Job {
    const Question* q;
    const Passage* p;
  };
  std::vector<Job> jobs;
  jobs.reserve(judgments.size());
  for (const auto& j : judgments) {
    auto qi = qs.find(j.question_id);
    auto pi = ps.find(j.passage_id);
    if (qi == qs.end())
      throw InvariantError("judgment " + pair_name(j) +
                           " references unknown question");
    if (pi == ps.end())
      throw InvariantError("judgment " + pair_name(j) +
                           " references unknown passage");
    jobs.push_back({qi->second, pi->second});
  }

  std::vector<UtilityAnnotation> out(judgments.size());
  std::vector<std::exception_ptr> errors(judgments.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  const Estimator estimator = provider.estimator();

  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size() && !failed; i = next++) {
      const auto& j = judgments[i];
      try {
        const double p = query_with_retries(provider, *jobs[i].q, *jobs[i].p,
                                            j, options);
        if (!(p >= 0.0 && p <= 1.0))
          throw ProviderError("provider returned p_no_response " +
                                  std::to_string(p) + " for " + pair_name(j),
                              false);
        out[i] = {j.question_id, j.passage_id, p, utility(j.relevant, p),
                  estimator};
      } catch (...) {
        errors[i] = std::current_exception();
        failed = true;
      }
    }
  };

  const std::size_t threads =
      std::max<std::size_t>(1, std::min(options.max_in_flight, jobs.size()));
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

void check_consistency(const std::vector<UtilityAnnotation>& annotations,
                       const std::vector<RelevanceJudgment>& judgments) {
  std::map<PairKey, bool> relevant;
  for (const auto& j : judgments) relevant[{j.question_id, j.passage_id}] = j.relevant;
  for (const auto& a : annotations) {
    auto it = relevant.find({a.question_id, a.passage_id});
    if (it == relevant.end()) continue;
    const double expected = utility(it->second, a.p_no_response);
    if (std::fabs(expected - a.utility) > kUtilityTolerance ||
        (a.utility != 0.0 && (a.utility > 0.0) != it->second))
      throw InvariantError("annotation (" + a.question_id + ", " +
                           a.passage_id +
                           ") disagrees with its relevance judgment");
  }
}

AnnotationSummary summarize(const std::vector<UtilityAnnotation>& annotations,
                            const std::vector<RelevanceJudgment>& judgments) {
  std::map<PairKey, bool> relevant;
  for (const auto& j : judgments) relevant[{j.question_id, j.passage_id}] = j.relevant;
  AnnotationSummary s;
  s.distractors = {{DistractorClass::kWeak, 0},
                   {DistractorClass::kIntermediate, 0},
                   {DistractorClass::kHard, 0}};
  for (const auto& a : annotations) {
    ++s.total;
    auto it = relevant.find({a.question_id, a.passage_id});
    const bool is_relevant =
        it != relevant.end() ? it->second : a.utility > 0.0;
    if (is_relevant)
      ++s.relevant;
    else
      ++s.distractors[classify_distractor(a.utility)];
  }
  return s;
}

}  // namespace udcg::annotation
