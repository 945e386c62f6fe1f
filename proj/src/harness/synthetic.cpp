#include "udcg/harness/synthetic.hpp"

#include <cstdio>
#include <random>
#include <set>
#include <string>

#include "udcg/annotation/utility.hpp"
#include "udcg/core/error.hpp"
#include "udcg/core/hash.hpp"
#include "udcg/harness/sampling.hpp"
#include "udcg/trainer/trainer.hpp"

namespace udcg::harness {

namespace {

std::string question_id(std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "q%05zu", i);
  return buf;
}

Outcome planted_outcome(const PlantedScorer& planted,
                        const metrics::ContextUtilities& u) {
  const double s =
      trainer::linear_score(planted.theta, trainer::build_features(u));
  if (s > planted.correct_above) return Outcome::kCorrect;
  if (s < planted.wrong_below) return Outcome::kWrong;
  return Outcome::kAbstain;
}

}  // namespace

PlantedScorer planted_u_shape() {
  PlantedScorer p;
  p.theta.k = 5;
  p.theta.alphas = {1.0, 0.5, 0.2, 0.5, 1.0};
  p.theta.betas = {1.0, 0.6, 0.3, 0.6, 1.0};
  p.correct_above = 0.25;
  p.wrong_below = -0.75;
  return p;
}

SyntheticSuite generate_suite(const SyntheticConfig& config) {
  if (config.k == 0 || config.pool < config.k || config.questions == 0 ||
      config.contexts_per_question == 0)
    throw InvariantError("synthetic suite: invalid sizes");
  if (config.max_relevant == 0 || config.max_relevant + config.k > config.pool)
    throw InvariantError("synthetic suite: pool too small for max_relevant");
  if (const auto* profile = std::get_if<SimLlmProfile>(&config.outcome_model)) {
    validate(*profile);
    if (profile->k() != config.k)
      throw DimensionError("synthetic suite: profile k differs from k");
  } else {
    const auto& planted = std::get<PlantedScorer>(config.outcome_model);
    validate(planted.theta);
    if (planted.theta.k != config.k)
      throw DimensionError("synthetic suite: planted theta k differs from k");
  }

  SyntheticSuite suite;
  for (std::size_t qi = 0; qi < config.questions; ++qi) {
    const std::string qid = question_id(qi);
    std::mt19937_64 rng(derive_seed(config.seed, qid + "/pool"));
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    suite.questions.push_back({qid, "synthetic question " + qid,
                               {"answer to " + qid}});

    std::size_t n_relevant = 0;
    if (unit(rng) >= config.no_relevant_rate)
      n_relevant = std::uniform_int_distribution<std::size_t>(
          1, config.max_relevant)(rng);
    // Positions of the relevant passages inside the retrieved pool.
    std::set<std::size_t> relevant_slots;
    while (relevant_slots.size() < n_relevant)
      relevant_slots.insert(
          std::uniform_int_distribution<std::size_t>(0, config.pool - 1)(rng));
    if (n_relevant == 0) ++suite.questions_without_relevant;

    RankedList ranking{qid, {}};
    for (std::size_t j = 0; j < config.pool; ++j) {
      const std::string pid = qid + "-p" + std::to_string(j);
      const bool relevant = relevant_slots.count(j) > 0;
      double effect;
      if (relevant) {
        effect = config.relevant_utility_min +
                 (1.0 - config.relevant_utility_min) * unit(rng);
      } else {
        const double pick = unit(rng);
        if (pick < config.weak_share)
          effect = annotation::kWeakDistractorMax * unit(rng);
        else if (pick < config.weak_share + config.hard_share)
          effect = annotation::kHardDistractorMin +
                   (1.0 - annotation::kHardDistractorMin) * unit(rng);
        else
          effect = annotation::kWeakDistractorMax +
                   (annotation::kHardDistractorMin -
                    annotation::kWeakDistractorMax) *
                       unit(rng);
      }
      const double p_no_response = 1.0 - effect;
      suite.passages.push_back({pid, "synthetic passage " + pid});
      suite.judgments.push_back({qid, pid, relevant});
      suite.annotations.push_back(
          {qid, pid, p_no_response, annotation::utility(relevant, p_no_response)});
      ranking.entries.push_back(
          {pid, static_cast<double>(config.pool - j)});
    }
    suite.rankings.push_back(std::move(ranking));
  }

  const AnnotationIndex index = suite.index();
  SampleOptions options;
  options.n = config.contexts_per_question;
  options.k = config.k;
  options.m = config.pool;
  options.seed = config.seed;
  for (const auto& ranking : suite.rankings) {
    auto sampled = sample_contexts(ranking, index, options);
    std::mt19937_64 rng(derive_seed(config.seed, ranking.question_id + "/outcome"));
    for (auto& ctx : sampled.contexts) {
      const metrics::ContextUtilities u(index.utilities(ctx));
      if (const auto* profile =
              std::get_if<SimLlmProfile>(&config.outcome_model)) {
        ctx.outcome =
            draw_outcome(simulate_outcome(u, index.relevance(ctx), *profile),
                         *profile, rng);
      } else {
        ctx.outcome =
            planted_outcome(std::get<PlantedScorer>(config.outcome_model), u);
      }
      suite.contexts.push_back(std::move(ctx));
    }
  }
  return suite;
}

std::pair<std::vector<EvalContext>, std::vector<EvalContext>> split_by_question(
    const SyntheticSuite& suite, std::size_t train_questions) {
  std::set<std::string> train_ids;
  for (std::size_t i = 0; i < train_questions && i < suite.questions.size(); ++i)
    train_ids.insert(suite.questions[i].id);
  std::pair<std::vector<EvalContext>, std::vector<EvalContext>> out;
  for (const auto& c : suite.contexts)
    (train_ids.count(c.question_id) ? out.first : out.second).push_back(c);
  return out;
}

}  // namespace udcg::harness
