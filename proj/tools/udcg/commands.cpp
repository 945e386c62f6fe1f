#include "commands.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>

#include "udcg/annotation/annotate.hpp"
#include "udcg/annotation/http_provider.hpp"
#include "udcg/annotation/prompt.hpp"
#include "udcg/annotation/rerank.hpp"
#include "udcg/core/dataset.hpp"
#include "udcg/core/error.hpp"
#include "udcg/core/index.hpp"
#include "udcg/harness/correlation.hpp"
#include "udcg/harness/experiments.hpp"
#include "udcg/harness/sampling.hpp"
#include "udcg/harness/synthetic.hpp"

namespace udcg::cli {

namespace {

const std::vector<std::string> kDefaultMetrics{"precision", "hits", "mrr",
                                               "map",       "ndcg", "udcg"};

const fs::path& require(const fs::path& path, const char* what) {
  if (path.empty()) throw InvariantError(std::string("no ") + what + " file given");
  if (!fs::is_regular_file(path))
    throw Error(std::string(what) + " file not found: " + path.string());
  return path;
}

std::ofstream open_output(const RunConfig& config, const std::string& name) {
  fs::create_directories(config.out);
  const auto path = config.out / name;
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  return out;
}

void finish(std::ofstream& out, const RunConfig& config, const std::string& name) {
  out.close();
  if (!out) throw Error("failed writing " + (config.out / name).string());
}

const std::vector<std::string>& metric_list(const RunConfig& config) {
  return config.metrics.empty() ? kDefaultMetrics : config.metrics;
}

bool wants_theta(const std::vector<std::string>& metrics) {
  return std::find(metrics.begin(), metrics.end(), "udcg_theta") != metrics.end();
}

AnnotationIndex load_index(const RunConfig& config) {
  return AnnotationIndex(
      load_jsonl<UtilityAnnotation>(require(config.annotations, "annotations")),
      load_jsonl<RelevanceJudgment>(require(config.judgments, "judgments")));
}

// Contexts must agree with --k and with theta.k when either is set.
void check_context_sizes(const std::vector<EvalContext>& contexts,
                         std::optional<std::size_t> k,
                         const std::optional<ThetaWeights>& theta) {
  for (const auto& c : contexts) {
    const auto size = c.passage_ids.size();
    if (k && size != *k)
      throw DimensionError("context (" + c.question_id + ", " + c.context_id +
                           ") has " + std::to_string(size) +
                           " passages, expected k = " + std::to_string(*k));
    if (theta && size != theta->k)
      throw DimensionError("theta has k = " + std::to_string(theta->k) +
                           " but context (" + c.question_id + ", " +
                           c.context_id + ") has " + std::to_string(size) +
                           " passages");
  }
}

harness::MetricOptions metric_options(const RunConfig& config,
                                      const std::vector<std::string>& metrics) {
  harness::MetricOptions options;
  options.gamma = config.gamma;
  options.theta_features = trainer::feature_mode_from_string(config.features);
  if (wants_theta(metrics)) {
    if (config.theta.empty())
      throw InvariantError("udcg_theta needs --theta");
    options.theta = load_theta(require(config.theta, "theta"));
  }
  return options;
}

std::vector<std::size_t> parse_ks(const std::vector<std::size_t>& ks) {
  if (!ks.empty()) return ks;
  std::vector<std::size_t> all;
  for (std::size_t k = 1; k <= 10; ++k) all.push_back(k);
  return all;
}

double parse_probability(const std::string& text) {
  std::size_t used = 0;
  double p = 0.0;
  try {
    p = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || !(p >= 0.0 && p <= 1.0))
    throw InvariantError("constant provider needs a probability in [0, 1], got '" +
                         text + "'");
  return p;
}

}  // namespace

void validate(const RunConfig& config) {
  if (config.k && *config.k == 0) throw InvariantError("k must be at least 1");
  if (!(config.gamma >= 0.0 && config.gamma <= 1.0))
    throw InvariantError("gamma must lie in [0, 1]");
  if (config.out.empty()) throw InvariantError("output directory is empty");
  for (const auto& m : config.metrics) {
    const auto& known = harness::known_metrics();
    if (std::find(known.begin(), known.end(), m) == known.end())
      throw InvariantError("unknown metric '" + m + "'");
  }
  if (config.provider.concurrency == 0)
    throw InvariantError("concurrency must be at least 1");
}

std::shared_ptr<annotation::CachingProvider> make_provider(
    const ProviderSettings& settings, const fs::path& out) {
  using namespace annotation;
  std::shared_ptr<const AbstentionProvider> inner;
  const auto& spec = settings.spec;
  if (spec.rfind("constant:", 0) == 0) {
    inner = std::make_shared<ConstantProvider>(parse_probability(spec.substr(9)));
  } else if (spec.rfind("table:", 0) == 0) {
    const fs::path path = spec.substr(6);
    inner = std::make_shared<TableProvider>(
        TableProvider::load(require(path, "provider table")));
  } else if (spec == "http") {
    HttpProviderConfig cfg;
    cfg.endpoint = settings.endpoint;
    cfg.model = settings.model;
    cfg.auth_env = settings.auth_env;
    if (settings.api_style == "openai") {
      cfg.api_style = HttpProviderConfig::ApiStyle::kOpenAi;
    } else if (settings.api_style != "generic") {
      throw InvariantError("unknown api style '" + settings.api_style + "'");
    }
    if (settings.estimator == "sampled") {
      cfg.mode = HttpProviderConfig::Mode::kSampled;
    } else if (settings.estimator != "logprobs") {
      throw InvariantError("unknown estimator '" + settings.estimator + "'");
    }
    cfg.samples = settings.samples;
    auto prompt = settings.prompt.empty()
                      ? PromptTemplate::utility_default()
                      : PromptTemplate::load(require(settings.prompt, "prompt"));
    inner = std::make_shared<HttpProvider>(cfg, std::move(prompt));
  } else if (spec.empty()) {
    throw InvariantError("no provider given (constant:<p>, table:<path>, http)");
  } else {
    throw InvariantError("unknown provider '" + spec + "'");
  }
  const auto dir = settings.cache_dir.empty() ? out / "cache" : settings.cache_dir;
  fs::create_directories(dir);
  return std::make_shared<CachingProvider>(std::move(inner), dir);
}

harness::SimLlmProfile make_profile(const SimSettings& sim, std::size_t k) {
  auto profile = harness::default_profile(k);
  if (!sim.attention.empty()) {
    if (sim.attention.size() != k)
      throw DimensionError("attention has " + std::to_string(sim.attention.size()) +
                           " values, expected k = " + std::to_string(k));
    profile.attention = sim.attention;
  }
  profile.distraction_gain = sim.gain;
  profile.aggregation = harness::aggregation_from_string(sim.aggregation);
  profile.mode = harness::sim_mode_from_string(sim.mode);
  harness::validate(profile);
  return profile;
}

AnnotateReport cmd_annotate(const RunConfig& config, std::ostream& log) {
  const auto questions = load_jsonl<Question>(require(config.questions, "questions"));
  const auto passages = load_jsonl<Passage>(require(config.passages, "passages"));
  const auto judgments =
      load_jsonl<RelevanceJudgment>(require(config.judgments, "judgments"));
  const auto provider = make_provider(config.provider, config.out);

  annotation::AnnotateOptions options;
  options.max_in_flight = config.provider.concurrency;
  const auto annotations =
      annotation::annotate(questions, passages, judgments, *provider, options);
  annotation::check_consistency(annotations, judgments);

  auto out = open_output(config, "annotations.jsonl");
  write_jsonl(out, annotations);
  finish(out, config, "annotations.jsonl");

  const auto summary = annotation::summarize(annotations, judgments);
  auto count = [&](annotation::DistractorClass c) {
    const auto it = summary.distractors.find(c);
    return it == summary.distractors.end() ? std::size_t{0} : it->second;
  };
  log << "annotations: " << summary.total << " (" << summary.relevant
      << " relevant)\n"
      << "distractors: weak " << count(annotation::DistractorClass::kWeak)
      << ", intermediate " << count(annotation::DistractorClass::kIntermediate)
      << ", hard " << count(annotation::DistractorClass::kHard) << '\n'
      << "provider calls: " << provider->misses() << '\n';
  return {annotations.size(), provider->misses()};
}

void cmd_score(const RunConfig& config, std::ostream& log) {
  const auto& metrics = metric_list(config);
  const auto options = metric_options(config, metrics);
  const auto index = load_index(config);
  const auto contexts = load_jsonl<EvalContext>(require(config.contexts, "contexts"));
  check_context_sizes(contexts, config.k, options.theta);

  std::vector<harness::ContextScorer> scorers;
  for (const auto& m : metrics) scorers.push_back(harness::make_scorer(m, index, options));

  auto out = open_output(config, "scores.csv");
  out.precision(12);
  out << "question_id,context_id";
  for (const auto& m : metrics) out << ',' << m;
  out << '\n';
  for (const auto& c : contexts) {
    out << c.question_id << ',' << c.context_id;
    for (const auto& s : scorers) out << ',' << s(c);
    out << '\n';
  }
  finish(out, config, "scores.csv");
  log << "scored " << contexts.size() << " contexts with " << metrics.size()
      << " metrics\n";
}

void cmd_correlate(const RunConfig& config, std::ostream& log) {
  const auto& metrics = metric_list(config);
  const auto options = metric_options(config, metrics);
  const auto index = load_index(config);
  const auto contexts = load_jsonl<EvalContext>(require(config.contexts, "contexts"));
  check_context_sizes(contexts, config.k, options.theta);

  std::vector<harness::CorrelationReport> reports;
  for (const auto& m : metrics)
    reports.push_back(harness::correlate_metric(
        m, harness::make_scorer(m, index, options), contexts));

  auto csv = open_output(config, "correlation.csv");
  harness::write_summary_csv(csv, reports);
  finish(csv, config, "correlation.csv");
  auto json = open_output(config, "correlation_per_question.json");
  json << harness::to_json(reports).dump(2) << '\n';
  finish(json, config, "correlation_per_question.json");

  harness::write_summary_csv(log, reports);
}

void cmd_train(const RunConfig& config, std::ostream& log) {
  const auto index = load_index(config);
  const auto mode = trainer::feature_mode_from_string(config.features);
  const auto contexts = load_jsonl<EvalContext>(require(config.contexts, "contexts"));
  check_context_sizes(contexts, config.k, std::nullopt);

  auto trainer_config = config.trainer;
  trainer_config.seed = config.seed;
  const auto examples = trainer::make_examples(contexts, index, mode);
  const auto result = trainer::train(examples, trainer_config);

  fs::create_directories(config.out);
  save_theta(config.out / "theta.json", result.theta);
  auto log_csv = open_output(config, "train_log.csv");
  trainer::write_training_log(log_csv, result.log);
  finish(log_csv, config, "train_log.csv");

  log << "examples: " << examples.size() << ", epochs: " << result.log.size()
      << (result.converged ? " (converged)" : " (epoch limit)") << '\n'
      << "train pairwise accuracy: "
      << trainer::pairwise_accuracy(result.theta, examples) << '\n';
  if (!config.heldout.empty()) {
    const auto heldout =
        load_jsonl<EvalContext>(require(config.heldout, "held-out contexts"));
    check_context_sizes(heldout, result.theta.k, std::nullopt);
    log << "held-out pairwise accuracy: "
        << trainer::pairwise_accuracy(result.theta,
                                      trainer::make_examples(heldout, index, mode))
        << '\n';
  }
}

void cmd_rerank(const RunConfig& config, std::ostream& log) {
  annotation::RerankMode mode;
  if (config.rerank_mode == "utility") {
    mode = annotation::RerankMode::kUtility;
  } else if (config.rerank_mode == "binary") {
    mode = annotation::RerankMode::kBinary;
  } else {
    throw InvariantError("unknown rerank mode '" + config.rerank_mode + "'");
  }
  const auto k = config.k.value_or(5);
  if (config.m < k)
    throw InvariantError("m = " + std::to_string(config.m) + " is smaller than k = " +
                         std::to_string(k));
  const auto index = load_index(config);
  const auto rankings = load_jsonl<RankedList>(require(config.rankings, "rankings"));

  std::vector<EvalContext> contexts;
  for (const auto& r : rankings)
    contexts.push_back(annotation::oracle_rerank(r, index, mode, config.m, k));
  auto out = open_output(config, "contexts.jsonl");
  write_jsonl(out, contexts);
  finish(out, config, "contexts.jsonl");
  log << "reranked " << contexts.size() << " questions (" << config.rerank_mode
      << ", m = " << config.m << ", k = " << k << ")\n";
}

void cmd_sample(const RunConfig& config, std::ostream& log, std::ostream& warn) {
  const auto judgments =
      load_jsonl<RelevanceJudgment>(require(config.judgments, "judgments"));
  const auto rankings = load_jsonl<RankedList>(require(config.rankings, "rankings"));
  const AnnotationIndex index({}, judgments);
  harness::SampleOptions options;
  options.n = config.n;
  options.k = config.k.value_or(5);
  options.m = config.m;
  options.seed = config.seed;

  std::vector<EvalContext> contexts;
  std::size_t flagged = 0;
  for (const auto& r : rankings) {
    auto sampled = harness::sample_contexts(r, index, options);
    if (sampled.no_relevant_in_pool) {
      ++flagged;
      warn << "warning: question " << r.question_id
           << " has no relevant passage in its top " << options.m
           << "; contexts are all irrelevant\n";
    }
    for (auto& c : sampled.contexts) contexts.push_back(std::move(c));
  }
  auto out = open_output(config, "contexts.jsonl");
  write_jsonl(out, contexts);
  finish(out, config, "contexts.jsonl");
  log << "sampled " << contexts.size() << " contexts for " << rankings.size()
      << " questions (" << flagged << " without a relevant passage)\n";
}

const std::vector<std::string>& experiments() {
  static const std::vector<std::string> names{"position_sweep", "k_sweep",
                                              "distractor_gap", "context_bench"};
  return names;
}

void cmd_simulate(const RunConfig& config, const std::string& experiment,
                  std::ostream& log) {
  const auto& names = experiments();
  if (std::find(names.begin(), names.end(), experiment) == names.end())
    throw InvariantError("unknown experiment '" + experiment + "'");
  const auto k = config.k.value_or(5);
  const auto profile = make_profile(config.sim, k);

  harness::SyntheticConfig synth;
  synth.questions = config.sim.questions;
  synth.contexts_per_question = config.sim.contexts_per_question;
  synth.k = k;
  synth.seed = config.seed;
  synth.outcome_model = profile;

  if (experiment == "position_sweep") {
    harness::SweepTrainingOptions training;
    training.seed = config.seed;
    training.trainer = config.trainer;
    training.trainer.seed = config.seed;
    const auto theta = config.theta.empty()
                           ? harness::train_sweep_theta(profile, training)
                           : load_theta(require(config.theta, "theta"));
    const auto rows = harness::position_sweep(k, 0.9, -0.5, profile, theta);
    auto out = open_output(config, "position_sweep.csv");
    harness::write_sweep_csv(out, rows);
    finish(out, config, "position_sweep.csv");
    log << "position_sweep: " << rows.size() << " rows\n";
  } else if (experiment == "distractor_gap") {
    harness::GapOptions options;
    options.gamma = config.gamma;
    const auto rows = harness::distractor_gap(profile, options);
    auto out = open_output(config, "distractor_gap.csv");
    harness::write_gap_csv(out, rows);
    finish(out, config, "distractor_gap.csv");
    for (const auto& r : rows)
      log << r.case_name << ": p_correct " << r.outcome.correct << ", udcg "
          << r.udcg << '\n';
  } else if (experiment == "k_sweep") {
    const std::vector<std::string> metrics =
        config.metrics.empty() ? std::vector<std::string>{"ndcg", "udcg"}
                               : config.metrics;
    if (wants_theta(metrics))
      throw InvariantError("k_sweep does not support udcg_theta");
    const auto result =
        harness::k_sweep(parse_ks(config.sim.ks), synth, metrics, config.gamma);
    auto out = open_output(config, "k_sweep.csv");
    harness::write_k_sweep_csv(out, result);
    finish(out, config, "k_sweep.csv");
    for (std::size_t i = 0; i < metrics.size(); ++i)
      log << metrics[i] << " stddev across k: " << result.stddev[i] << '\n';
  } else {
    if (config.sim.planted) {
      if (k != 5) throw DimensionError("the planted scorer is defined for k = 5");
      synth.outcome_model = harness::planted_u_shape();
    }
    const auto suite = harness::generate_suite(synth);
    harness::BenchOptions options;
    options.train_questions = config.sim.train_questions;
    options.gamma = config.gamma;
    options.trainer = config.trainer;
    options.trainer.seed = config.seed;
    const auto result = harness::context_bench(suite, options);

    auto csv = open_output(config, "context_bench.csv");
    harness::write_summary_csv(csv, result.reports);
    finish(csv, config, "context_bench.csv");
    auto json = open_output(config, "correlation_per_question.json");
    json << harness::to_json(result.reports).dump(2) << '\n';
    finish(json, config, "correlation_per_question.json");
    save_theta(config.out / "theta.json", result.theta);

    // The generated dataset, so other commands can be run on it.
    const auto dir = config.out / "suite";
    fs::create_directories(dir);
    save_jsonl(dir / "questions.jsonl", suite.questions);
    save_jsonl(dir / "passages.jsonl", suite.passages);
    save_jsonl(dir / "judgments.jsonl", suite.judgments);
    save_jsonl(dir / "annotations.jsonl", suite.annotations);
    save_jsonl(dir / "rankings.jsonl", suite.rankings);
    save_jsonl(dir / "contexts.jsonl", suite.contexts);

    log << "held-out pairwise accuracy: " << result.heldout_pairwise_accuracy
        << '\n';
    harness::write_summary_csv(log, result.reports);
  }
}

}  // namespace udcg::cli
