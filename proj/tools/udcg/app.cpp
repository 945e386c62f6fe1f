#include "app.hpp"

#include <algorithm>
#include <ostream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "udcg/annotation/provider.hpp"
#include "udcg/core/error.hpp"

namespace udcg::cli {

namespace {

// Raised for argument problems found after parsing.
struct UsageError : Error {
  using Error::Error;
};

void add_options(CLI::App& app, RunConfig& c, std::vector<std::string>& metrics,
                 std::size_t& k) {
  app.set_config("--config", "", "TOML file with option defaults");

  app.add_option("--seed", c.seed, "Random seed")->capture_default_str();
  app.add_option("--out", c.out, "Output directory")->capture_default_str();
  app.add_option("--k", k, "Passages per context (default 5)");
  app.add_option("--gamma", c.gamma, "Distractor weight for udcg")->capture_default_str();
  app.add_option("--theta", c.theta, "theta.json for udcg_theta");
  app.add_option("--metrics", metrics, "Metrics, comma separated")->delimiter(',');
  app.add_option("--provider", c.provider.spec,
                 "constant:<p>, table:<path>, or http");

  auto* data = "Data";
  app.add_option("--questions", c.questions, "questions.jsonl")->group(data);
  app.add_option("--passages", c.passages, "passages.jsonl")->group(data);
  app.add_option("--judgments", c.judgments, "judgments.jsonl")->group(data);
  app.add_option("--annotations", c.annotations, "annotations.jsonl")->group(data);
  app.add_option("--rankings", c.rankings, "rankings.jsonl")->group(data);
  app.add_option("--contexts", c.contexts, "contexts.jsonl")->group(data);
  app.add_option("--heldout", c.heldout, "Held-out contexts.jsonl for train")
      ->group(data);

  auto* prov = "Provider";
  auto& p = c.provider;
  app.add_option("--cache-dir", p.cache_dir, "Abstention cache (default <out>/cache)")
      ->group(prov);
  app.add_option("--concurrency", p.concurrency, "Requests in flight")
      ->capture_default_str()->group(prov);
  app.add_option("--endpoint", p.endpoint, "Completion endpoint URL")->group(prov);
  app.add_option("--model", p.model, "Model name sent to the endpoint")->group(prov);
  app.add_option("--auth-env", p.auth_env, "Env var holding the bearer token")
      ->capture_default_str()->group(prov);
  app.add_option("--api-style", p.api_style, "generic or openai")
      ->capture_default_str()->group(prov);
  app.add_option("--estimator", p.estimator, "logprobs or sampled")
      ->capture_default_str()->group(prov);
  app.add_option("--samples", p.samples, "Completions per pair when sampled")
      ->capture_default_str()->group(prov);
  app.add_option("--prompt", p.prompt, "Prompt template file")->group(prov);

  auto* ctx = "Contexts";
  app.add_option("--m", c.m, "Retrieval depth")->capture_default_str()->group(ctx);
  app.add_option("--n", c.n, "Contexts per question (sample)")
      ->capture_default_str()->group(ctx);
  app.add_option("--mode", c.rerank_mode, "utility or binary (rerank)")
      ->capture_default_str()->group(ctx);

  auto* tr = "Training";
  auto& t = c.trainer;
  app.add_option("--features", c.features, "full, relevance_only, or binary")
      ->capture_default_str()->group(tr);
  app.add_option("--c", t.regularization_c, "Regularization")
      ->capture_default_str()->group(tr);
  app.add_option("--lr", t.learning_rate, "Learning rate")->capture_default_str()->group(tr);
  app.add_option("--epochs", t.max_epochs, "Epoch limit")->capture_default_str()->group(tr);
  app.add_option("--tolerance", t.tolerance, "Relative objective change to stop")
      ->capture_default_str()->group(tr);
  app.add_option("--margin", t.margin, "Hinge margin")->capture_default_str()->group(tr);

  auto* sim = "Simulation";
  auto& s = c.sim;
  app.add_option("--attention", s.attention, "Positional attention, comma separated")
      ->delimiter(',')->group(sim);
  app.add_option("--gain", s.gain, "Distraction gain")->capture_default_str()->group(sim);
  app.add_option("--aggregation", s.aggregation, "noisy-or or max")
      ->capture_default_str()->group(sim);
  app.add_option("--sim-mode", s.mode, "expected or sampled")
      ->capture_default_str()->group(sim);
  app.add_option("--num-questions", s.questions, "Synthetic questions")
      ->capture_default_str()->group(sim);
  app.add_option("--contexts-per-question", s.contexts_per_question,
                 "Synthetic contexts per question")->capture_default_str()->group(sim);
  app.add_option("--train-questions", s.train_questions,
                 "context_bench training questions")->capture_default_str()->group(sim);
  app.add_option("--ks", s.ks, "k values for k_sweep (default 1..10)")
      ->delimiter(',')->group(sim);
  app.add_flag("--planted", s.planted, "context_bench with the planted scorer")
      ->group(sim);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Utility-aware retrieval evaluation", "udcg"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig config;
  std::vector<std::string> metrics;
  std::size_t k = 0;
  add_options(app, config, metrics, k);

  auto* annotate = app.add_subcommand("annotate", "Annotate judged passages with utility");
  auto* score = app.add_subcommand("score", "Score contexts with each metric");
  auto* correlate = app.add_subcommand("correlate", "Correlate metrics with outcomes");
  auto* train = app.add_subcommand("train", "Fit udcg_theta weights");
  auto* rerank = app.add_subcommand("rerank", "Oracle top-k context per question");
  auto* sample = app.add_subcommand("sample", "Sample evaluation contexts");
  auto* simulate = app.add_subcommand("simulate", "Run a simulated-reader experiment");
  std::string experiment;
  simulate->add_option("experiment", experiment,
                       "position_sweep, k_sweep, distractor_gap, or context_bench")
      ->required()
      ->check(CLI::IsMember(experiments()));

  // CLI11 wants the arguments reversed.
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    auto* metrics_opt = app.get_option("--metrics");
    if (metrics_opt->count() > 0 || !metrics.empty()) {
      metrics.erase(std::remove(metrics.begin(), metrics.end(), ""), metrics.end());
      if (metrics.empty()) throw UsageError("--metrics needs at least one metric");
    }
    config.metrics = metrics;
    if (app.get_option("--k")->count() > 0) config.k = k;
    validate(config);

    if (*annotate) {
      cmd_annotate(config, out);
    } else if (*score) {
      cmd_score(config, out);
    } else if (*correlate) {
      cmd_correlate(config, out);
    } else if (*train) {
      cmd_train(config, out);
    } else if (*rerank) {
      cmd_rerank(config, out);
    } else if (*sample) {
      cmd_sample(config, out, err);
    } else if (*simulate) {
      cmd_simulate(config, experiment, out);
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const annotation::ProviderError& e) {
    err << "provider error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace udcg::cli
