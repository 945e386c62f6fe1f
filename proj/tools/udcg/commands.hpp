#pragma once

// Command implementations behind the udcg executable. Each command reads
// its inputs, writes its outputs under RunConfig::out, and prints a short
// report to `log`. Warnings go to `warn`.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "udcg/annotation/provider.hpp"
#include "udcg/harness/simulator.hpp"
#include "udcg/metrics/udcg.hpp"
#include "udcg/trainer/trainer.hpp"

namespace udcg::cli {

namespace fs = std::filesystem;

struct ProviderSettings {
  // constant:<p>, table:<path>, or http
  std::string spec;
  fs::path cache_dir;  // defaults to <out>/cache
  std::size_t concurrency = 4;
  std::string endpoint;
  std::string model;
  std::string auth_env = "UDCG_API_KEY";
  std::string api_style = "generic";  // generic, openai
  std::string estimator = "logprobs";  // logprobs, sampled
  int samples = 1;
  fs::path prompt;  // empty: built-in template
};

struct SimSettings {
  std::vector<double> attention;  // empty: default U-shaped profile
  double gain = 0.8;
  std::string aggregation = "noisy-or";
  std::string mode = "expected";
  std::size_t questions = 300;
  std::size_t contexts_per_question = 10;
  std::size_t train_questions = 200;
  std::vector<std::size_t> ks;  // k_sweep; empty: 1..10
  bool planted = false;         // context_bench with the planted scorer
};

struct RunConfig {
  fs::path questions, passages, judgments, annotations, rankings, contexts;
  fs::path heldout;  // train: optional held-out contexts
  fs::path theta;
  fs::path out = "udcg-out";
  std::vector<std::string> metrics;
  std::optional<std::size_t> k;
  std::size_t m = 25;
  std::size_t n = 10;  // contexts per question for sample
  double gamma = metrics::kDefaultGamma;
  std::uint64_t seed = 0;
  std::string rerank_mode = "utility";
  std::string features = "full";
  trainer::TrainerConfig trainer;
  ProviderSettings provider;
  SimSettings sim;
};

// Throws InvariantError naming the first bad field. Paths are checked by
// the commands that need them.
void validate(const RunConfig& config);

struct AnnotateReport {
  std::size_t annotations = 0;
  std::size_t provider_calls = 0;
};

AnnotateReport cmd_annotate(const RunConfig& config, std::ostream& log);
void cmd_score(const RunConfig& config, std::ostream& log);
void cmd_correlate(const RunConfig& config, std::ostream& log);
void cmd_train(const RunConfig& config, std::ostream& log);
void cmd_rerank(const RunConfig& config, std::ostream& log);
void cmd_sample(const RunConfig& config, std::ostream& log, std::ostream& warn);

// position_sweep, k_sweep, distractor_gap, context_bench
const std::vector<std::string>& experiments();
void cmd_simulate(const RunConfig& config, const std::string& experiment,
                  std::ostream& log);

// Builds the provider named by settings.spec, wrapped in the disk cache.
std::shared_ptr<annotation::CachingProvider> make_provider(
    const ProviderSettings& settings, const fs::path& out);

harness::SimLlmProfile make_profile(const SimSettings& sim, std::size_t k);

}  // namespace udcg::cli
