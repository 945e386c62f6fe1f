#pragma once

// Abstention probabilities from a completion-style HTTP endpoint.
//
// Request body (generic style):
//   {"model", "prompt", "max_generated_tokens": 1, "top_logprobs": n,
//    "temperature": 0}
// OpenAI style sends "max_tokens" and "logprobs" instead.
//
// Accepted response shapes for the first generated token:
//   {"top_logprobs": [{"token": "...", "logprob": -0.1}, ...]}
//   {"choices": [{"logprobs": {"top_logprobs": [{"NO": -0.1, ...}]}}]}
//   {"choices": [{"logprobs": {"content": [{"top_logprobs": [...]}]}}]}
//
// p(NO-RESPONSE) is the probability mass of candidate tokens whose text,
// after leading whitespace, is a prefix of "NO-RESPONSE" (or starts with
// it). Endpoints without logprobs use sampled mode: n completions are drawn
// and the fraction beginning with NO-RESPONSE is returned.

#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "udcg/annotation/prompt.hpp"
#include "udcg/annotation/provider.hpp"

namespace udcg::annotation {

struct TokenLogprob {
  std::string token;
  double logprob = 0.0;
};

std::vector<TokenLogprob> first_token_logprobs(const nlohmann::json& response);
std::vector<std::string> completion_texts(const nlohmann::json& response);

bool starts_no_response(std::string_view token);
double no_response_mass(std::span<const TokenLogprob> candidates);
double no_response_frequency(std::span<const std::string> texts);

struct HttpProviderConfig {
  enum class Mode { kLogprobs, kSampled };
  enum class ApiStyle { kGeneric, kOpenAi };

  std::string endpoint;  // scheme://host[:port]/path
  std::string model;
  // Name of the environment variable holding a bearer token; empty for none.
  std::string auth_env = "UDCG_API_KEY";
  Mode mode = Mode::kLogprobs;
  ApiStyle api_style = ApiStyle::kGeneric;
  int top_logprobs = 20;
  int samples = 1;  // sampled mode; temperature is 0 when samples == 1
  int sample_tokens = 8;
  double timeout_seconds = 60.0;
};

class HttpProvider : public AbstentionProvider {
 public:
  HttpProvider(HttpProviderConfig config, PromptTemplate prompt);

  std::string id() const override;
  double p_no_response(const Question& q, const Passage& p) const override;
  Estimator estimator() const override;
  std::string prompt_hash() const override { return prompt_.hash(); }

  nlohmann::json request_body(const Question& q, const Passage& p) const;

 private:
  HttpProviderConfig config_;
  PromptTemplate prompt_;
  std::string origin_;
  std::string path_;
  std::string token_;
};

}  // namespace udcg::annotation
