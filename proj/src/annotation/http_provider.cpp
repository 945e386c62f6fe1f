#include "udcg/annotation/http_provider.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "httplib.h"

namespace udcg::annotation {

using nlohmann::json;

namespace {

std::string_view ltrim(std::string_view s) {
  const auto pos = s.find_first_not_of(" \t\r\n");
  return pos == std::string_view::npos ? std::string_view() : s.substr(pos);
}

ProviderError bad_shape(const std::string& what) {
  return ProviderError("unexpected provider response: " + what, false);
}

std::vector<TokenLogprob> from_array(const json& arr) {
  std::vector<TokenLogprob> out;
  for (const auto& item : arr)
    out.push_back({item.at("token").get<std::string>(),
                   item.at("logprob").get<double>()});
  return out;
}

std::vector<TokenLogprob> from_object(const json& obj) {
  std::vector<TokenLogprob> out;
  for (const auto& [token, logprob] : obj.items())
    out.push_back({token, logprob.get<double>()});
  return out;
}

}  // namespace

std::vector<TokenLogprob> first_token_logprobs(const json& response) {
  try {
    if (auto it = response.find("top_logprobs"); it != response.end())
      return from_array(*it);
    const auto& logprobs = response.at("choices").at(0).at("logprobs");
    if (auto it = logprobs.find("content"); it != logprobs.end())
      return from_array(it->at(0).at("top_logprobs"));
    const auto& first = logprobs.at("top_logprobs").at(0);
    return first.is_array() ? from_array(first) : from_object(first);
  } catch (const json::exception& e) {
    throw bad_shape(e.what());
  }
}

std::vector<std::string> completion_texts(const json& response) {
  std::vector<std::string> out;
  try {
    if (auto it = response.find("texts"); it != response.end())
      return it->get<std::vector<std::string>>();
    for (const auto& choice : response.at("choices")) {
      if (auto t = choice.find("text"); t != choice.end())
        out.push_back(t->get<std::string>());
      else
        out.push_back(choice.at("message").at("content").get<std::string>());
    }
  } catch (const json::exception& e) {
    throw bad_shape(e.what());
  }
  return out;
}

bool starts_no_response(std::string_view token) {
  const auto t = ltrim(token);
  if (t.empty()) return false;
  return kNoResponse.starts_with(t) || t.starts_with(kNoResponse);
}

double no_response_mass(std::span<const TokenLogprob> candidates) {
  double mass = 0.0;
  for (const auto& c : candidates)
    if (starts_no_response(c.token)) mass += std::exp(c.logprob);
  return std::clamp(mass, 0.0, 1.0);
}

double no_response_frequency(std::span<const std::string> texts) {
  if (texts.empty()) throw bad_shape("no completions returned");
  const auto hits = std::count_if(texts.begin(), texts.end(),
                                  [](const std::string& t) {
                                    return ltrim(t).starts_with(kNoResponse);
                                  });
  return static_cast<double>(hits) / static_cast<double>(texts.size());
}

HttpProvider::HttpProvider(HttpProviderConfig config, PromptTemplate prompt)
    : config_(std::move(config)), prompt_(std::move(prompt)) {
  const auto scheme_end = config_.endpoint.find("://");
  if (scheme_end == std::string::npos)
    throw InvariantError("endpoint must look like scheme://host/path: " +
                         config_.endpoint);
  const auto path_start = config_.endpoint.find('/', scheme_end + 3);
  origin_ = config_.endpoint.substr(0, path_start);
  path_ = path_start == std::string::npos ? "/"
                                          : config_.endpoint.substr(path_start);
  if (!config_.auth_env.empty())
    if (const char* v = std::getenv(config_.auth_env.c_str())) token_ = v;
  if (config_.top_logprobs < 1 || config_.samples < 1)
    throw InvariantError("top_logprobs and samples must be positive");
}

std::string HttpProvider::id() const {
  return "http:" + config_.model + "@" + origin_ + path_ +
         (config_.mode == HttpProviderConfig::Mode::kSampled
              ? "#sampled" + std::to_string(config_.samples)
              : "");
}

Estimator HttpProvider::estimator() const {
  return config_.mode == HttpProviderConfig::Mode::kSampled
             ? Estimator::kSampledFrequency
             : Estimator::kFirstTokenLogprobs;
}

json HttpProvider::request_body(const Question& q, const Passage& p) const {
  json body{{"prompt", prompt_.render(q.text, p.text)}};
  if (!config_.model.empty()) body["model"] = config_.model;
  const bool openai = config_.api_style == HttpProviderConfig::ApiStyle::kOpenAi;
  const char* max_key = openai ? "max_tokens" : "max_generated_tokens";
  if (config_.mode == HttpProviderConfig::Mode::kLogprobs) {
    body[max_key] = 1;
    body[openai ? "logprobs" : "top_logprobs"] = config_.top_logprobs;
    body["temperature"] = 0.0;
  } else {
    body[max_key] = config_.sample_tokens;
    body["n"] = config_.samples;
    body["temperature"] = config_.samples == 1 ? 0.0 : 1.0;
  }
  return body;
}

double HttpProvider::p_no_response(const Question& q, const Passage& p) const {
  httplib::Client client(origin_);
  const auto timeout = std::chrono::duration<double>(config_.timeout_seconds);
  client.set_connection_timeout(
      std::chrono::duration_cast<std::chrono::microseconds>(timeout));
  client.set_read_timeout(
      std::chrono::duration_cast<std::chrono::microseconds>(timeout));
  httplib::Headers headers;
  if (!token_.empty())
    headers.emplace("Authorization", "Bearer " + token_);

  auto res = client.Post(path_, headers, request_body(q, p).dump(),
                         "application/json");
  if (!res)
    throw ProviderError("request to " + origin_ + path_ + " failed: " +
                            httplib::to_string(res.error()),
                        true);
  if (res->status != 200) {
    const bool retryable = res->status == 429 || res->status >= 500;
    throw ProviderError("provider returned HTTP " + std::to_string(res->status),
                        retryable);
  }
  json body;
  try {
    body = json::parse(res->body);
  } catch (const json::exception& e) {
    throw bad_shape(e.what());
  }
  if (config_.mode == HttpProviderConfig::Mode::kSampled) {
    const auto texts = completion_texts(body);
    return no_response_frequency(texts);
  }
  const auto candidates = first_token_logprobs(body);
  return no_response_mass(candidates);
}

}  // namespace udcg::annotation
