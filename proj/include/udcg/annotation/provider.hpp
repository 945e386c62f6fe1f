#pragma once

#include <atomic>
#include <cstddef>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include "udcg/core/error.hpp"
#include "udcg/core/types.hpp"

namespace udcg::annotation {

// Raised by providers. Retryable errors (transport, 5xx, rate limiting) are
// retried by annotate(); the others surface immediately.
class ProviderError : public Error {
 public:
  ProviderError(const std::string& message, bool retryable)
      : Error(message), retryable_(retryable) {}
  bool retryable() const { return retryable_; }

 private:
  bool retryable_;
};

// Source of p(NO-RESPONSE | question, passage). Implementations must return
// the same value for repeated queries of the same pair and must be safe to
// call from several threads at once.
class AbstentionProvider {
 public:
  virtual ~AbstentionProvider() = default;

  virtual std::string id() const = 0;
  virtual double p_no_response(const Question& question,
                               const Passage& passage) const = 0;
  virtual Estimator estimator() const { return Estimator::kFirstTokenLogprobs; }
  // Hash of the prompt template the provider renders, part of cache keys.
  virtual std::string prompt_hash() const { return "-"; }
};

// Returns the same probability for every pair.
class ConstantProvider : public AbstentionProvider {
 public:
  explicit ConstantProvider(double p) : p_(p) {}
  std::string id() const override;
  double p_no_response(const Question&, const Passage&) const override {
    return p_;
  }

 private:
  double p_;
};

// Looks probabilities up from a fixed table keyed by (question, passage).
// Reads JSONL lines {"question_id","passage_id","p_no_response"}.
class TableProvider : public AbstentionProvider {
 public:
  explicit TableProvider(std::map<PairKey, double> table,
                         std::string name = "table")
      : table_(std::move(table)), name_(std::move(name)) {}
  static TableProvider load(const std::filesystem::path& path);

  std::string id() const override { return name_; }
  double p_no_response(const Question& q, const Passage& p) const override;

 private:
  std::map<PairKey, double> table_;
  std::string name_;
};

// Disk-backed memo in front of another provider. Entries are keyed by
// (provider id, question id, passage id, prompt hash) and appended to
// <dir>/abstention_cache.jsonl as soon as they are computed, so an
// interrupted run resumes where it stopped.
class CachingProvider : public AbstentionProvider {
 public:
  CachingProvider(std::shared_ptr<const AbstentionProvider> inner,
                  std::filesystem::path dir);

  std::string id() const override { return inner_->id(); }
  double p_no_response(const Question& q, const Passage& p) const override;
  Estimator estimator() const override { return inner_->estimator(); }
  std::string prompt_hash() const override { return inner_->prompt_hash(); }

  // Calls forwarded to the wrapped provider since construction.
  std::size_t misses() const { return misses_.load(); }
  std::size_t size() const;

 private:
  std::string key(const Question& q, const Passage& p) const;

  std::shared_ptr<const AbstentionProvider> inner_;
  std::filesystem::path file_;
  mutable std::mutex mu_;
  mutable std::map<std::string, double> entries_;
  mutable std::atomic<std::size_t> misses_{0};
};

}  // namespace udcg::annotation
