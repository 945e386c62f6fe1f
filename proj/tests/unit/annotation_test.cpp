#include <gtest/gtest.h>

#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <thread>

#include "udcg/annotation/annotate.hpp"
#include "udcg/annotation/prompt.hpp"
#include "udcg/annotation/provider.hpp"
#include "udcg/annotation/rerank.hpp"
#include "udcg/annotation/utility.hpp"
#include "udcg/core/error.hpp"
#include "udcg/core/index.hpp"

namespace udcg::annotation {
namespace {

namespace fs = std::filesystem;

fs::path temp_dir(const std::string& name) {
  auto dir = fs::temp_directory_path() / ("udcg_test_" + name + "_" +
                                          std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

TEST(Utility, DistractingEffect) {
  EXPECT_EQ(distracting_effect(1.0), 0.0);
  EXPECT_EQ(distracting_effect(0.0), 1.0);
  EXPECT_DOUBLE_EQ(distracting_effect(0.8), 0.2);
  EXPECT_THROW(distracting_effect(1.2), InvariantError);
  EXPECT_THROW(distracting_effect(-0.1), InvariantError);
}

TEST(Utility, SignedUtility) {
  EXPECT_EQ(utility(true, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(utility(false, 0.2), -0.8);
  EXPECT_EQ(utility(true, 1.0), 0.0);
  EXPECT_EQ(utility(false, 1.0), 0.0);
  EXPECT_THROW(utility(true, 1.5), InvariantError);
}

TEST(Utility, Laws) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const double p = unit(rng);
    EXPECT_GE(utility(true, p), 0.0);
    EXPECT_LE(utility(false, p), 0.0);
    EXPECT_EQ(utility(false, p), -distracting_effect(p));
    EXPECT_EQ(utility(true, p), 1.0 - p);
  }
}

TEST(Utility, ClassifyDistractor) {
  EXPECT_EQ(classify_distractor(-0.1), DistractorClass::kWeak);
  EXPECT_EQ(classify_distractor(-0.9), DistractorClass::kHard);
  EXPECT_EQ(classify_distractor(-0.5), DistractorClass::kIntermediate);
  EXPECT_EQ(classify_distractor(-0.2), DistractorClass::kIntermediate);
  EXPECT_EQ(classify_distractor(-0.8), DistractorClass::kIntermediate);
  EXPECT_EQ(classify_distractor(0.0), DistractorClass::kWeak);
  EXPECT_THROW(classify_distractor(0.3), InvariantError);
}

TEST(Prompt, AssetMatchesBuiltin) {
  std::ifstream in(fs::path(UDCG_SOURCE_DIR) / "assets/prompts/utility_prompt.txt",
                   std::ios::binary);
  ASSERT_TRUE(in);
  std::ostringstream s;
  s << in.rdbuf();
  EXPECT_EQ(s.str(), kDefaultUtilityPrompt);
  EXPECT_NE(s.str().find("NO-RESPONSE"), std::string::npos);
}

TEST(Prompt, RenderFillsPlaceholdersOnce) {
  PromptTemplate t("Q: <question>\nD: <document>\nElse say NO-RESPONSE.");
  // A document that itself contains a placeholder is not expanded again.
  EXPECT_EQ(t.render("why?", "text <question>"),
            "Q: why?\nD: text <question>\nElse say NO-RESPONSE.");
  EXPECT_EQ(t.hash().size(), 16u);
  EXPECT_NE(t.hash(), PromptTemplate::utility_default().hash());
  EXPECT_THROW(PromptTemplate("<question> <document>"), InvariantError);
  EXPECT_THROW(PromptTemplate("<question> NO-RESPONSE"), InvariantError);
}

// Counts calls per pair; optionally fails the first attempts of each pair.
class CountingProvider : public AbstentionProvider {
 public:
  explicit CountingProvider(double p, int transient_failures = 0)
      : p_(p), transient_failures_(transient_failures) {}
  std::string id() const override { return "counting"; }
  double p_no_response(const Question& q, const Passage& p) const override {
    std::lock_guard lock(mu_);
    const int n = ++calls_[{q.id, p.id}];
    ++total_;
    if (n <= transient_failures_) throw ProviderError("flaky", true);
    return p_;
  }
  int total() const {
    std::lock_guard lock(mu_);
    return total_;
  }
  int calls(const std::string& q, const std::string& p) const {
    std::lock_guard lock(mu_);
    auto it = calls_.find({q, p});
    return it == calls_.end() ? 0 : it->second;
  }

 private:
  double p_;
  int transient_failures_;
  mutable std::mutex mu_;
  mutable std::map<PairKey, int> calls_;
  mutable int total_ = 0;
};

struct Fixture {
  std::vector<Question> questions{{"q1", "who?", {"x"}}, {"q2", "what?", {"y"}}};
  std::vector<Passage> passages{{"a", "A"}, {"b", "B"}, {"c", "C"}};
  std::vector<RelevanceJudgment> judgments{
      {"q1", "a", true}, {"q1", "b", false}, {"q2", "c", false}};
};

TEST(Annotate, StubProvider) {
  Fixture f;
  const auto anns =
      annotate(f.questions, f.passages, f.judgments, ConstantProvider(0.5));
  ASSERT_EQ(anns.size(), 3u);
  EXPECT_EQ(anns[0].utility, 0.5);
  EXPECT_EQ(anns[1].utility, -0.5);
  EXPECT_EQ(anns[2].utility, -0.5);
  EXPECT_EQ(anns[2].question_id, "q2");
  EXPECT_NO_THROW(check_consistency(anns, f.judgments));
}

TEST(Annotate, EmptyInput) {
  Fixture f;
  EXPECT_TRUE(annotate(f.questions, f.passages, {}, ConstantProvider(0.5)).empty());
}

TEST(Annotate, OutOfRangeProbabilityNamesPair) {
  Fixture f;
  try {
    annotate(f.questions, f.passages, f.judgments, ConstantProvider(1.1));
    FAIL() << "expected ProviderError";
  } catch (const ProviderError& e) {
    EXPECT_NE(std::string(e.what()).find("(q1, a)"), std::string::npos)
        << e.what();
  }
}

TEST(Annotate, MissingRecordsAreErrors) {
  Fixture f;
  auto js = f.judgments;
  js.push_back({"q9", "a", true});
  EXPECT_THROW(annotate(f.questions, f.passages, js, ConstantProvider(0.5)),
               InvariantError);
  js.back() = {"q1", "zz", true};
  EXPECT_THROW(annotate(f.questions, f.passages, js, ConstantProvider(0.5)),
               InvariantError);
}

TEST(Annotate, OneCallPerPairAndOrderUnderConcurrency) {
  std::vector<Question> qs;
  std::vector<Passage> ps;
  std::vector<RelevanceJudgment> js;
  for (int i = 0; i < 20; ++i) qs.push_back({"q" + std::to_string(i), "t", {"r"}});
  for (int j = 0; j < 10; ++j) ps.push_back({"p" + std::to_string(j), "t"});
  for (int i = 0; i < 20; ++i)
    for (int j = 0; j < 10; ++j)
      js.push_back({"q" + std::to_string(i), "p" + std::to_string(j), (i + j) % 3 == 0});
  std::shuffle(js.begin(), js.end(), std::mt19937_64(4));

  CountingProvider provider(0.25);
  const auto anns = annotate(qs, ps, js, provider, {.max_in_flight = 8});
  EXPECT_EQ(provider.total(), 200);
  ASSERT_EQ(anns.size(), js.size());
  for (std::size_t i = 0; i < js.size(); ++i) {
    EXPECT_EQ(anns[i].question_id, js[i].question_id);
    EXPECT_EQ(anns[i].passage_id, js[i].passage_id);
    EXPECT_EQ(provider.calls(js[i].question_id, js[i].passage_id), 1);
  }
  const auto serial = annotate(qs, ps, js, ConstantProvider(0.25));
  for (std::size_t i = 0; i < js.size(); ++i)
    EXPECT_EQ(anns[i].utility, serial[i].utility);
}

TEST(Annotate, RetriesTransientFailures) {
  Fixture f;
  AnnotateOptions options;
  options.backoff = std::chrono::milliseconds(1);
  CountingProvider flaky(0.3, 1);
  const auto anns =
      annotate(f.questions, f.passages, f.judgments, flaky, options);
  EXPECT_EQ(anns.size(), 3u);
  EXPECT_EQ(flaky.total(), 6);

  CountingProvider hopeless(0.3, 5);
  options.max_retries = 1;
  EXPECT_THROW(
      annotate(f.questions, f.passages, f.judgments, hopeless, options),
      ProviderError);
}

TEST(Annotate, ConsistencyAndSummary) {
  std::vector<RelevanceJudgment> js{
      {"q", "a", true}, {"q", "b", false}, {"q", "c", false}, {"q", "d", false}};
  std::vector<UtilityAnnotation> anns{{"q", "a", 0.1, 0.9},
                                      {"q", "b", 0.95, -0.05},
                                      {"q", "c", 0.05, -0.95},
                                      {"q", "d", 0.5, -0.5}};
  EXPECT_NO_THROW(check_consistency(anns, js));
  const auto s = summarize(anns, js);
  EXPECT_EQ(s.total, 4u);
  EXPECT_EQ(s.relevant, 1u);
  EXPECT_EQ(s.distractors.at(DistractorClass::kWeak), 1u);
  EXPECT_EQ(s.distractors.at(DistractorClass::kHard), 1u);
  EXPECT_EQ(s.distractors.at(DistractorClass::kIntermediate), 1u);

  anns[0].utility = -0.9;
  EXPECT_THROW(check_consistency(anns, js), InvariantError);
}

TEST(Provider, TableLookup) {
  const auto dir = temp_dir("table");
  {
    std::ofstream out(dir / "p.jsonl");
    out << R"({"question_id":"q1","passage_id":"a","p_no_response":0.3})" << "\n";
  }
  const auto table = TableProvider::load(dir / "p.jsonl");
  EXPECT_EQ(table.p_no_response({"q1", "", {}}, {"a", ""}), 0.3);
  try {
    table.p_no_response({"q1", "", {}}, {"b", ""});
    FAIL();
  } catch (const ProviderError& e) {
    EXPECT_FALSE(e.retryable());
  }
  EXPECT_THROW(TableProvider::load(dir / "missing.jsonl"), Error);
  fs::remove_all(dir);
}

TEST(Provider, WarmCacheMakesNoCalls) {
  const auto dir = temp_dir("cache");
  Fixture f;
  auto inner = std::make_shared<CountingProvider>(0.4);
  std::vector<UtilityAnnotation> cold;
  {
    CachingProvider cache(inner, dir);
    cold = annotate(f.questions, f.passages, f.judgments, cache);
    EXPECT_EQ(cache.misses(), 3u);
  }
  EXPECT_EQ(inner->total(), 3);
  CachingProvider warm(inner, dir);
  EXPECT_EQ(warm.size(), 3u);
  const auto again = annotate(f.questions, f.passages, f.judgments, warm);
  EXPECT_EQ(warm.misses(), 0u);
  EXPECT_EQ(inner->total(), 3);
  for (std::size_t i = 0; i < cold.size(); ++i)
    EXPECT_EQ(cold[i].utility, again[i].utility);
  fs::remove_all(dir);
}

TEST(Provider, CacheSurvivesTornLine) {
  const auto dir = temp_dir("torn");
  Fixture f;
  auto inner = std::make_shared<CountingProvider>(0.4);
  {
    CachingProvider cache(inner, dir);
    annotate(f.questions, f.passages, f.judgments, cache);
  }
  {
    std::ofstream out(dir / "abstention_cache.jsonl", std::ios::app);
    out << R"({"key":"counting	q2	)";
  }
  CachingProvider reopened(inner, dir);
  EXPECT_EQ(reopened.size(), 3u);
  fs::remove_all(dir);
}

TEST(Provider, CacheKeysIncludeProviderAndPrompt) {
  const auto dir = temp_dir("keys");
  Fixture f;
  {
    CachingProvider a(std::make_shared<ConstantProvider>(0.2), dir);
    annotate(f.questions, f.passages, f.judgments, a);
  }
  CachingProvider b(std::make_shared<ConstantProvider>(0.7), dir);
  const auto anns = annotate(f.questions, f.passages, f.judgments, b);
  EXPECT_EQ(b.misses(), 3u);
  EXPECT_DOUBLE_EQ(anns[0].utility, 0.3);
  fs::remove_all(dir);
}

AnnotationIndex index_of(const std::vector<std::tuple<std::string, bool, double>>& rows) {
  AnnotationIndex idx;
  for (const auto& [pid, rel, u] : rows) {
    idx.add(RelevanceJudgment{"q", pid, rel});
    idx.add(UtilityAnnotation{"q", pid, 1.0 - std::abs(u), u});
  }
  return idx;
}

TEST(Rerank, PicksHighestUtility) {
  const auto idx = index_of({{"a", true, 0.2}, {"b", false, -0.1}, {"c", true, 0.9}});
  const RankedList r{"q", {{"a", 3}, {"b", 2}, {"c", 1}}};
  const auto ctx = oracle_rerank(r, idx, RerankMode::kUtility, 3, 2);
  EXPECT_EQ(ctx.passage_ids, (std::vector<std::string>{"c", "a"}));
  EXPECT_EQ(ctx.question_id, "q");
  EXPECT_FALSE(ctx.outcome.has_value());
}

TEST(Rerank, BinaryPutsRelevantFirst) {
  const auto idx = index_of({{"x", false, -0.5}, {"y", true, 0.5}});
  const RankedList r{"q", {{"x", 9}, {"y", 1}}};
  const auto ctx = oracle_rerank(r, idx, RerankMode::kBinary, 2, 2);
  EXPECT_EQ(ctx.passage_ids, (std::vector<std::string>{"y", "x"}));
}

TEST(Rerank, TiesFollowRetrievalOrderThenId) {
  const auto idx = index_of({{"a", false, -0.3}, {"b", false, -0.3}, {"c", false, -0.3}});
  const RankedList r{"q", {{"c", 5}, {"a", 4}, {"b", 4}}};
  EXPECT_EQ(oracle_rerank(r, idx, RerankMode::kUtility, 3, 3).passage_ids,
            (std::vector<std::string>{"c", "a", "b"}));
  EXPECT_EQ(oracle_rerank(r, idx, RerankMode::kBinary, 3, 3).passage_ids,
            (std::vector<std::string>{"c", "a", "b"}));
}

TEST(Rerank, ZeroUtilityRelevantBeatsZeroUtilityIrrelevant) {
  const auto idx = index_of({{"a", false, 0.0}, {"b", true, 0.0}});
  const RankedList r{"q", {{"a", 2}, {"b", 1}}};
  EXPECT_EQ(oracle_rerank(r, idx, RerankMode::kUtility, 2, 2).passage_ids,
            (std::vector<std::string>{"b", "a"}));
}

TEST(Rerank, OnlyTopMIsConsidered) {
  const auto idx = index_of({{"a", false, -0.5}, {"b", false, -0.4}, {"c", true, 1.0}});
  const RankedList r{"q", {{"a", 3}, {"b", 2}, {"c", 1}}};
  EXPECT_EQ(oracle_rerank(r, idx, RerankMode::kUtility, 2, 2).passage_ids,
            (std::vector<std::string>{"b", "a"}));
}

TEST(Rerank, Errors) {
  const auto idx = index_of({{"a", true, 0.5}, {"b", false, -0.5}});
  const RankedList r{"q", {{"a", 2}, {"b", 1}}};
  EXPECT_THROW(oracle_rerank(r, idx, RerankMode::kUtility, 1, 2), InvariantError);
  EXPECT_THROW(oracle_rerank(r, idx, RerankMode::kUtility, 25, 5), InvariantError);
  const RankedList missing{"q", {{"a", 2}, {"zz", 1}}};
  EXPECT_THROW(oracle_rerank(missing, idx, RerankMode::kUtility, 2, 2),
               InvariantError);
}

// Random pools: relevant passages never follow an irrelevant one.
TEST(Rerank, RelevantNeverBelowIrrelevant) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    AnnotationIndex idx;
    RankedList r{"q", {}};
    for (int i = 0; i < 25; ++i) {
      const std::string pid = "p" + std::to_string(i);
      const bool rel = unit(rng) < 0.2;
      const double p = unit(rng) < 0.1 ? 1.0 : unit(rng);
      idx.add(RelevanceJudgment{"q", pid, rel});
      idx.add(UtilityAnnotation{"q", pid, p, utility(rel, p)});
      r.entries.push_back({pid, 100.0 - i});
    }
    for (auto mode : {RerankMode::kUtility, RerankMode::kBinary}) {
      const auto ctx = oracle_rerank(r, idx, mode, 25, 5);
      bool seen_irrelevant = false;
      for (const auto& pid : ctx.passage_ids) {
        const bool rel = idx.relevant("q", pid);
        EXPECT_FALSE(rel && seen_irrelevant);
        seen_irrelevant |= !rel;
      }
    }
  }
}

}  // namespace
}  // namespace udcg::annotation
