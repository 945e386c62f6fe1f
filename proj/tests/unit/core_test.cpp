#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "udcg/core/dataset.hpp"
#include "udcg/core/error.hpp"
#include "udcg/core/hash.hpp"
#include "udcg/core/index.hpp"
#include "udcg/core/types.hpp"

namespace udcg {
namespace {

template <class R>
std::vector<R> parse(const std::string& text) {
  std::istringstream in(text);
  return read_jsonl<R>(in, "test.jsonl");
}

TEST(Dataset, ParsesOneQuestion) {
  const auto qs = parse<Question>(
      R"({"id":"q1","text":"who?","reference_answers":["a","b"]})"
      "\n");
  ASSERT_EQ(qs.size(), 1u);
  EXPECT_EQ(qs[0].id, "q1");
  EXPECT_EQ(qs[0].text, "who?");
  EXPECT_EQ(qs[0].reference_answers, (std::vector<std::string>{"a", "b"}));
}

TEST(Dataset, UtilityOutOfRangeIsRejected) {
  try {
    parse<UtilityAnnotation>(
        R"({"question_id":"q","passage_id":"p","p_no_response":0.0,"utility":1.5})");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 1u);
    EXPECT_NE(std::string(e.what()).find("(q, p)"), std::string::npos) << e.what();
  }
}

TEST(Dataset, UtilityMustMatchAbstention) {
  EXPECT_THROW(
      parse<UtilityAnnotation>(
          R"({"question_id":"q","passage_id":"p","p_no_response":0.25,"utility":0.5})"),
      ParseError);
  EXPECT_NO_THROW(parse<UtilityAnnotation>(
      R"({"question_id":"q","passage_id":"p","p_no_response":0.25,"utility":-0.75})"));
}

TEST(Dataset, DuplicateJudgmentPair) {
  const std::string line =
      R"({"question_id":"q","passage_id":"p","relevant":true})"
      "\n";
  EXPECT_THROW(parse<RelevanceJudgment>(line + line), DuplicateKeyError);
}

TEST(Dataset, SamePassageDifferentQuestionsIsFine) {
  const auto js = parse<RelevanceJudgment>(
      R"({"question_id":"q1","passage_id":"p","relevant":true})"
      "\n"
      R"({"question_id":"q2","passage_id":"p","relevant":false})"
      "\n");
  EXPECT_EQ(js.size(), 2u);
}

TEST(Dataset, MalformedLineReportsLineNumber) {
  try {
    parse<Passage>(
        "{\"id\":\"a\",\"text\":\"x\"}\n\n{\"id\":\"b\",\"text\":\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_NE(std::string(e.what()).find("test.jsonl:3"), std::string::npos);
  }
}

TEST(Dataset, MissingFieldIsParseError) {
  EXPECT_THROW(parse<Passage>(R"({"id":"a"})"), ParseError);
}

TEST(Dataset, RankingMustDescend) {
  EXPECT_THROW(
      parse<RankedList>(
          R"({"question_id":"q","entries":[{"passage_id":"a","score":1},{"passage_id":"b","score":2}]})"),
      ParseError);
  EXPECT_THROW(
      parse<RankedList>(
          R"({"question_id":"q","entries":[{"passage_id":"a","score":2},{"passage_id":"a","score":1}]})"),
      ParseError);
}

TEST(Dataset, ContextOutcomeNullAndDuplicates) {
  const auto cs = parse<EvalContext>(
      R"({"question_id":"q","context_id":"c","passage_ids":["a","b"],"outcome":null})");
  ASSERT_EQ(cs.size(), 1u);
  EXPECT_FALSE(cs[0].outcome.has_value());
  EXPECT_THROW(
      parse<EvalContext>(
          R"({"question_id":"q","context_id":"c","passage_ids":["a","a"],"outcome":"correct"})"),
      ParseError);
  EXPECT_THROW(
      parse<EvalContext>(
          R"({"question_id":"q","context_id":"c","passage_ids":["a"],"outcome":"maybe"})"),
      ParseError);
}

TEST(Dataset, ThetaNeedsKWeights) {
  std::istringstream bad(R"({"k":2,"alphas":[1],"betas":[1,2]})");
  EXPECT_THROW(read_theta(bad), ParseError);
  std::istringstream good(R"({"k":2,"alphas":[1,0.5],"betas":[1,2]})");
  const auto t = read_theta(good);
  EXPECT_EQ(t.k, 2u);
  EXPECT_EQ(t.alphas[1], 0.5);
}

// Random records survive write -> read -> write byte for byte.
TEST(Dataset, RoundTripProperty) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<UtilityAnnotation> anns;
  std::vector<EvalContext> ctxs;
  for (int i = 0; i < 200; ++i) {
    const bool rel = unit(rng) < 0.5;
    const double p = unit(rng);
    UtilityAnnotation a{"q" + std::to_string(i), "p" + std::to_string(i), p,
                        rel ? 1.0 - p : -(1.0 - p)};
    if (i % 7 == 0) a.estimator = Estimator::kSampledFrequency;
    anns.push_back(a);
    EvalContext c{"q" + std::to_string(i / 10), "c" + std::to_string(i),
                  {"a", "b", "c"}, std::nullopt};
    if (i % 3) c.outcome = static_cast<Outcome>(i % 3);
    ctxs.push_back(c);
  }
  std::ostringstream first;
  write_jsonl(first, anns);
  write_jsonl(first, std::vector<EvalContext>{});
  std::istringstream in(first.str());
  const auto back = read_jsonl<UtilityAnnotation>(in);
  ASSERT_EQ(back.size(), anns.size());
  for (std::size_t i = 0; i < anns.size(); ++i) {
    EXPECT_EQ(back[i].utility, anns[i].utility);
    EXPECT_EQ(back[i].p_no_response, anns[i].p_no_response);
    EXPECT_EQ(back[i].estimator, anns[i].estimator);
  }
  std::ostringstream second;
  write_jsonl(second, back);
  EXPECT_EQ(first.str(), second.str());

  std::ostringstream c1, c2;
  write_jsonl(c1, ctxs);
  std::istringstream cin(c1.str());
  write_jsonl(c2, read_jsonl<EvalContext>(cin));
  EXPECT_EQ(c1.str(), c2.str());
}

TEST(Types, OutcomeOrdinals) {
  EXPECT_EQ(ordinal(Outcome::kCorrect), 2);
  EXPECT_EQ(ordinal(Outcome::kAbstain), 1);
  EXPECT_EQ(ordinal(Outcome::kWrong), 0);
  for (auto o : {Outcome::kCorrect, Outcome::kAbstain, Outcome::kWrong})
    EXPECT_EQ(outcome_from_string(to_string(o)), o);
  EXPECT_THROW(outcome_from_string("right"), InvariantError);
}

TEST(Types, UniformTheta) {
  const auto t = ThetaWeights::uniform(4, 1.0 / 3.0);
  EXPECT_EQ(t.alphas, std::vector<double>(4, 0.25));
  EXPECT_EQ(t.betas, std::vector<double>(4, (1.0 / 3.0) / 4.0));
}

TEST(Index, LooksUpPairs) {
  AnnotationIndex idx({{"q", "a", 0.2, 0.8}, {"q", "b", 0.9, -0.1}},
                      {{"q", "a", true}, {"q", "b", false}, {"r", "a", true}});
  EXPECT_EQ(idx.utility("q", "a"), 0.8);
  EXPECT_FALSE(idx.find_utility("r", "a").has_value());
  EXPECT_EQ(idx.relevant_count("q"), 1u);
  EXPECT_EQ(idx.relevant_count("zzz"), 0u);
  EvalContext c{"q", "c", {"b", "a"}, std::nullopt};
  EXPECT_EQ(idx.utilities(c), (std::vector<double>{-0.1, 0.8}));
  EXPECT_EQ(idx.relevance(c), (std::vector<bool>{false, true}));
  try {
    idx.utility("r", "a");
    FAIL();
  } catch (const InvariantError& e) {
    EXPECT_NE(std::string(e.what()).find("(r, a)"), std::string::npos) << e.what();
  }
}

TEST(Hash, KnownFnvVectors) {
  static_assert(fnv1a64("") == 0xcbf29ce484222325ULL);
  EXPECT_EQ(fnv1a64("a"), 0xaf63dc4c8601ec8cULL);
  EXPECT_EQ(fnv1a64("foobar"), 0x85944171f73967e8ULL);
  EXPECT_NE(derive_seed(1, "q1"), derive_seed(1, "q2"));
  EXPECT_NE(derive_seed(1, "q1"), derive_seed(2, "q1"));
}

}  // namespace
}  // namespace udcg
