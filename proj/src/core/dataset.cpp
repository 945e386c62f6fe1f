#include "udcg/core/dataset.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <string>

#include "udcg/core/error.hpp"

namespace udcg {

using nlohmann::json;

namespace {

template <class T>
T field(const json& j, const char* name) {
  auto it = j.find(name);
  if (it == j.end())
    throw InvariantError(std::string("missing field '") + name + "'");
  return it->template get<T>();
}

std::string key_of(const Question& v) { return v.id; }
std::string key_of(const Passage& v) { return v.id; }
std::string key_of(const RelevanceJudgment& v) {
  return v.question_id + "\t" + v.passage_id;
}
std::string key_of(const UtilityAnnotation& v) {
  return v.question_id + "\t" + v.passage_id;
}
std::string key_of(const RankedList& v) { return v.question_id; }
std::string key_of(const EvalContext& v) {
  return v.question_id + "\t" + v.context_id;
}

std::string printable_key(std::string key) {
  for (auto& c : key)
    if (c == '\t') c = '/';
  return key;
}

}  // namespace

void to_json(json& j, const Question& v) {
  j = json{{"id", v.id}, {"text", v.text},
           {"reference_answers", v.reference_answers}};
}
void from_json(const json& j, Question& v) {
  v.id = field<std::string>(j, "id");
  v.text = field<std::string>(j, "text");
  v.reference_answers = field<std::vector<std::string>>(j, "reference_answers");
}

void to_json(json& j, const Passage& v) {
  j = json{{"id", v.id}, {"text", v.text}};
}
void from_json(const json& j, Passage& v) {
  v.id = field<std::string>(j, "id");
  v.text = field<std::string>(j, "text");
}

void to_json(json& j, const RelevanceJudgment& v) {
  j = json{{"question_id", v.question_id},
           {"passage_id", v.passage_id},
           {"relevant", v.relevant}};
}
void from_json(const json& j, RelevanceJudgment& v) {
  v.question_id = field<std::string>(j, "question_id");
  v.passage_id = field<std::string>(j, "passage_id");
  v.relevant = field<bool>(j, "relevant");
}

void to_json(json& j, const UtilityAnnotation& v) {
  j = json{{"question_id", v.question_id},
           {"passage_id", v.passage_id},
           {"p_no_response", v.p_no_response},
           {"utility", v.utility}};
  if (v.estimator == Estimator::kSampledFrequency) j["estimator"] = "sampled";
}
void from_json(const json& j, UtilityAnnotation& v) {
  v.question_id = field<std::string>(j, "question_id");
  v.passage_id = field<std::string>(j, "passage_id");
  v.p_no_response = field<double>(j, "p_no_response");
  v.utility = field<double>(j, "utility");
  v.estimator = Estimator::kFirstTokenLogprobs;
  if (auto it = j.find("estimator"); it != j.end()) {
    const auto name = it->get<std::string>();
    if (name == "sampled")
      v.estimator = Estimator::kSampledFrequency;
    else if (name != "logprobs")
      throw InvariantError("unknown estimator '" + name + "'");
  }
}

void to_json(json& j, const RankedList& v) {
  json entries = json::array();
  for (const auto& e : v.entries)
    entries.push_back({{"passage_id", e.passage_id}, {"score", e.score}});
  j = json{{"question_id", v.question_id}, {"entries", std::move(entries)}};
}
void from_json(const json& j, RankedList& v) {
  v.question_id = field<std::string>(j, "question_id");
  v.entries.clear();
  for (const auto& e : field<json>(j, "entries"))
    v.entries.push_back(
        {field<std::string>(e, "passage_id"), field<double>(e, "score")});
}

void to_json(json& j, const EvalContext& v) {
  j = json{{"question_id", v.question_id},
           {"context_id", v.context_id},
           {"passage_ids", v.passage_ids},
           {"outcome", nullptr}};
  if (v.outcome) j["outcome"] = std::string(to_string(*v.outcome));
}
void from_json(const json& j, EvalContext& v) {
  v.question_id = field<std::string>(j, "question_id");
  v.context_id = field<std::string>(j, "context_id");
  v.passage_ids = field<std::vector<std::string>>(j, "passage_ids");
  v.outcome.reset();
  if (auto it = j.find("outcome"); it != j.end() && !it->is_null())
    v.outcome = outcome_from_string(it->get<std::string>());
}

void to_json(json& j, const ThetaWeights& v) {
  j = json{{"k", v.k}, {"alphas", v.alphas}, {"betas", v.betas}};
}
void from_json(const json& j, ThetaWeights& v) {
  const auto k = field<long long>(j, "k");
  if (k <= 0) throw InvariantError("theta: k must be positive");
  v.k = static_cast<std::size_t>(k);
  v.alphas = field<std::vector<double>>(j, "alphas");
  v.betas = field<std::vector<double>>(j, "betas");
}

template <class Record>
std::vector<Record> read_jsonl(std::istream& in, std::string_view source) {
  const std::string src(source);
  std::vector<Record> out;
  std::set<std::string> keys;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    Record record;
    try {
      record = json::parse(line).get<Record>();
      validate(record);
    } catch (const json::exception& e) {
      throw ParseError(src, line_no, e.what());
    } catch (const InvariantError& e) {
      throw ParseError(src, line_no, e.what());
    }
    if (!keys.insert(key_of(record)).second)
      throw DuplicateKeyError(src + ":" + std::to_string(line_no) +
                              ": duplicate key " +
                              printable_key(key_of(record)));
    out.push_back(std::move(record));
  }
  return out;
}

template <class Record>
std::vector<Record> load_jsonl(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  return read_jsonl<Record>(in, path.string());
}

template <class Record>
void write_jsonl(std::ostream& out, const std::vector<Record>& records) {
  for (const auto& r : records) out << json(r).dump() << '\n';
}

template <class Record>
void save_jsonl(const std::filesystem::path& path,
                const std::vector<Record>& records) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  write_jsonl(out, records);
  if (!out) throw Error("write failed: " + path.string());
}

#define UDCG_INSTANTIATE_JSONL(T)                                            \
  template std::vector<T> read_jsonl<T>(std::istream&, std::string_view);    \
  template std::vector<T> load_jsonl<T>(const std::filesystem::path&);       \
  template void write_jsonl<T>(std::ostream&, const std::vector<T>&);        \
  template void save_jsonl<T>(const std::filesystem::path&,                  \
                              const std::vector<T>&);

UDCG_INSTANTIATE_JSONL(Question)
UDCG_INSTANTIATE_JSONL(Passage)
UDCG_INSTANTIATE_JSONL(RelevanceJudgment)
UDCG_INSTANTIATE_JSONL(UtilityAnnotation)
UDCG_INSTANTIATE_JSONL(RankedList)
UDCG_INSTANTIATE_JSONL(EvalContext)

#undef UDCG_INSTANTIATE_JSONL

ThetaWeights read_theta(std::istream& in, std::string_view source) {
  ThetaWeights theta;
  try {
    theta = json::parse(in).get<ThetaWeights>();
    validate(theta);
  } catch (const json::exception& e) {
    throw ParseError(std::string(source), 0, e.what());
  } catch (const InvariantError& e) {
    throw ParseError(std::string(source), 0, e.what());
  }
  return theta;
}

ThetaWeights load_theta(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  return read_theta(in, path.string());
}

void save_theta(const std::filesystem::path& path, const ThetaWeights& theta) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << json(theta).dump(2) << '\n';
}

}  // namespace udcg
