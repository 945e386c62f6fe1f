#include "udcg/annotation/provider.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace udcg::annotation {

using nlohmann::json;

std::string ConstantProvider::id() const {
  std::ostringstream os;
  os.precision(17);
  os << "constant:" << p_;
  return os.str();
}

TableProvider TableProvider::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open provider table " + path.string());
  std::map<PairKey, double> table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const auto j = json::parse(line);
      table[{j.at("question_id").get<std::string>(),
             j.at("passage_id").get<std::string>()}] =
          j.at("p_no_response").get<double>();
    } catch (const json::exception& e) {
      throw ParseError(path.string(), line_no, e.what());
    }
  }
  return TableProvider(std::move(table), "table:" + path.filename().string());
}

double TableProvider::p_no_response(const Question& q, const Passage& p) const {
  auto it = table_.find({q.id, p.id});
  if (it == table_.end())
    throw ProviderError("no table entry for (" + q.id + ", " + p.id + ")",
                        false);
  return it->second;
}

CachingProvider::CachingProvider(
    std::shared_ptr<const AbstentionProvider> inner, std::filesystem::path dir)
    : inner_(std::move(inner)) {
  std::filesystem::create_directories(dir);
  file_ = dir / "abstention_cache.jsonl";
  std::ifstream in(file_);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    try {
      const auto j = json::parse(line);
      entries_[j.at("key").get<std::string>()] =
          j.at("p_no_response").get<double>();
    } catch (const json::exception&) {
      // A torn final line from an interrupted run is dropped and recomputed.
      continue;
    }
  }
}

std::string CachingProvider::key(const Question& q, const Passage& p) const {
  return inner_->id() + "\t" + q.id + "\t" + p.id + "\t" + inner_->prompt_hash();
}

std::size_t CachingProvider::size() const {
  std::lock_guard lock(mu_);
  return entries_.size();
}

double CachingProvider::p_no_response(const Question& q,
                                      const Passage& p) const {
  const auto k = key(q, p);
  {
    std::lock_guard lock(mu_);
    if (auto it = entries_.find(k); it != entries_.end()) return it->second;
  }
  misses_.fetch_add(1);
  const double value = inner_->p_no_response(q, p);
  if (!(value >= 0.0 && value <= 1.0)) return value;
  std::lock_guard lock(mu_);
  if (entries_.emplace(k, value).second) {
    std::ofstream out(file_, std::ios::app);
    out << json{{"key", k}, {"p_no_response", value}}.dump() << '\n';
    out.flush();
  }
  return value;
}

}  // namespace udcg::annotation
