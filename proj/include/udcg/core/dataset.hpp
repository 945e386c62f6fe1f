#pragma once

// JSONL readers and writers for every dataset part. One record per line,
// UTF-8. Blank lines are skipped. Readers validate each record and reject
// duplicate keys; errors carry the source name and 1-based line number.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "udcg/core/types.hpp"

namespace udcg {

void to_json(nlohmann::json& j, const Question& v);
void from_json(const nlohmann::json& j, Question& v);
void to_json(nlohmann::json& j, const Passage& v);
void from_json(const nlohmann::json& j, Passage& v);
void to_json(nlohmann::json& j, const RelevanceJudgment& v);
void from_json(const nlohmann::json& j, RelevanceJudgment& v);
void to_json(nlohmann::json& j, const UtilityAnnotation& v);
void from_json(const nlohmann::json& j, UtilityAnnotation& v);
void to_json(nlohmann::json& j, const RankedList& v);
void from_json(const nlohmann::json& j, RankedList& v);
void to_json(nlohmann::json& j, const EvalContext& v);
void from_json(const nlohmann::json& j, EvalContext& v);
void to_json(nlohmann::json& j, const ThetaWeights& v);
void from_json(const nlohmann::json& j, ThetaWeights& v);

// Record is one of Question, Passage, RelevanceJudgment, UtilityAnnotation,
// RankedList, EvalContext.
template <class Record>
std::vector<Record> read_jsonl(std::istream& in,
                               std::string_view source = "<stream>");

template <class Record>
std::vector<Record> load_jsonl(const std::filesystem::path& path);

template <class Record>
void write_jsonl(std::ostream& out, const std::vector<Record>& records);

template <class Record>
void save_jsonl(const std::filesystem::path& path,
                const std::vector<Record>& records);

ThetaWeights read_theta(std::istream& in, std::string_view source = "<stream>");
ThetaWeights load_theta(const std::filesystem::path& path);
void save_theta(const std::filesystem::path& path, const ThetaWeights& theta);

// Serialized form of a single record, no trailing newline.
template <class Record>
std::string dump_record(const Record& record) {
  return nlohmann::json(record).dump();
}

}  // namespace udcg
