#include "udcg/annotation/prompt.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "udcg/core/error.hpp"
#include "udcg/core/hash.hpp"

namespace udcg::annotation {

const std::string_view kDefaultUtilityPrompt =
    "You are given a question and you must respond based on the provided "
    "documents. Respond directly without providing any premise or "
    "explanation. If none of the documents contain the answer, please respond "
    "with NO-RESPONSE. Do not try to respond based on your own knowledge.\n"
    "\n"
    "Documents:\n"
    "<document>\n"
    "\n"
    "Question: \n"
    "<question>\n"
    "\n"
    "Answer:";

namespace {

constexpr std::string_view kDocumentSlot = "<document>";
constexpr std::string_view kQuestionSlot = "<question>";

}  // namespace

PromptTemplate::PromptTemplate(std::string text) : text_(std::move(text)) {
  for (auto needle : {kDocumentSlot, kQuestionSlot, kNoResponse})
    if (text_.find(needle) == std::string::npos)
      throw InvariantError("prompt template lacks " + std::string(needle));
}

PromptTemplate PromptTemplate::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open prompt template " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return PromptTemplate(buf.str());
}

PromptTemplate PromptTemplate::utility_default() {
  return PromptTemplate(std::string(kDefaultUtilityPrompt));
}

std::string PromptTemplate::render(std::string_view question,
                                   std::string_view document) const {
  std::string out;
  out.reserve(text_.size() + question.size() + document.size());
  std::size_t pos = 0;
  while (pos < text_.size()) {
    const auto d = text_.find(kDocumentSlot, pos);
    const auto q = text_.find(kQuestionSlot, pos);
    const auto next = std::min(d, q);
    if (next == std::string::npos) {
      out.append(text_, pos, std::string::npos);
      break;
    }
    out.append(text_, pos, next - pos);
    if (next == d) {
      out.append(document);
      pos = next + kDocumentSlot.size();
    } else {
      out.append(question);
      pos = next + kQuestionSlot.size();
    }
  }
  return out;
}

std::string PromptTemplate::hash() const {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a64(text_)));
  return buf;
}

}  // namespace udcg::annotation
