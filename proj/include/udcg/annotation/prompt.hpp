#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace udcg::annotation {

inline constexpr std::string_view kNoResponse = "NO-RESPONSE";

// Single-passage answering prompt with <document> and <question>
// placeholders. Identical to assets/prompts/utility_prompt.txt.
extern const std::string_view kDefaultUtilityPrompt;

class PromptTemplate {
 public:
  // Throws InvariantError if a placeholder or the NO-RESPONSE sentinel is
  // missing.
  explicit PromptTemplate(std::string text);
  static PromptTemplate load(const std::filesystem::path& path);
  static PromptTemplate utility_default();

  std::string render(std::string_view question, std::string_view document) const;
  const std::string& text() const { return text_; }
  // Stable 64-bit FNV-1a of the template text, as 16 hex digits.
  std::string hash() const;

 private:
  std::string text_;
};

}  // namespace udcg::annotation
