#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace euphony {

enum class TextMode { Generic, Twitter };

inline constexpr std::string_view kUrlTag = "_URL_";
inline constexpr std::string_view kMentionTag = "_MENTION_";

struct TokenizedSentence {
  std::vector<std::string> tokens;
  std::string raw;
};

// Lexical normalization for n-gram features: lowercase, non-ASCII bytes,
// digits and apostrophes deleted, other punctuation splits tokens. Twitter
// mode first replaces URLs and @-mentions with kUrlTag / kMentionTag.
TokenizedSentence normalize(std::string_view text, TextMode mode = TextMode::Generic);

// Lighter normalization for dictionary lookup: same as normalize() except
// that word-internal apostrophes survive ("don't") and URLs/mentions are
// dropped instead of tagged.
std::vector<std::string> phonetic_tokens(std::string_view text, TextMode mode = TextMode::Generic);

class StopwordList {
 public:
  StopwordList() = default;
  // One word per line; blank lines and '#' comments ignored.
  static StopwordList from_text(std::string_view text);
  static StopwordList from_file(const std::filesystem::path& path);
  static const StopwordList& english_default();

  bool contains(std::string_view token) const { return words_.contains(std::string(token)); }
  std::size_t size() const { return words_.size(); }

 private:
  std::unordered_set<std::string> words_;
};

std::vector<std::string> stopword_filter(const std::vector<std::string>& tokens,
                                         const StopwordList& stopwords = StopwordList::english_default());

std::string join_tokens(const std::vector<std::string>& tokens);

}  // namespace euphony
