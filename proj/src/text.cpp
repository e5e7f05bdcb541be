#include "euphony/text.hpp"

#include <fstream>
#include <regex>
#include <sstream>
#include <stdexcept>

#include "default_stopwords.hpp"

namespace euphony {

namespace {

bool is_ascii_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}
bool is_ascii_alpha(char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }
bool is_ascii_digit(char c) { return c >= '0' && c <= '9'; }
char to_lower(char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; }

const std::regex& url_pattern() {
  static const std::regex re(R"((https?://|www\.)[^\s]+)", std::regex::icase);
  return re;
}

const std::regex& mention_pattern() {
  static const std::regex re(R"(@[A-Za-z0-9_]+)");
  return re;
}

std::vector<std::string_view> split_whitespace(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && is_ascii_space(text[i])) ++i;
    std::size_t j = i;
    while (j < text.size() && !is_ascii_space(text[j])) ++j;
    if (j > i) out.push_back(text.substr(i, j - i));
    i = j;
  }
  return out;
}

// Splits one whitespace-delimited chunk into cleaned tokens.
void clean_chunk(std::string_view chunk, bool keep_inner_apostrophe, std::vector<std::string>& out) {
  std::string current;
  auto flush = [&] {
    if (!current.empty()) out.push_back(std::move(current));
    current.clear();
  };
  for (std::size_t i = 0; i < chunk.size(); ++i) {
    const char c = chunk[i];
    if (static_cast<unsigned char>(c) >= 0x80 || is_ascii_digit(c)) continue;
    if (is_ascii_alpha(c)) {
      current.push_back(to_lower(c));
    } else if (c == '\'') {
      if (keep_inner_apostrophe && !current.empty() && is_ascii_alpha(current.back()) &&
          i + 1 < chunk.size() && is_ascii_alpha(chunk[i + 1])) {
        current.push_back('\'');
      }
    } else {
      flush();
    }
  }
  flush();
}

}  // namespace

TokenizedSentence normalize(std::string_view text, TextMode mode) {
  TokenizedSentence out;
  out.raw = std::string(text);
  std::string work(text);
  if (mode == TextMode::Twitter) {
    work = std::regex_replace(work, url_pattern(), " " + std::string(kUrlTag) + " ");
    work = std::regex_replace(work, mention_pattern(), " " + std::string(kMentionTag) + " ");
  }
  for (auto chunk : split_whitespace(work)) {
    if (mode == TextMode::Twitter && (chunk == kUrlTag || chunk == kMentionTag)) {
      out.tokens.emplace_back(chunk);
      continue;
    }
    clean_chunk(chunk, false, out.tokens);
  }
  return out;
}

std::vector<std::string> phonetic_tokens(std::string_view text, TextMode mode) {
  std::string work(text);
  if (mode == TextMode::Twitter) {
    work = std::regex_replace(work, url_pattern(), " ");
    work = std::regex_replace(work, mention_pattern(), " ");
  }
  std::vector<std::string> out;
  for (auto chunk : split_whitespace(work)) clean_chunk(chunk, true, out);
  return out;
}

StopwordList StopwordList::from_text(std::string_view text) {
  StopwordList list;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    auto pos = line.find('#');
    if (pos != std::string::npos) line.erase(pos);
    for (auto word : split_whitespace(line)) {
      std::string w(word);
      for (auto& c : w) c = to_lower(c);
      list.words_.insert(std::move(w));
    }
  }
  return list;
}

StopwordList StopwordList::from_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read stopword list: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_text(buf.str());
}

const StopwordList& StopwordList::english_default() {
  static const StopwordList list = from_text(detail::kDefaultStopwordsText);
  return list;
}

std::vector<std::string> stopword_filter(const std::vector<std::string>& tokens,
                                         const StopwordList& stopwords) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) {
    if (!stopwords.contains(t)) out.push_back(t);
  }
  return out;
}

std::string join_tokens(const std::vector<std::string>& tokens) {
  std::string out;
  for (const auto& t : tokens) {
    if (!out.empty()) out.push_back(' ');
    out += t;
  }
  return out;
}

}  // namespace euphony
