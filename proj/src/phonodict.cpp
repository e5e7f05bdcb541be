#include "euphony/phonodict.hpp"

#include <fstream>
#include <sstream>

namespace euphony {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

// "READ(1)" -> "READ"; returns true when a variant suffix was present.
bool strip_variant_suffix(std::string_view& headword) {
  if (headword.size() < 4 || headword.back() != ')') return false;
  auto open = headword.rfind('(');
  if (open == std::string_view::npos || open == 0 || open + 2 >= headword.size()) return false;
  for (auto i = open + 1; i + 1 < headword.size(); ++i) {
    if (headword[i] < '0' || headword[i] > '9') return false;
  }
  headword = headword.substr(0, open);
  return true;
}

}  // namespace

DictParseError::DictParseError(std::size_t line, std::string detail)
    : std::runtime_error("dictionary line " + std::to_string(line) + ": " + detail), line_(line) {}

std::string fold_headword(std::string_view word) {
  std::string out(word);
  for (auto& c : out) {
    if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 'a' + 'A');
  }
  return out;
}

const std::vector<Pronunciation>* PronDict::variants(std::string_view word) const {
  auto it = entries_.find(fold_headword(word));
  return it == entries_.end() ? nullptr : &it->second;
}

std::optional<Pronunciation> PronDict::lookup(std::string_view word) const {
  const auto* v = variants(word);
  if (v == nullptr || v->empty()) return std::nullopt;
  return v->front();
}

std::size_t PronDict::variant_count() const {
  std::size_t n = 0;
  for (const auto& [_, v] : entries_) n += v.size();
  return n;
}

PronDict parse_dict(std::string_view raw_text, std::string source_label) {
  PronDict dict;
  std::string version_comment;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < raw_text.size()) {
    auto eol = raw_text.find('\n', pos);
    if (eol == std::string_view::npos) eol = raw_text.size();
    auto line = raw_text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;

    line = trim(line);
    if (line.empty()) continue;
    if (line.starts_with(";;;")) {
      if (version_comment.empty() && line.find("ersion") != std::string_view::npos) {
        version_comment = std::string(trim(line.substr(3)));
      }
      continue;
    }

    std::size_t split = 0;
    while (split < line.size() && !is_space(line[split])) ++split;
    auto headword = line.substr(0, split);
    auto rest = line.substr(split);
    // Newer cmudict releases append "# comment" after the phonemes.
    if (auto hash = rest.find(" #"); hash != std::string_view::npos) rest = rest.substr(0, hash);
    rest = trim(rest);

    const bool is_variant = strip_variant_suffix(headword);

    Pronunciation pron;
    std::size_t i = 0;
    while (i < rest.size()) {
      while (i < rest.size() && is_space(rest[i])) ++i;
      std::size_t j = i;
      while (j < rest.size() && !is_space(rest[j])) ++j;
      if (j > i) {
        auto sym = rest.substr(i, j - i);
        auto ph = parse_phoneme(sym);
        if (!ph) {
          throw DictParseError(line_no, "unknown phoneme symbol '" + std::string(sym) + "'");
        }
        pron.push_back(*ph);
      }
      i = j;
    }
    if (pron.empty()) {
      throw DictParseError(line_no, "headword '" + std::string(headword) + "' has no phonemes");
    }

    auto key = fold_headword(headword);
    auto [it, inserted] = dict.entries_.try_emplace(key);
    if (!inserted && !is_variant) {
      dict.warnings_.push_back("line " + std::to_string(line_no) + ": duplicate headword '" + key +
                               "' ignored");
      continue;
    }
    it->second.push_back(std::move(pron));
  }
  if (source_label.empty()) {
    dict.source_version_ = std::move(version_comment);
  } else if (version_comment.empty()) {
    dict.source_version_ = std::move(source_label);
  } else {
    dict.source_version_ = source_label + " (" + version_comment + ")";
  }
  return dict;
}

PronDict load_dict(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read dictionary: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_dict(buf.str(), path.filename().string());
}

}  // namespace euphony
