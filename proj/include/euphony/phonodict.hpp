#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "euphony/phoneme.hpp"

namespace euphony {

class DictParseError : public std::runtime_error {
 public:
  DictParseError(std::size_t line, std::string detail);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Immutable ARPABET pronouncing dictionary. Headwords are stored uppercase;
// each maps to its pronunciation variants in file order.
class PronDict {
 public:
  PronDict() = default;

  // First (base) variant of the case-folded word, or nullopt when OOV.
  std::optional<Pronunciation> lookup(std::string_view word) const;
  const std::vector<Pronunciation>* variants(std::string_view word) const;

  std::size_t headword_count() const { return entries_.size(); }
  std::size_t variant_count() const;
  bool empty() const { return entries_.empty(); }

  const std::string& source_version() const { return source_version_; }
  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  friend PronDict parse_dict(std::string_view, std::string);

  std::unordered_map<std::string, std::vector<Pronunciation>> entries_;
  std::string source_version_;
  std::vector<std::string> warnings_;
};

// Parses CMU-dict formatted text (";;;" comments, "WORD  PH1 PH2 ...",
// variants as "WORD(1)"). Stress digits are dropped. Throws DictParseError
// on unknown phoneme symbols or headwords without phonemes; duplicate base
// headwords keep the first entry and add a warning. The source version is
// the label, extended with the first ";;;" comment mentioning a version.
PronDict parse_dict(std::string_view raw_text, std::string source_label = {});

// Reads and parses a dictionary file. Throws std::runtime_error if the file
// cannot be read.
PronDict load_dict(const std::filesystem::path& path);

std::string fold_headword(std::string_view word);

}  // namespace euphony
