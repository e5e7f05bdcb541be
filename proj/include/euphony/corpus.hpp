#pragma once

#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace euphony {

enum class Side { Left, Right };

inline Side flip(Side s) { return s == Side::Left ? Side::Right : Side::Left; }
std::string_view side_name(Side s);

struct SentencePair {
  std::string pair_id;
  std::string left;
  std::string right;
  Side label = Side::Left;  // side holding the persuasive sentence
  std::string group;        // shared by a pair and its swapped twin

  const std::string& persuasive() const { return label == Side::Left ? left : right; }
  const std::string& non_persuasive() const { return label == Side::Left ? right : left; }

  bool operator==(const SentencePair&) const = default;
};

struct PairCorpus {
  std::string name;
  std::vector<SentencePair> pairs;
  bool symmetrized = false;

  std::size_t size() const { return pairs.size(); }
  bool empty() const { return pairs.empty(); }
  bool operator==(const PairCorpus&) const = default;
};

enum class PairFormat { Tsv, Jsonl };

PairFormat parse_pair_format(std::string_view name);  // "tsv" | "jsonl"
PairFormat guess_pair_format(const std::filesystem::path& path);

struct RowError {
  std::size_t row = 0;  // 1-based line number in the file
  std::string message;
};

struct LoadResult {
  PairCorpus corpus;
  std::vector<RowError> errors;
};

// Reads a pair file. Malformed rows are skipped and reported; an unreadable
// file or a missing TSV header throws std::runtime_error.
LoadResult load_pairs(const std::filesystem::path& path, PairFormat format, std::string name = {});
LoadResult parse_pairs(std::string_view text, PairFormat format, std::string name = {});

void write_pairs(const PairCorpus& corpus, const std::filesystem::path& path, PairFormat format);
std::string format_pairs(const PairCorpus& corpus, PairFormat format);

// Appends the swapped twin (right, left, flipped label) of every pair.
// Throws std::logic_error on an already symmetrized corpus.
PairCorpus symmetrize(const PairCorpus& corpus);

}  // namespace euphony
