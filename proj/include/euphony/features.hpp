#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "euphony/corpus.hpp"
#include "euphony/phonodict.hpp"
#include "euphony/scorer.hpp"
#include "euphony/text.hpp"

namespace euphony {

using SparseVector = std::vector<std::pair<std::uint32_t, double>>;  // sorted by index

// Which feature blocks a model uses: optional n-grams plus a subset of the
// phonetic devices, each present once per side.
struct FeatureSpec {
  bool ngrams = false;
  std::vector<Device> devices;

  static FeatureSpec phonetic();
  static FeatureSpec ngram();
  static FeatureSpec all();
  static FeatureSpec ngram_plus(Device d);

  std::string name() const;  // "phonetic", "ngram", "all", "ngram+rhyme", ...
  static FeatureSpec parse(std::string_view name);

  bool operator==(const FeatureSpec&) const = default;
};

// Namespaced n-gram names: unigrams (stopwords removed) "1:dog", bigrams and
// trigrams over the unfiltered tokens "2:the_big", "3:the_big_dog". Sorted,
// unique.
std::vector<std::string> extract_ngrams(const TokenizedSentence& ts,
                                        const StopwordList& stopwords = StopwordList::english_default());

// Everything needed to turn raw sentences into features.
struct FeatureContext {
  const PronDict* dict = nullptr;
  const StopwordList* stopwords = &StopwordList::english_default();
  TextMode mode = TextMode::Generic;
};

struct SentenceFeatures {
  std::vector<std::string> ngrams;
  PhoneticProfile profile;
};

SentenceFeatures sentence_features(std::string_view text, const FeatureContext& ctx);

// Side-tagged feature name, e.g. "L|2:big_dog".
std::string side_feature_name(Side side, std::string_view ngram);

// Selected vocabulary plus the fixed phonetic block. Column layout:
// [ngram_names in order] then left-side devices then right-side devices.
class FeatureSpace {
 public:
  FeatureSpace() = default;
  FeatureSpace(FeatureSpec spec, std::vector<std::string> ngram_names);

  const FeatureSpec& spec() const { return spec_; }
  const std::vector<std::string>& ngram_names() const { return ngram_names_; }
  std::size_t dimension() const { return ngram_names_.size() + 2 * spec_.devices.size(); }
  std::vector<std::string> column_names() const;

  // Column of a side-tagged n-gram name, or -1 when not selected.
  std::int64_t column(std::string_view side_tagged) const;

  SparseVector vectorize(const SentenceFeatures& left, const SentenceFeatures& right) const;

 private:
  FeatureSpec spec_;
  std::vector<std::string> ngram_names_;
  std::vector<std::pair<std::string, std::uint32_t>> index_;  // sorted by name
};

struct PairFeatureVector {
  SparseVector values;
  Side label = Side::Left;
};

PairFeatureVector build_features(const SentencePair& pair, const FeatureSpace& space,
                                 const FeatureContext& ctx);

// Information gain (bits) of a binary feature column about binary labels.
double information_gain(const std::vector<bool>& feature, const std::vector<bool>& labels);
double information_gain_counts(std::size_t n, std::size_t n_positive, std::size_t present,
                               std::size_t present_positive);

struct RankedFeature {
  std::string name;
  double gain = 0.0;
};

// Ranks candidate side-tagged n-gram names by information gain over the
// given training pairs (descending gain, ties by name).
struct TrainingInstance {
  const SentenceFeatures* left = nullptr;
  const SentenceFeatures* right = nullptr;
  Side label = Side::Left;
};

std::vector<RankedFeature> rank_ngrams(const std::vector<TrainingInstance>& instances);

// Keeps the k highest-gain n-grams (clamped to the vocabulary size; sets
// *clamped when that happens). Phonetic-only specs ignore k.
FeatureSpace select_top_k(const FeatureSpec& spec, const std::vector<RankedFeature>& ranked,
                          std::size_t k, bool* clamped = nullptr);

}  // namespace euphony
