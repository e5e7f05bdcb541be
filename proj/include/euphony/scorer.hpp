#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "euphony/phonodict.hpp"
#include "euphony/text.hpp"

namespace euphony {

// The four euphony devices, in the canonical column order used by reports
// and feature vectors.
enum class Device : std::size_t { Rhyme = 0, Alliteration = 1, Plosive = 2, Homogeneity = 3 };

inline constexpr std::array<Device, 4> kDevices = {Device::Rhyme, Device::Alliteration,
                                                   Device::Plosive, Device::Homogeneity};

std::string_view device_name(Device d);   // "rhyme", "alliteration", ...
std::string_view device_short(Device d);  // "rh", "al", "pl", "ho"

struct SentencePhonemes {
  std::vector<Pronunciation> words;  // in-dictionary tokens only
  Pronunciation flat;
  std::size_t oov_tokens = 0;
  std::size_t covered_tokens = 0;

  std::size_t total() const { return flat.size(); }
};

struct PhoneticProfile {
  double rhyme = 0.0;
  double alliteration = 0.0;
  double plosive = 0.0;
  double homogeneity = 0.0;
  std::size_t total_phonemes = 0;
  std::size_t distinct_phonemes = 0;
  std::size_t oov_tokens = 0;
  std::size_t covered_tokens = 0;

  double score(Device d) const;
  std::array<double, 4> scores() const { return {rhyme, alliteration, plosive, homogeneity}; }
};

SentencePhonemes phonemize(const std::vector<std::string>& tokens, const PronDict& dict);

// Fraction of phonemes that are plosives.
double plosive_score(const SentencePhonemes& sp);

// 1 - distinct/total over the flat phoneme sequence.
double homogeneity_score(const SentencePhonemes& sp);

// Each word contributes the length of the longest phonetic prefix it shares
// with any other word of the sentence; the sum is divided by the phoneme
// count.
double alliteration_score(const SentencePhonemes& sp);

// Same as alliteration_score, on word endings.
double rhyme_score(const SentencePhonemes& sp);

std::size_t distinct_phonemes(const Pronunciation& flat);

PhoneticProfile profile(const SentencePhonemes& sp);

PhoneticProfile score_sentence(std::string_view text, const PronDict& dict,
                               TextMode mode = TextMode::Generic);

}  // namespace euphony
