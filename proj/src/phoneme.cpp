#include "euphony/phoneme.hpp"

#include <algorithm>

namespace euphony {

namespace {

constexpr std::array<std::string_view, kPhonemeCount> kSymbols = {
    "AA", "AE", "AH", "AO", "AW", "AY", "EH", "ER", "EY", "IH", "IY", "OW", "OY",
    "UH", "UW", "B",  "CH", "D",  "DH", "F",  "G",  "HH", "JH", "K",  "L",  "M",
    "N",  "NG", "P",  "R",  "S",  "SH", "T",  "TH", "V",  "W",  "Y",  "Z",  "ZH"};

constexpr std::array<Phoneme, kPhonemeCount> make_all() {
  std::array<Phoneme, kPhonemeCount> out{};
  for (std::size_t i = 0; i < kPhonemeCount; ++i) out[i] = static_cast<Phoneme>(i);
  return out;
}

constexpr std::array<Phoneme, kPhonemeCount> kAll = make_all();

}  // namespace

std::string_view symbol(Phoneme p) { return kSymbols[static_cast<std::size_t>(p)]; }

PhonemeClass phoneme_class(Phoneme p) {
  switch (p) {
    case Phoneme::P:
    case Phoneme::B:
    case Phoneme::T:
    case Phoneme::D:
    case Phoneme::K:
    case Phoneme::G:
      return PhonemeClass::Plosive;
    default:
      break;
  }
  return static_cast<std::size_t>(p) <= static_cast<std::size_t>(Phoneme::UW)
             ? PhonemeClass::Vowel
             : PhonemeClass::OtherConsonant;
}

std::optional<Phoneme> parse_phoneme(std::string_view text) {
  if (!text.empty() && text.back() >= '0' && text.back() <= '2') text.remove_suffix(1);
  auto it = std::find(kSymbols.begin(), kSymbols.end(), text);
  if (it == kSymbols.end()) return std::nullopt;
  return static_cast<Phoneme>(it - kSymbols.begin());
}

const std::array<Phoneme, kPhonemeCount>& all_phonemes() { return kAll; }

}  // namespace euphony
