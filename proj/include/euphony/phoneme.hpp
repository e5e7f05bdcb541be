#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

namespace euphony {

enum class PhonemeClass : std::uint8_t { Vowel, Plosive, OtherConsonant };

// The 39 stress-stripped ARPABET symbols used by the CMU pronouncing dictionary.
enum class Phoneme : std::uint8_t {
  AA, AE, AH, AO, AW, AY, EH, ER, EY, IH, IY, OW, OY, UH, UW,  // vowels
  B, CH, D, DH, F, G, HH, JH, K, L, M, N, NG, P, R, S, SH, T, TH, V, W, Y, Z, ZH
};

inline constexpr std::size_t kPhonemeCount = 39;

std::string_view symbol(Phoneme p);
PhonemeClass phoneme_class(Phoneme p);

inline bool is_plosive(Phoneme p) { return phoneme_class(p) == PhonemeClass::Plosive; }
inline bool is_vowel(Phoneme p) { return phoneme_class(p) == PhonemeClass::Vowel; }

// Parses a symbol with or without a trailing stress digit ("AY1" -> AY).
std::optional<Phoneme> parse_phoneme(std::string_view text);

const std::array<Phoneme, kPhonemeCount>& all_phonemes();

using Pronunciation = std::vector<Phoneme>;

}  // namespace euphony
