#include "euphony/scorer.hpp"

#include <algorithm>
#include <bitset>

namespace euphony {

namespace {

std::size_t common_prefix(const Pronunciation& a, const Pronunciation& b) {
  auto [ia, ib] = std::mismatch(a.begin(), a.end(), b.begin(), b.end());
  return static_cast<std::size_t>(ia - a.begin());
}

std::size_t common_suffix(const Pronunciation& a, const Pronunciation& b) {
  auto [ia, ib] = std::mismatch(a.rbegin(), a.rend(), b.rbegin(), b.rend());
  return static_cast<std::size_t>(ia - a.rbegin());
}

template <typename Match>
double shared_edge_score(const SentencePhonemes& sp, Match match) {
  const auto total = sp.total();
  if (total == 0 || sp.words.size() < 2) return 0.0;
  std::size_t sum = 0;
  for (std::size_t i = 0; i < sp.words.size(); ++i) {
    std::size_t best = 0;
    for (std::size_t j = 0; j < sp.words.size(); ++j) {
      if (j != i) best = std::max(best, match(sp.words[i], sp.words[j]));
    }
    sum += best;
  }
  return static_cast<double>(sum) / static_cast<double>(total);
}

}  // namespace

std::string_view device_name(Device d) {
  switch (d) {
    case Device::Rhyme: return "rhyme";
    case Device::Alliteration: return "alliteration";
    case Device::Plosive: return "plosive";
    case Device::Homogeneity: return "homogeneity";
  }
  return "?";
}

std::string_view device_short(Device d) {
  switch (d) {
    case Device::Rhyme: return "rh";
    case Device::Alliteration: return "al";
    case Device::Plosive: return "pl";
    case Device::Homogeneity: return "ho";
  }
  return "?";
}

double PhoneticProfile::score(Device d) const {
  switch (d) {
    case Device::Rhyme: return rhyme;
    case Device::Alliteration: return alliteration;
    case Device::Plosive: return plosive;
    case Device::Homogeneity: return homogeneity;
  }
  return 0.0;
}

SentencePhonemes phonemize(const std::vector<std::string>& tokens, const PronDict& dict) {
  SentencePhonemes sp;
  for (const auto& token : tokens) {
    if (token.empty()) continue;
    auto pron = dict.lookup(token);
    if (!pron) {
      ++sp.oov_tokens;
      continue;
    }
    ++sp.covered_tokens;
    sp.flat.insert(sp.flat.end(), pron->begin(), pron->end());
    sp.words.push_back(std::move(*pron));
  }
  return sp;
}

double plosive_score(const SentencePhonemes& sp) {
  if (sp.flat.empty()) return 0.0;
  auto plosives = std::count_if(sp.flat.begin(), sp.flat.end(), is_plosive);
  return static_cast<double>(plosives) / static_cast<double>(sp.flat.size());
}

std::size_t distinct_phonemes(const Pronunciation& flat) {
  std::bitset<kPhonemeCount> seen;
  for (auto p : flat) seen.set(static_cast<std::size_t>(p));
  return seen.count();
}

double homogeneity_score(const SentencePhonemes& sp) {
  if (sp.flat.empty()) return 0.0;
  return 1.0 - static_cast<double>(distinct_phonemes(sp.flat)) / static_cast<double>(sp.flat.size());
}

double alliteration_score(const SentencePhonemes& sp) { return shared_edge_score(sp, common_prefix); }

double rhyme_score(const SentencePhonemes& sp) { return shared_edge_score(sp, common_suffix); }

PhoneticProfile profile(const SentencePhonemes& sp) {
  PhoneticProfile p;
  p.rhyme = rhyme_score(sp);
  p.alliteration = alliteration_score(sp);
  p.plosive = plosive_score(sp);
  p.homogeneity = homogeneity_score(sp);
  p.total_phonemes = sp.flat.size();
  p.distinct_phonemes = distinct_phonemes(sp.flat);
  p.oov_tokens = sp.oov_tokens;
  p.covered_tokens = sp.covered_tokens;
  return p;
}

PhoneticProfile score_sentence(std::string_view text, const PronDict& dict, TextMode mode) {
  return profile(phonemize(phonetic_tokens(text, mode), dict));
}

}  // namespace euphony
