#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "euphony/corpus.hpp"

namespace euphony::testing {

// Two disjoint word inventories drawn from the fixture dictionary.
enum class Vocabulary { A, B };

// Pairs of a tongue-twister-style sentence (alliteration and rhyme groups)
// and a plain sentence of the same length; the persuasive side is random.
PairCorpus euphonic_corpus(std::size_t pairs, std::uint64_t seed, Vocabulary vocab = Vocabulary::A,
                           std::string name = "synthetic");

// Both sides draw each word uniformly from the same rhyme groups; the
// persuasive side is built from rhyming couplets, the other side never
// repeats a group. Unigram marginals match across sides.
PairCorpus rhyme_signal_corpus(std::size_t pairs, std::uint64_t seed, std::string name = "rhyme");

// Random sentence of 1..max_words fixture words.
std::string random_fixture_sentence(std::uint64_t& state, std::size_t max_words);

}  // namespace euphony::testing
