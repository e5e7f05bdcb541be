#include <doctest.h>

#include <algorithm>
#include <sstream>

#include "euphony/phonodict.hpp"
#include "support/fixture.hpp"

using namespace euphony;

namespace {

std::vector<std::string> symbols(const Pronunciation& p) {
  std::vector<std::string> out;
  for (auto ph : p) out.emplace_back(symbol(ph));
  return out;
}

}  // namespace

TEST_CASE("phoneme inventory") {
  CHECK(all_phonemes().size() == 39);
  std::size_t vowels = 0;
  std::size_t plosives = 0;
  for (auto p : all_phonemes()) {
    vowels += is_vowel(p);
    plosives += is_plosive(p);
    CHECK(parse_phoneme(symbol(p)) == p);
  }
  CHECK(vowels == 15);
  CHECK(plosives == 6);
  for (const char* s : {"P", "B", "T", "D", "K", "G"}) CHECK(is_plosive(*parse_phoneme(s)));
  for (const char* s : {"AA", "AE", "AH", "AO", "AW", "AY", "EH", "ER", "EY", "IH", "IY", "OW", "OY", "UH", "UW"}) {
    CHECK(phoneme_class(*parse_phoneme(s)) == PhonemeClass::Vowel);
  }
  CHECK(parse_phoneme("AY1") == parse_phoneme("AY"));
  CHECK_FALSE(parse_phoneme("XX").has_value());
  CHECK_FALSE(parse_phoneme("AY3").has_value());
}

TEST_CASE("parse_dict basics") {
  CHECK(parse_dict("").empty());
  CHECK(parse_dict(";;; comment line\n").empty());

  auto d = parse_dict("READ  R IY1 D\nREAD(1)  R EH1 D\n");
  CHECK(d.headword_count() == 1);
  CHECK(d.variant_count() == 2);
  const auto* v = d.variants("read");
  REQUIRE(v != nullptr);
  REQUIRE(v->size() == 2);
  CHECK(symbols((*v)[0]) == std::vector<std::string>{"R", "IY", "D"});
  CHECK(symbols((*v)[1]) == std::vector<std::string>{"R", "EH", "D"});
  CHECK(symbols(*d.lookup("READ")) == std::vector<std::string>{"R", "IY", "D"});
}

TEST_CASE("parse_dict errors carry line numbers") {
  try {
    parse_dict(";;; header\nCAT  K AE1 T\nDOG  D QQ G\n");
    FAIL("expected DictParseError");
  } catch (const DictParseError& e) {
    CHECK(e.line() == 3);
    CHECK(std::string(e.what()).find("QQ") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_dict("CAT\n"), DictParseError);
}

TEST_CASE("duplicate base headword keeps the first and warns") {
  auto d = parse_dict("CAT  K AE1 T\nCAT  B AE1 T\n");
  CHECK(symbols(*d.lookup("cat")) == std::vector<std::string>{"K", "AE", "T"});
  CHECK(d.variant_count() == 1);
  CHECK(d.warnings().size() == 1);
}

TEST_CASE("fixture lookups") {
  const auto& d = testing::fixture_dict();
  CHECK(symbols(*d.lookup("the")) == std::vector<std::string>{"DH", "AH"});
  CHECK(d.lookup("THE") == d.lookup("the"));
  CHECK_FALSE(d.lookup("qwxzqq").has_value());
  CHECK(symbols(*d.lookup("don't")) == std::vector<std::string>{"D", "OW", "N", "T"});
  CHECK(d.source_version().find("0.7a") != std::string::npos);
}

TEST_CASE("round trip: one variant per well-formed line") {
  std::ostringstream text;
  text << ";;; test\n\n";
  std::size_t lines = 0;
  const auto& words = testing::fixture_words();
  for (std::size_t i = 0; i < words.size(); ++i) {
    const auto* vs = testing::fixture_dict().variants(words[i]);
    REQUIRE(vs != nullptr);
    for (std::size_t k = 0; k < vs->size(); ++k) {
      std::string head = fold_headword(words[i]);
      if (k > 0) head += "(" + std::to_string(k) + ")";
      text << head << " ";
      for (auto ph : (*vs)[k]) text << " " << symbol(ph) << (is_vowel(ph) ? "1" : "");
      text << "\n";
      ++lines;
    }
  }
  auto d = parse_dict(text.str());
  CHECK(d.variant_count() == lines);
  CHECK(d.headword_count() == words.size());
  for (const auto& w : words) {
    for (const auto& p : *d.variants(w)) {
      for (auto ph : p) {
        auto s = symbol(ph);
        CHECK(std::none_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }));
      }
    }
    CHECK(*d.variants(w) == *testing::fixture_dict().variants(w));
    CHECK(d.lookup(w) == d.lookup(w));
  }
}
