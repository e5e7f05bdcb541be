#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>

#include "euphony/features.hpp"
#include "support/fixture.hpp"
#include "support/oracles.hpp"

using namespace euphony;
using Names = std::vector<std::string>;

namespace {

FeatureContext ctx() { return FeatureContext{&testing::fixture_dict()}; }

}  // namespace

TEST_CASE("extract_ngrams") {
  CHECK(extract_ngrams(normalize("the big dog")) ==
        Names{"1:big", "1:dog", "2:big_dog", "2:the_big", "3:the_big_dog"});
  CHECK(extract_ngrams(normalize("")).empty());
  CHECK(extract_ngrams(normalize("the")).empty());
  CHECK(extract_ngrams(normalize("dog dog")) == Names{"1:dog", "2:dog_dog"});
}

TEST_CASE("feature spec names") {
  CHECK(FeatureSpec::phonetic().name() == "phonetic");
  CHECK(FeatureSpec::ngram().name() == "ngram");
  CHECK(FeatureSpec::all().name() == "all");
  CHECK(FeatureSpec::ngram_plus(Device::Rhyme).name() == "ngram+rhyme");
  for (const auto& s : {FeatureSpec::phonetic(), FeatureSpec::all(), FeatureSpec::ngram_plus(Device::Plosive)}) {
    CHECK(FeatureSpec::parse(s.name()) == s);
  }
  CHECK_THROWS(FeatureSpec::parse("bogus"));
}

TEST_CASE("phonetic space has 8 dimensions") {
  FeatureSpace space(FeatureSpec::phonetic(), {});
  CHECK(space.dimension() == 8);
  auto v = build_features({"p", "papa", "so so", Side::Left, "p"}, space, ctx());
  std::vector<double> dense(8, 0.0);
  for (auto [i, x] : v.values) dense[i] = x;
  auto papa = score_sentence("papa", testing::fixture_dict());
  // (rh, al, pl, ho) for each side; "so so" repeats a word verbatim.
  CHECK(dense == std::vector<double>{0, 0, 0.5, papa.homogeneity, 1, 1, 0, 0.5});
  CHECK(v.label == Side::Left);
}

TEST_CASE("side blocks swap with the pair") {
  FeatureSpace space(FeatureSpec::all(), {"L|1:dog", "R|1:dog", "L|1:cat", "R|1:cat", "L|2:big_dog", "R|2:big_dog"});
  SentencePair p{"p", "the big dog", "a cat sat", Side::Left, "p"};
  SentencePair twin{"p~swap", p.right, p.left, Side::Right, "p"};
  auto a = build_features(p, space, ctx()).values;
  auto b = build_features(twin, space, ctx()).values;
  auto names = space.column_names();
  auto swap_name = [](std::string n) {
    if (n.starts_with("L|")) n[0] = 'R';
    else if (n.starts_with("R|")) n[0] = 'L';
    return n;
  };
  std::map<std::string, double> ma, mb;
  for (auto [i, x] : a) ma[swap_name(names[i])] = x;
  for (auto [i, x] : b) mb[names[i]] = x;
  CHECK(ma == mb);

  SentencePair same{"s", "dog dog", "dog dog", Side::Left, "s"};
  auto s = build_features(same, space, ctx()).values;
  std::map<std::string, double> ms;
  for (auto [i, x] : s) ms[names[i]] = x;
  for (auto& [n, x] : ms) CHECK(ms[swap_name(n)] == x);
  for (auto [i, x] : a) {
    if (names[i].find("phon:") == std::string::npos) CHECK(x == 1.0);
    CHECK(x >= 0.0);
    CHECK(x <= 1.0);
  }
  CHECK(space.column("L|1:dog") >= 0);
  CHECK(space.column("L|1:zebra") == -1);
}

TEST_CASE("information gain") {
  CHECK(information_gain({true, true, false, false}, {true, true, false, false}) == doctest::Approx(1.0));
  CHECK(information_gain({true, false, true, false}, {true, true, false, false}) == doctest::Approx(0.0));
  // Agreeing with balanced labels on 3 of 4 instances forces a 3/1 split.
  const double split = testing::information_gain_oracle({1, 1, 1, 0}, {1, 1, 0, 0});
  CHECK(split == doctest::Approx(0.3113).epsilon(1e-3));
  CHECK(information_gain({true, true, true, false}, {true, true, false, false}) == doctest::Approx(split));
  // Balanced feature agreeing at rate 3/4: 1 - H(1/4).
  const double balanced = testing::information_gain_oracle({1, 1, 1, 0, 0, 0, 0, 1}, {1, 1, 1, 1, 0, 0, 0, 0});
  CHECK(balanced == doctest::Approx(0.1887).epsilon(1e-3));
  CHECK(information_gain({true, true, true, false, false, false, false, true},
                         {true, true, true, true, false, false, false, false}) == doctest::Approx(balanced));

  std::mt19937_64 rng(12);
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(2, 40)(rng);
    std::vector<bool> fb(n), yb(n);
    std::vector<int> fi(n), yi(n);
    for (std::size_t i = 0; i < n; ++i) {
      fi[i] = fb[i] = std::bernoulli_distribution(0.4)(rng);
      yi[i] = yb[i] = std::bernoulli_distribution(0.5)(rng);
    }
    CHECK(information_gain(fb, yb) == doctest::Approx(testing::information_gain_oracle(fi, yi)).epsilon(1e-9));
  }
}

TEST_CASE("rank and select") {
  std::vector<SentenceFeatures> sf;
  for (const char* s : {"dog bark", "cat purr", "dog run", "cat nap"}) sf.push_back(sentence_features(s, ctx()));
  // Left sentence contains "dog" iff label is Left.
  std::vector<TrainingInstance> inst{
      {&sf[0], &sf[1], Side::Left}, {&sf[2], &sf[3], Side::Left},
      {&sf[1], &sf[0], Side::Right}, {&sf[3], &sf[2], Side::Right}};
  auto ranked = rank_ngrams(inst);
  REQUIRE(!ranked.empty());
  CHECK(ranked[0].gain == doctest::Approx(1.0));
  for (std::size_t i = 1; i < ranked.size(); ++i) {
    CHECK(ranked[i - 1].gain >= ranked[i].gain);
    if (ranked[i - 1].gain == ranked[i].gain) CHECK(ranked[i - 1].name < ranked[i].name);
  }
  // Four perfect predictors tie: L|1:dog, L|1:cat... sorted lexicographically.
  Names perfect;
  for (const auto& r : ranked) {
    if (r.gain > 0.999) perfect.push_back(r.name);
  }
  CHECK(perfect == Names{"L|1:cat", "L|1:dog", "R|1:cat", "R|1:dog"});

  auto top1 = select_top_k(FeatureSpec::ngram(), ranked, 1);
  CHECK(top1.ngram_names() == Names{"L|1:cat"});
  bool clamped = false;
  auto all = select_top_k(FeatureSpec::ngram(), ranked, ranked.size(), &clamped);
  CHECK_FALSE(clamped);
  CHECK(all.ngram_names().size() == ranked.size());
  select_top_k(FeatureSpec::ngram(), ranked, ranked.size() + 5, &clamped);
  CHECK(clamped);
  CHECK(rank_ngrams(inst).size() == ranked.size());
  CHECK(select_top_k(FeatureSpec::phonetic(), ranked, 5).dimension() == 8);
}
