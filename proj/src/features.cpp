#include "euphony/features.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <unordered_map>

namespace euphony {

namespace {

double entropy2(double p) {
  if (p <= 0.0 || p >= 1.0) return 0.0;
  return -(p * std::log2(p) + (1.0 - p) * std::log2(1.0 - p));
}

constexpr std::string_view kLeftTag = "L|";
constexpr std::string_view kRightTag = "R|";

}  // namespace

FeatureSpec FeatureSpec::phonetic() {
  return {false, {kDevices.begin(), kDevices.end()}};
}
FeatureSpec FeatureSpec::ngram() { return {true, {}}; }
FeatureSpec FeatureSpec::all() { return {true, {kDevices.begin(), kDevices.end()}}; }
FeatureSpec FeatureSpec::ngram_plus(Device d) { return {true, {d}}; }

std::string FeatureSpec::name() const {
  if (!ngrams) {
    if (devices.size() == 4) return "phonetic";
    std::string out = "phonetic";
    for (auto d : devices) out += ":" + std::string(device_name(d));
    return out;
  }
  if (devices.empty()) return "ngram";
  if (devices.size() == 4) return "all";
  std::string out = "ngram";
  for (auto d : devices) out += "+" + std::string(device_name(d));
  return out;
}

FeatureSpec FeatureSpec::parse(std::string_view name) {
  if (name == "phonetic") return phonetic();
  if (name == "ngram") return ngram();
  if (name == "all") return all();
  if (name.starts_with("ngram+")) {
    auto dev = name.substr(6);
    for (auto d : kDevices) {
      if (dev == device_name(d)) return ngram_plus(d);
    }
  }
  throw std::invalid_argument("unknown feature set '" + std::string(name) + "'");
}

std::vector<std::string> extract_ngrams(const TokenizedSentence& ts, const StopwordList& stopwords) {
  std::vector<std::string> out;
  const auto& t = ts.tokens;
  for (const auto& tok : t) {
    if (!stopwords.contains(tok)) out.push_back("1:" + tok);
  }
  for (std::size_t i = 0; i + 1 < t.size(); ++i) out.push_back("2:" + t[i] + "_" + t[i + 1]);
  for (std::size_t i = 0; i + 2 < t.size(); ++i) {
    out.push_back("3:" + t[i] + "_" + t[i + 1] + "_" + t[i + 2]);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

SentenceFeatures sentence_features(std::string_view text, const FeatureContext& ctx) {
  if (ctx.dict == nullptr) throw std::invalid_argument("sentence_features: no dictionary");
  SentenceFeatures out;
  out.ngrams = extract_ngrams(normalize(text, ctx.mode), *ctx.stopwords);
  out.profile = score_sentence(text, *ctx.dict, ctx.mode);
  return out;
}

std::string side_feature_name(Side side, std::string_view ngram) {
  std::string out(side == Side::Left ? kLeftTag : kRightTag);
  out += ngram;
  return out;
}

FeatureSpace::FeatureSpace(FeatureSpec spec, std::vector<std::string> ngram_names)
    : spec_(std::move(spec)), ngram_names_(std::move(ngram_names)) {
  if (!spec_.ngrams && !ngram_names_.empty()) {
    throw std::invalid_argument("FeatureSpace: n-gram names given for a phonetic-only spec");
  }
  index_.reserve(ngram_names_.size());
  for (std::uint32_t i = 0; i < ngram_names_.size(); ++i) index_.emplace_back(ngram_names_[i], i);
  std::sort(index_.begin(), index_.end());
  for (std::size_t i = 1; i < index_.size(); ++i) {
    if (index_[i].first == index_[i - 1].first) {
      throw std::invalid_argument("FeatureSpace: duplicate feature '" + index_[i].first + "'");
    }
  }
}

std::vector<std::string> FeatureSpace::column_names() const {
  auto out = ngram_names_;
  for (auto side : {Side::Left, Side::Right}) {
    for (auto d : spec_.devices) {
      out.push_back(std::string(side == Side::Left ? kLeftTag : kRightTag) + "phon:" +
                    std::string(device_short(d)));
    }
  }
  return out;
}

std::int64_t FeatureSpace::column(std::string_view side_tagged) const {
  auto it = std::lower_bound(index_.begin(), index_.end(), side_tagged,
                             [](const auto& entry, std::string_view key) { return entry.first < key; });
  if (it == index_.end() || it->first != side_tagged) return -1;
  return it->second;
}

SparseVector FeatureSpace::vectorize(const SentenceFeatures& left, const SentenceFeatures& right) const {
  SparseVector out;
  if (spec_.ngrams) {
    std::string key;
    for (auto [side, sf] : {std::pair{Side::Left, &left}, std::pair{Side::Right, &right}}) {
      for (const auto& g : sf->ngrams) {
        key.assign(side == Side::Left ? kLeftTag : kRightTag);
        key += g;
        auto col = column(key);
        if (col >= 0) out.emplace_back(static_cast<std::uint32_t>(col), 1.0);
      }
    }
    std::sort(out.begin(), out.end());
  }
  auto base = static_cast<std::uint32_t>(ngram_names_.size());
  for (const auto* sf : {&left, &right}) {
    for (auto d : spec_.devices) {
      const double v = sf->profile.score(d);
      if (v != 0.0) out.emplace_back(base, v);
      ++base;
    }
  }
  return out;
}

PairFeatureVector build_features(const SentencePair& pair, const FeatureSpace& space,
                                 const FeatureContext& ctx) {
  auto left = sentence_features(pair.left, ctx);
  auto right = sentence_features(pair.right, ctx);
  return {space.vectorize(left, right), pair.label};
}

double information_gain_counts(std::size_t n, std::size_t n_positive, std::size_t present,
                               std::size_t present_positive) {
  if (n == 0) return 0.0;
  const double nd = static_cast<double>(n);
  const double h = entropy2(static_cast<double>(n_positive) / nd);
  const std::size_t absent = n - present;
  const std::size_t absent_positive = n_positive - present_positive;
  double cond = 0.0;
  if (present > 0) {
    cond += static_cast<double>(present) / nd *
            entropy2(static_cast<double>(present_positive) / static_cast<double>(present));
  }
  if (absent > 0) {
    cond += static_cast<double>(absent) / nd *
            entropy2(static_cast<double>(absent_positive) / static_cast<double>(absent));
  }
  return std::max(0.0, h - cond);
}

double information_gain(const std::vector<bool>& feature, const std::vector<bool>& labels) {
  if (feature.size() != labels.size()) {
    throw std::invalid_argument("information_gain: column and label lengths differ");
  }
  std::size_t pos = 0, present = 0, present_pos = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    pos += labels[i];
    present += feature[i];
    present_pos += feature[i] && labels[i];
  }
  return information_gain_counts(labels.size(), pos, present, present_pos);
}

std::vector<RankedFeature> rank_ngrams(const std::vector<TrainingInstance>& instances) {
  // name -> (present, present with label Left)
  std::unordered_map<std::string, std::pair<std::size_t, std::size_t>> counts;
  std::size_t positives = 0;
  std::string key;
  for (const auto& inst : instances) {
    const bool positive = inst.label == Side::Left;
    positives += positive;
    for (auto [side, sf] : {std::pair{Side::Left, inst.left}, std::pair{Side::Right, inst.right}}) {
      for (const auto& g : sf->ngrams) {
        key.assign(side == Side::Left ? kLeftTag : kRightTag);
        key += g;
        auto& c = counts[key];
        ++c.first;
        c.second += positive;
      }
    }
  }
  std::vector<RankedFeature> ranked;
  ranked.reserve(counts.size());
  for (const auto& [name, c] : counts) {
    ranked.push_back({name, information_gain_counts(instances.size(), positives, c.first, c.second)});
  }
  std::sort(ranked.begin(), ranked.end(), [](const RankedFeature& a, const RankedFeature& b) {
    if (a.gain != b.gain) return a.gain > b.gain;
    return a.name < b.name;
  });
  return ranked;
}

FeatureSpace select_top_k(const FeatureSpec& spec, const std::vector<RankedFeature>& ranked,
                          std::size_t k, bool* clamped) {
  if (clamped) *clamped = false;
  if (!spec.ngrams) return FeatureSpace(spec, {});
  if (k > ranked.size()) {
    k = ranked.size();
    if (clamped) *clamped = true;
  }
  std::vector<std::string> names;
  names.reserve(k);
  for (std::size_t i = 0; i < k; ++i) names.push_back(ranked[i].name);
  return FeatureSpace(spec, std::move(names));
}

}  // namespace euphony
