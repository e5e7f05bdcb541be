#include "euphony/analysis.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "euphony/parallel.hpp"

namespace euphony {

Thresholds Thresholds::reference_constants() {
  Thresholds th;
  th.values = {0.55, 0.58, 0.20, 0.68};
  th.source_size = 534;
  th.source = "reference-constants";
  return th;
}

Thresholds derive_thresholds(const std::vector<PhoneticProfile>& reference_profiles) {
  if (reference_profiles.empty()) throw std::invalid_argument("derive_thresholds: empty reference set");
  Thresholds th;
  for (auto d : kDevices) {
    std::vector<double> s;
    s.reserve(reference_profiles.size());
    for (const auto& p : reference_profiles) s.push_back(p.score(d));
    th.values[static_cast<std::size_t>(d)] = stats::summarize(s).mean;
  }
  th.source_size = reference_profiles.size();
  th.source = "derived";
  return th;
}

Thresholds derive_thresholds(const std::vector<std::string>& reference, const PronDict& dict,
                             TextMode mode) {
  std::vector<PhoneticProfile> profiles;
  profiles.reserve(reference.size());
  for (const auto& s : reference) profiles.push_back(score_sentence(s, dict, mode));
  return derive_thresholds(profiles);
}

std::string format_thresholds(const Thresholds& th) {
  std::ostringstream out;
  out << "# source: " << th.source << '\n';
  out << "# source_size: " << th.source_size << '\n';
  out << "device\tthreshold\n";
  out << std::fixed << std::setprecision(6);
  for (auto d : kDevices) out << device_name(d) << '\t' << th.at(d) << '\n';
  return out.str();
}

Thresholds parse_thresholds(std::string_view text) {
  Thresholds th;
  std::array<bool, 4> seen{};
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.starts_with("# source: ")) {
      th.source = line.substr(10);
      continue;
    }
    if (line.starts_with("# source_size: ")) {
      th.source_size = std::stoul(line.substr(15));
      continue;
    }
    if (line.starts_with('#') || line == "device\tthreshold") continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw std::runtime_error("thresholds line " + std::to_string(line_no) + ": expected device<TAB>value");
    }
    auto name = line.substr(0, tab);
    double value = std::stod(line.substr(tab + 1));
    bool matched = false;
    for (auto d : kDevices) {
      if (name == device_name(d)) {
        th.values[static_cast<std::size_t>(d)] = value;
        seen[static_cast<std::size_t>(d)] = true;
        matched = true;
      }
    }
    if (!matched) {
      throw std::runtime_error("thresholds line " + std::to_string(line_no) + ": unknown device '" + name + "'");
    }
    if (value < 0.0 || value > 1.0) {
      throw std::runtime_error("thresholds line " + std::to_string(line_no) + ": value outside [0,1]");
    }
  }
  for (auto d : kDevices) {
    if (!seen[static_cast<std::size_t>(d)]) {
      throw std::runtime_error("thresholds: missing device '" + std::string(device_name(d)) + "'");
    }
  }
  return th;
}

Thresholds load_thresholds(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read thresholds: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_thresholds(buf.str());
}

std::vector<double> ScoredCorpus::scores(Device d, bool persuasive_side) const {
  const auto& src = persuasive_side ? persuasive : non_persuasive;
  std::vector<double> out;
  out.reserve(src.size());
  for (const auto& p : src) out.push_back(p.score(d));
  return out;
}

ScoredCorpus score_corpus(const PairCorpus& corpus, const PronDict& dict, TextMode mode,
                          std::size_t threads) {
  std::vector<const SentencePair*> originals;
  std::unordered_set<std::string> groups;
  for (const auto& p : corpus.pairs) {
    if (groups.insert(p.group.empty() ? p.pair_id : p.group).second) originals.push_back(&p);
  }
  ScoredCorpus out;
  out.name = corpus.name;
  out.persuasive.resize(originals.size());
  out.non_persuasive.resize(originals.size());
  parallel_for(originals.size(), threads, [&](std::size_t i) {
    out.persuasive[i] = score_sentence(originals[i]->persuasive(), dict, mode);
    out.non_persuasive[i] = score_sentence(originals[i]->non_persuasive(), dict, mode);
  });
  return out;
}

DatasetMeans mean_scores(const ScoredCorpus& scored, std::size_t family_size,
                         stats::Deviation deviation) {
  DatasetMeans out;
  out.dataset = scored.name;
  for (auto d : kDevices) {
    auto p = scored.scores(d, true);
    auto np = scored.scores(d, false);
    auto& row = out.devices[static_cast<std::size_t>(d)];
    row.device = d;
    row.persuasive = stats::summarize(p, deviation);
    row.non_persuasive = stats::summarize(np, deviation);
    row.test = stats::mann_whitney_u(p, np).adjusted(family_size);
  }
  return out;
}

DatasetAboveThreshold above_threshold_report(const ScoredCorpus& scored, const Thresholds& th,
                                             std::size_t family_size) {
  DatasetAboveThreshold out;
  out.dataset = scored.name;
  for (auto d : kDevices) {
    auto p = scored.scores(d, true);
    auto np = scored.scores(d, false);
    auto& row = out.devices[static_cast<std::size_t>(d)];
    row.device = d;
    row.threshold = th.at(d);
    row.persuasive = stats::ccdf_at(p, row.threshold);
    row.non_persuasive = stats::ccdf_at(np, row.threshold);
    row.test = stats::ks_two_sample(p, np).adjusted(family_size);
  }
  return out;
}

DatasetAboveThreshold above_threshold_report(const PairCorpus& corpus, const PronDict& dict,
                                             const Thresholds& th, std::size_t family_size,
                                             TextMode mode) {
  if (corpus.empty()) throw std::invalid_argument("above_threshold_report: empty corpus");
  return above_threshold_report(score_corpus(corpus, dict, mode), th, family_size);
}

}  // namespace euphony
