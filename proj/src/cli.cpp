#include "euphony/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "euphony/analysis.hpp"
#include "euphony/config.hpp"
#include "euphony/experiment.hpp"
#include "euphony/report.hpp"

namespace euphony {

namespace {

namespace fs = std::filesystem;

struct GlobalFlags {
  std::string config;
  std::string dict;
  std::string stopwords;
  std::string thresholds;
  std::string output_dir;
  std::vector<std::string> datasets;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> folds;
  std::optional<std::size_t> threads;
};

RunConfig effective_config(const GlobalFlags& f) {
  RunConfig c = f.config.empty() ? RunConfig{} : load_config(f.config);
  if (const char* env = std::getenv(kDictEnvVar); env != nullptr && *env != '\0') c.dict_path = env;
  if (!f.dict.empty()) c.dict_path = f.dict;
  if (!f.stopwords.empty()) c.stopword_path = f.stopwords;
  if (!f.thresholds.empty()) c.thresholds = f.thresholds;
  if (!f.output_dir.empty()) c.output_dir = f.output_dir;
  if (!f.datasets.empty()) {
    c.datasets.clear();
    for (const auto& d : f.datasets) c.datasets.push_back(parse_dataset_flag(d));
  }
  if (f.seed) c.seed = *f.seed;
  if (f.folds) c.folds = *f.folds;
  if (f.threads) c.threads = *f.threads;
  if (c.folds < 2) throw ConfigError("folds must be >= 2");
  if (c.threads == 0) throw ConfigError("threads must be >= 1");
  return c;
}

PronDict open_dict(const RunConfig& c) {
  if (c.dict_path.empty()) {
    throw ConfigError(std::string("no pronouncing dictionary configured (use --dict, the config file, or ") +
                      kDictEnvVar + ")");
  }
  try {
    return load_dict(c.dict_path);
  } catch (const std::exception& e) {
    throw ConfigError("cannot load dictionary " + c.dict_path.string() + ": " + e.what());
  }
}

StopwordList open_stopwords(const RunConfig& c) {
  if (c.stopword_path.empty()) return StopwordList::english_default();
  try {
    return StopwordList::from_file(c.stopword_path);
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
}

Thresholds open_thresholds(const RunConfig& c) {
  if (c.thresholds == kReferenceThresholds) return Thresholds::reference_constants();
  try {
    return load_thresholds(c.thresholds);
  } catch (const std::exception& e) {
    throw ConfigError("cannot load thresholds " + c.thresholds + ": " + e.what());
  }
}

fs::path ensure_output_dir(const RunConfig& c) {
  std::error_code ec;
  fs::create_directories(c.output_dir, ec);
  if (ec) throw ConfigError("cannot create output directory " + c.output_dir.string() + ": " + ec.message());
  return c.output_dir;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream o(path, std::ios::binary);
  if (!o) throw std::runtime_error("cannot write " + path.string());
  o << content;
  if (!o) throw std::runtime_error("write failed: " + path.string());
}

std::string single_line(std::string s) {
  for (char& ch : s) {
    if (ch == '\t' || ch == '\n' || ch == '\r') ch = ' ';
  }
  return s;
}

Provenance provenance_for(const RunConfig& c, const PronDict& dict) {
  Provenance p;
  p.config_hash = c.hash();
  p.seed = c.seed;
  p.dictionary = dict.source_version();
  return p;
}

struct LoadedDataset {
  DatasetSpec spec;
  PairCorpus corpus;
};

// Loads every dataset; failures are reported to err and skipped.
std::vector<LoadedDataset> load_datasets(const RunConfig& c, std::ostream& err, std::size_t& failures) {
  std::vector<LoadedDataset> loaded;
  for (const auto& spec : c.datasets) {
    try {
      auto result = load_pairs(spec.path, spec.format, spec.name);
      for (const auto& e : result.errors) {
        err << "warning: dataset '" << spec.name << "' row " << e.row << ": " << e.message << "\n";
      }
      if (result.corpus.empty()) throw std::runtime_error("no valid pairs");
      loaded.push_back({spec, std::move(result.corpus)});
    } catch (const std::exception& e) {
      ++failures;
      err << "error: dataset '" << spec.name << "' (" << spec.path.string() << ")\n"
          << "  " << e.what() << "\n";
    }
  }
  return loaded;
}

int finish(std::size_t failures, std::size_t total, std::ostream& err) {
  if (failures == 0) return kExitOk;
  err << failures << " of " << total << " dataset(s) failed\n";
  return kExitPartialFailure;
}

// ---- score -----------------------------------------------------------------

struct ScoreArgs {
  std::vector<std::string> texts;
  std::string file;
  std::string output;
  bool twitter = false;
};

int cmd_score(const RunConfig& c, const ScoreArgs& a, std::ostream& out) {
  auto dict = open_dict(c);
  std::vector<std::string> sentences = a.texts;
  if (!a.file.empty()) {
    std::ifstream in(a.file);
    if (!in) throw ConfigError("cannot read " + a.file);
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.find_first_not_of(" \t") == std::string::npos) continue;
      sentences.push_back(line);
    }
  }
  const TextMode mode = a.twitter ? TextMode::Twitter : TextMode::Generic;
  Table t;
  t.header = {"sentence", "rhyme", "alliteration", "plosive", "homogeneity", "t_ph", "oov"};
  for (const auto& s : sentences) {
    auto p = score_sentence(s, dict, mode);
    t.rows.push_back({single_line(s), format_fixed(p.rhyme, 4), format_fixed(p.alliteration, 4),
                      format_fixed(p.plosive, 4), format_fixed(p.homogeneity, 4),
                      std::to_string(p.total_phonemes), std::to_string(p.oov_tokens)});
  }
  if (a.output.empty()) {
    out << t.to_tsv();
  } else {
    write_file(a.output, t.to_tsv());
  }
  return kExitOk;
}

// ---- thresholds ------------------------------------------------------------

struct ThresholdArgs {
  std::string reference;
  std::string output;
  bool twitter = false;
};

int cmd_thresholds(const RunConfig& c, const ThresholdArgs& a, std::ostream& out) {
  auto dict = open_dict(c);
  std::ifstream in(a.reference);
  if (!in) throw ConfigError("cannot read reference file " + a.reference);
  std::vector<std::string> sentences;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    sentences.push_back(line);
  }
  if (sentences.empty()) throw ConfigError("reference file has no sentences: " + a.reference);

  auto th = derive_thresholds(sentences, dict, a.twitter ? TextMode::Twitter : TextMode::Generic);
  th.source = fs::path(a.reference).filename().string();
  const auto ref = Thresholds::reference_constants();

  Table t;
  t.header = {"device", "derived", "reference", "difference"};
  for (Device d : kDevices) {
    t.rows.push_back({std::string(device_name(d)), format_fixed(th.at(d), 4), format_fixed(ref.at(d), 4),
                      format_fixed(th.at(d) - ref.at(d), 4)});
  }
  const fs::path target = a.output.empty() ? ensure_output_dir(c) / "thresholds.tsv" : fs::path(a.output);
  write_file(target, format_thresholds(th));

  out << "# reference sentences: " << th.source_size << "\n" << t.to_text();
  out << "# thresholds written to " << target.string() << "\n";
  return kExitOk;
}

// ---- analyze ---------------------------------------------------------------

int cmd_analyze(const RunConfig& c, std::ostream& out, std::ostream& err) {
  validate_config(c, true);
  auto dict = open_dict(c);
  auto th = open_thresholds(c);
  auto dir = ensure_output_dir(c);

  std::size_t failures = 0;
  auto loaded = load_datasets(c, err, failures);

  const std::size_t family = 4 * loaded.size();
  std::vector<DatasetMeans> means;
  std::vector<DatasetAboveThreshold> above;
  std::vector<std::pair<std::string, std::string>> coverage;
  for (const auto& ds : loaded) {
    auto scored = score_corpus(ds.corpus, dict, ds.spec.twitter ? TextMode::Twitter : TextMode::Generic,
                               c.threads);
    means.push_back(mean_scores(scored, family, c.deviation));
    above.push_back(above_threshold_report(scored, th, family));

    std::size_t covered = 0;
    std::size_t oov = 0;
    for (const auto* side : {&scored.persuasive, &scored.non_persuasive}) {
      for (const auto& p : *side) {
        covered += p.covered_tokens;
        oov += p.oov_tokens;
      }
    }
    const double rate = covered + oov == 0 ? 0.0 : static_cast<double>(covered) / static_cast<double>(covered + oov);
    coverage.emplace_back("coverage_" + ds.spec.name, format_fixed(rate, 4) + " (" + std::to_string(oov) +
                                                          " oov tokens, " + std::to_string(ds.corpus.size()) +
                                                          " pairs)");
  }

  auto prov = provenance_for(c, dict);
  prov.extra.emplace_back("bonferroni_family", "4 devices x " + std::to_string(loaded.size()) +
                                                   " datasets = " + std::to_string(family));
  prov.extra.emplace_back("thresholds", th.source + " (n=" + std::to_string(th.source_size) + ")");
  prov.extra.emplace_back("std", c.deviation == stats::Deviation::Population ? "population" : "sample");
  for (auto& kv : coverage) prov.extra.push_back(kv);
  const auto header = prov.header();

  const auto mt = means_table(means);
  const auto at = above_threshold_table(above);
  write_file(dir / "analysis_means.tsv", header + mt.to_tsv());
  write_file(dir / "analysis_means.txt", header + mt.to_text());
  write_file(dir / "analysis_above_threshold.tsv", header + at.to_tsv());
  write_file(dir / "analysis_above_threshold.txt", header + at.to_text());
  write_file(dir / "analysis_detail.tsv", header + analysis_detail_table(means, above).to_tsv());

  err << "bonferroni family size m = " << family << "\n";
  out << header << "\n" << mt.to_text() << "\n" << at.to_text();
  return finish(failures, c.datasets.size(), err);
}

// ---- experiment ------------------------------------------------------------

struct ExperimentArgs {
  std::string mode = "within";
  std::string train;
  std::string test;
  bool allow_same = false;
  bool save_models = false;
};

struct Prepared {
  DatasetSpec spec;
  PreparedCorpus data;
  FoldPlan plan;
};

std::string model_file_name(const std::string& dataset, const FeatureSpec& spec) {
  std::string name = dataset + "." + spec.name() + ".json";
  for (char& ch : name) {
    if (ch == '/' || ch == '\\' || ch == '+') ch = '_';
  }
  return name;
}

int cmd_experiment(const RunConfig& c, const ExperimentArgs& a, std::ostream& out, std::ostream& err) {
  if (a.mode != "within" && a.mode != "ablation" && a.mode != "cross") {
    throw ConfigError("--mode must be within, ablation or cross");
  }
  validate_config(c, true);

  std::vector<std::pair<std::string, std::string>> cross_pairs;
  if (a.mode == "cross") {
    auto known = [&](const std::string& n) {
      for (const auto& d : c.datasets) {
        if (d.name == n) return true;
      }
      return false;
    };
    if (!a.train.empty() || !a.test.empty()) {
      if (a.train.empty() || a.test.empty()) throw ConfigError("--train and --test must be given together");
      if (!known(a.train)) throw ConfigError("unknown dataset '" + a.train + "'");
      if (!known(a.test)) throw ConfigError("unknown dataset '" + a.test + "'");
      if (a.train == a.test && !a.allow_same) {
        throw ConfigError("train and test are the same dataset; pass --allow-same for a sanity run");
      }
      cross_pairs.emplace_back(a.train, a.test);
    } else {
      if (c.datasets.size() < 2 && !a.allow_same) {
        throw ConfigError("cross mode needs at least two datasets");
      }
      for (const auto& tr : c.datasets) {
        for (const auto& te : c.datasets) {
          if (tr.name != te.name || a.allow_same) cross_pairs.emplace_back(tr.name, te.name);
        }
      }
    }
  }

  auto dict = open_dict(c);
  auto stopwords = open_stopwords(c);
  auto dir = ensure_output_dir(c);
  const auto options = c.cv_options();

  std::size_t failures = 0;
  auto loaded = load_datasets(c, err, failures);

  std::map<std::string, std::unique_ptr<Prepared>> prepared;
  for (auto& ds : loaded) {
    try {
      FeatureContext ctx{&dict, &stopwords, ds.spec.twitter ? TextMode::Twitter : TextMode::Generic};
      auto p = std::make_unique<Prepared>();
      p->spec = ds.spec;
      p->data = prepare_corpus(ds.corpus, ctx, c.threads);
      p->plan = make_fold_plan(p->data, options);
      prepared.emplace(ds.spec.name, std::move(p));
    } catch (const std::exception& e) {
      ++failures;
      err << "error: dataset '" << ds.spec.name << "'\n  " << e.what() << "\n";
    }
  }

  auto prov = provenance_for(c, dict);
  prov.extra.emplace_back("mode", a.mode);
  prov.extra.emplace_back("folds", std::to_string(c.folds));
  std::string datasets;
  for (const auto& ds : c.datasets) {
    if (!prepared.contains(ds.name)) continue;
    if (!datasets.empty()) datasets += ", ";
    datasets += ds.name + " (" + std::to_string(prepared.at(ds.name)->data.size()) + " instances)";
  }
  prov.extra.emplace_back("datasets", datasets);

  // Report in configured dataset order.
  std::vector<const Prepared*> order;
  for (const auto& ds : c.datasets) {
    if (auto it = prepared.find(ds.name); it != prepared.end()) order.push_back(it->second.get());
  }

  if (a.mode == "within") {
    std::vector<WithinReport> reports;
    Table grids;
    for (const auto* p : order) {
      err << "[within] " << p->spec.name << "\n";
      reports.push_back(within_dataset(p->data, p->plan, options));
      std::vector<const CvResult*> runs;
      for (const auto& r : reports.back().results) runs.push_back(&r);
      auto g = grid_table(p->spec.name, runs);
      if (grids.header.empty()) grids.header = g.header;
      for (auto& row : g.rows) grids.rows.push_back(std::move(row));
      if (a.save_models) {
        fs::create_directories(dir / "models");
        for (const auto& r : reports.back().results) {
          auto model = fit_model(p->data, r.spec, r.best_point().point, options);
          model.meta.cv_accuracy = r.accuracy();
          save_model(model, dir / "models" / model_file_name(p->spec.name, r.spec));
        }
      }
    }
    const auto header = prov.header();
    const auto t = within_table(reports);
    write_file(dir / "experiment_within.tsv", header + t.to_tsv());
    write_file(dir / "experiment_within.txt", header + t.to_text());
    write_file(dir / "experiment_within_detail.tsv", header + within_detail_table(reports).to_tsv());
    write_file(dir / "experiment_within_grid.tsv", header + grids.to_tsv());
    out << header << "\n" << t.to_text();
  } else if (a.mode == "ablation") {
    std::vector<AblationReport> reports;
    for (const auto* p : order) {
      err << "[ablation] " << p->spec.name << "\n";
      reports.push_back(ablation_run(p->data, p->plan, options));
    }
    const auto header = prov.header();
    const auto t = ablation_table(reports);
    write_file(dir / "experiment_ablation.tsv", header + t.to_tsv());
    write_file(dir / "experiment_ablation.txt", header + t.to_text());
    write_file(dir / "experiment_ablation_detail.tsv", header + ablation_detail_table(reports).to_tsv());
    out << header << "\n" << t.to_text();
  } else {
    std::vector<CrossReport> reports;
    for (const auto& [tr, te] : cross_pairs) {
      auto itr = prepared.find(tr);
      auto ite = prepared.find(te);
      if (itr == prepared.end() || ite == prepared.end()) continue;
      err << "[cross] " << tr << " -> " << te << "\n";
      reports.push_back(cross_dataset_eval(itr->second->data, itr->second->plan, ite->second->data, options));
    }
    const auto header = prov.header();
    const auto t = cross_table(reports);
    write_file(dir / "experiment_cross.tsv", header + t.to_tsv());
    write_file(dir / "experiment_cross.txt", header + t.to_text());
    write_file(dir / "experiment_cross_detail.tsv", header + cross_detail_table(reports).to_tsv());
    out << header << "\n" << t.to_text();
  }
  return finish(failures, c.datasets.size(), err);
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Phonetic euphony scoring, corpus analysis and persuasiveness classifiers", "euphony"};
  app.set_version_flag("--version", std::string(EUPHONY_VERSION));
  app.require_subcommand(1);

  GlobalFlags g;
  app.add_option("--config", g.config, "JSON run configuration");
  app.add_option("--dict", g.dict, std::string("CMU pronouncing dictionary (overrides ") + kDictEnvVar + ")");
  app.add_option("--stopwords", g.stopwords, "stopword list, one word per line");
  app.add_option("--thresholds", g.thresholds, "'reference' or a thresholds TSV");
  app.add_option("--out", g.output_dir, "output directory");
  app.add_option("--dataset", g.datasets, "name=path[,twitter][,tsv|jsonl]; replaces configured datasets");
  app.add_option("--seed", g.seed, "random seed");
  app.add_option("--folds", g.folds, "cross-validation folds");
  app.add_option("--threads", g.threads, "worker threads");

  ScoreArgs score;
  auto* score_cmd = app.add_subcommand("score", "score sentences (TSV to stdout)");
  score_cmd->fallthrough();
  auto* text_opt = score_cmd->add_option("--text", score.texts, "sentence to score (repeatable)");
  auto* file_opt = score_cmd->add_option("--file", score.file, "file with one sentence per line");
  text_opt->excludes(file_opt);
  score_cmd->add_option("--output", score.output, "write TSV here instead of stdout");
  score_cmd->add_flag("--twitter", score.twitter, "tweet normalization");

  ThresholdArgs thr;
  auto* thr_cmd = app.add_subcommand("thresholds", "derive device thresholds from reference sentences");
  thr_cmd->fallthrough();
  thr_cmd->add_option("--reference", thr.reference, "one reference sentence per line")->required();
  thr_cmd->add_option("--output", thr.output, "thresholds TSV path (default <out>/thresholds.tsv)");
  thr_cmd->add_flag("--twitter", thr.twitter, "tweet normalization");

  auto* analyze_cmd = app.add_subcommand("analyze", "euphony means and above-threshold analysis");
  analyze_cmd->fallthrough();

  ExperimentArgs exp;
  auto* exp_cmd = app.add_subcommand("experiment", "persuasiveness classification experiments");
  exp_cmd->fallthrough();
  exp_cmd->add_option("--mode", exp.mode, "within | ablation | cross")->capture_default_str();
  exp_cmd->add_option("--train", exp.train, "cross mode: training dataset");
  exp_cmd->add_option("--test", exp.test, "cross mode: test dataset");
  exp_cmd->add_flag("--allow-same", exp.allow_same, "cross mode: allow train == test (sanity run)");
  exp_cmd->add_flag("--save-models", exp.save_models, "within mode: save the best model per feature set");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfigError;
  }

  try {
    const auto config = effective_config(g);
    if (score_cmd->parsed()) {
      if (score.texts.empty() && score.file.empty()) throw ConfigError("score needs --text or --file");
      return cmd_score(config, score, out);
    }
    if (thr_cmd->parsed()) return cmd_thresholds(config, thr, out);
    if (analyze_cmd->parsed()) return cmd_analyze(config, out, err);
    if (exp_cmd->parsed()) return cmd_experiment(config, exp, out, err);
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitPartialFailure;
  }
  return kExitConfigError;
}

}  // namespace euphony
