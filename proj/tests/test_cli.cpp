#include <doctest.h>

#include <cstdlib>
#include <sstream>

#include "euphony/analysis.hpp"
#include "euphony/cli.hpp"
#include "euphony/config.hpp"
#include "euphony/corpus.hpp"
#include "support/fixture.hpp"
#include "support/synthetic.hpp"

using namespace euphony;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "euphony");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Run r;
  r.code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string dict() { return (testing::data_dir() / "cmudict-fixture.dict").string(); }

struct EnvGuard {
  EnvGuard() { unsetenv(kDictEnvVar); }
  ~EnvGuard() { unsetenv(kDictEnvVar); }
};

}  // namespace

TEST_CASE("score") {
  EnvGuard env;
  auto r = run({"--dict", dict(), "score", "--text", "dog eat dog brother", "--text", "zzqx"});
  CHECK(r.code == kExitOk);
  std::istringstream lines(r.out);
  std::string header, row1, row2;
  std::getline(lines, header);
  std::getline(lines, row1);
  std::getline(lines, row2);
  CHECK(header == "sentence\trhyme\talliteration\tplosive\thomogeneity\tt_ph\toov");
  CHECK(row1 == "dog eat dog brother\t0.4615\t0.4615\t0.4615\t0.2308\t13\t0");
  CHECK(row2 == "zzqx\t0.0000\t0.0000\t0.0000\t0.0000\t0\t1");

  auto papa = run({"score", "--text", "papa", "--dict", dict()});
  CHECK(papa.code == kExitOk);
  CHECK(papa.out.find("papa\t0.0000\t0.0000\t0.5000") != std::string::npos);

  auto dir = testing::scratch_dir("cli-score");
  testing::write_text(dir / "empty.txt", "");
  auto empty = run({"--dict", dict(), "score", "--file", (dir / "empty.txt").string()});
  CHECK(empty.code == kExitOk);
  CHECK(empty.out == "sentence\trhyme\talliteration\tplosive\thomogeneity\tt_ph\toov\n");

  auto missing = run({"score", "--text", "papa"});
  CHECK(missing.code == kExitConfigError);
  CHECK(missing.err.find("dictionary") != std::string::npos);
  CHECK(run({"--dict", "/nonexistent.dict", "score", "--text", "x"}).code == kExitConfigError);
  CHECK(run({"score", "--bogus"}).code == kExitConfigError);
  CHECK(run({}).code == kExitConfigError);
  CHECK(run({"--help"}).code == kExitOk);
}

TEST_CASE("dictionary from the environment") {
  EnvGuard env;
  setenv(kDictEnvVar, dict().c_str(), 1);
  CHECK(run({"score", "--text", "papa"}).code == kExitOk);
  // Flag beats the environment.
  CHECK(run({"--dict", "/nonexistent.dict", "score", "--text", "papa"}).code == kExitConfigError);
}

TEST_CASE("config parsing") {
  auto c = parse_config(R"({"dictionary": "d.dict", "seed": 7, "thresholds": "reference",
      "datasets": [{"name": "x", "path": "x.jsonl", "twitter": true}],
      "grid": {"degrees": [1], "feature_counts": [1000, 3000], "c": [0.1, 1, 10]}})",
                        "/base");
  CHECK(c.dict_path == fs::path("/base/d.dict"));
  CHECK(c.seed == 7);
  REQUIRE(c.datasets.size() == 1);
  CHECK(c.datasets[0].format == PairFormat::Jsonl);
  CHECK(c.datasets[0].twitter);
  CHECK(c.grid.cs.size() == 3);
  CHECK_THROWS_AS(parse_config("{\"bogus\": 1}"), ConfigError);
  CHECK_THROWS_AS(parse_config("{\"grid\": {\"degrees\": [3]}}"), ConfigError);
  CHECK_THROWS_AS(parse_config("[1,2"), ConfigError);

  auto a = parse_config("{\"seed\": 1}");
  auto b = a;
  b.threads = 8;
  b.output_dir = "elsewhere";
  CHECK(a.hash() == b.hash());
  b.seed = 2;
  CHECK(a.hash() != b.hash());
  CHECK(a.hash().size() == 16);

  auto d = parse_dataset_flag("movie=/x/m.tsv,twitter");
  CHECK(d.name == "movie");
  CHECK(d.path == fs::path("/x/m.tsv"));
  CHECK(d.twitter);
  CHECK_THROWS_AS(parse_dataset_flag("nopath"), ConfigError);
}

TEST_CASE("analyze") {
  EnvGuard env;
  auto dir = testing::scratch_dir("cli-analyze");
  write_pairs(testing::euphonic_corpus(200, 4), dir / "syn.tsv", PairFormat::Tsv);
  testing::write_text(dir / "one.tsv", "pair_id\tleft\tright\tlabel\np1\tpeter piper\tgovernment\tleft\n");
  const std::vector<std::string> base{"--dict", dict(), "--out", (dir / "out").string(), "analyze"};

  auto args = base;
  args.insert(args.end(), {"--dataset", "syn=" + (dir / "syn.tsv").string(), "--dataset",
                           "one=" + (dir / "one.tsv").string()});
  auto r = run(args);
  CHECK(r.code == kExitOk);
  auto means = testing::read_file(dir / "out" / "analysis_means.tsv");
  CHECK(means.starts_with("# euphony "));
  CHECK(means.find("# config_hash: ") != std::string::npos);
  CHECK(means.find("# seed: 42") != std::string::npos);
  CHECK(means.find("# dictionary: cmudict-fixture.dict") != std::string::npos);
  CHECK(means.find("bonferroni_family: 4 devices x 2 datasets = 8") != std::string::npos);
  CHECK(means.find("***") != std::string::npos);
  for (const char* f : {"analysis_means.txt", "analysis_above_threshold.tsv", "analysis_above_threshold.txt",
                        "analysis_detail.tsv"}) {
    CHECK(fs::exists(dir / "out" / f));
  }
  auto again = run(args);
  CHECK(testing::read_file(dir / "out" / "analysis_means.tsv") == means);

  // One good dataset, one broken.
  testing::write_text(dir / "broken.tsv", "no header here\n");
  args = base;
  args.insert(args.end(), {"--dataset", "syn=" + (dir / "syn.tsv").string(), "--dataset",
                           "broken=" + (dir / "broken.tsv").string()});
  r = run(args);
  CHECK(r.code == kExitPartialFailure);
  CHECK(r.err.find("broken") != std::string::npos);

  args = base;
  args.insert(args.end(), {"--dataset", "broken=" + (dir / "broken.tsv").string()});
  CHECK(run(args).code == kExitPartialFailure);

  args = base;
  args.insert(args.end(), {"--dataset", "gone=" + (dir / "missing.tsv").string()});
  CHECK(run(args).code == kExitConfigError);
  CHECK(run(base).code == kExitConfigError);
}

TEST_CASE("thresholds") {
  EnvGuard env;
  auto dir = testing::scratch_dir("cli-thresholds");
  testing::write_text(dir / "ref.txt", "peter piper picked\nshe sells sea shells\n\n");
  auto r = run({"--dict", dict(), "thresholds", "--reference", (dir / "ref.txt").string(), "--output",
                (dir / "th.tsv").string()});
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("reference") != std::string::npos);
  auto th = load_thresholds(dir / "th.tsv");
  CHECK(th.source_size == 2);

  // The derived file feeds analyze.
  write_pairs(testing::euphonic_corpus(50, 4), dir / "syn.tsv", PairFormat::Tsv);
  auto a = run({"--dict", dict(), "--thresholds", (dir / "th.tsv").string(), "--out", (dir / "out").string(),
                "--dataset", "syn=" + (dir / "syn.tsv").string(), "analyze"});
  CHECK(a.code == kExitOk);
  CHECK(testing::read_file(dir / "out" / "analysis_above_threshold.tsv").find("# thresholds: ref.txt (n=2)") !=
        std::string::npos);
  CHECK(run({"--dict", dict(), "thresholds", "--reference", (dir / "nope.txt").string()}).code == kExitConfigError);
}

TEST_CASE("experiment modes") {
  EnvGuard env;
  auto dir = testing::scratch_dir("cli-experiment");
  write_pairs(testing::euphonic_corpus(60, 4, testing::Vocabulary::A, "a"), dir / "a.tsv", PairFormat::Tsv);
  write_pairs(testing::euphonic_corpus(60, 5, testing::Vocabulary::B, "b"), dir / "b.tsv", PairFormat::Tsv);
  testing::write_text(dir / "cfg.json", R"({"dictionary": ")" + dict() + R"(",
    "datasets": [{"name": "a", "path": "a.tsv"}, {"name": "b", "path": "b.tsv"}],
    "grid": {"degrees": [1, 2], "feature_counts": [100, 400]}, "folds": 5, "output_dir": "out"})");
  const std::string cfg = (dir / "cfg.json").string();

  auto w = run({"--config", cfg, "experiment", "--mode", "within", "--save-models"});
  CHECK(w.code == kExitOk);
  CHECK(fs::exists(dir / "out" / "experiment_within.tsv"));
  CHECK(fs::exists(dir / "out" / "models" / "a.phonetic.json"));
  CHECK(testing::read_file(dir / "out" / "experiment_within.txt").find("# folds: 5") != std::string::npos);

  CHECK(run({"--config", cfg, "experiment", "--mode", "ablation"}).code == kExitOk);
  CHECK(fs::exists(dir / "out" / "experiment_ablation.tsv"));

  CHECK(run({"--config", cfg, "experiment", "--mode", "cross"}).code == kExitOk);
  auto cross = testing::read_file(dir / "out" / "experiment_cross.tsv");
  CHECK(cross.find("a:Phonetic") != std::string::npos);

  CHECK(run({"--config", cfg, "experiment", "--mode", "cross", "--train", "a", "--test", "a"}).code ==
        kExitConfigError);
  CHECK(run({"--config", cfg, "experiment", "--mode", "cross", "--train", "a", "--test", "a", "--allow-same"}).code ==
        kExitOk);
  CHECK(testing::read_file(dir / "out" / "experiment_cross.tsv").find('!') != std::string::npos);
  CHECK(run({"--config", cfg, "--dataset", "a=" + (dir / "a.tsv").string(), "experiment", "--mode", "cross"}).code ==
        kExitConfigError);
  CHECK(run({"--config", cfg, "experiment", "--mode", "sideways"}).code == kExitConfigError);

  // Too few pairs for the fold count is a per-dataset failure.
  testing::write_text(dir / "tiny.tsv", "pair_id\tleft\tright\tlabel\np1\tpeter piper\tgovernment\tleft\n");
  CHECK(run({"--config", cfg, "--dataset", "a=" + (dir / "a.tsv").string(), "--dataset",
             "tiny=" + (dir / "tiny.tsv").string(), "experiment"})
            .code == kExitPartialFailure);
}
