#include "euphony/report.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>

namespace euphony {

std::string Table::to_tsv() const {
  std::string out;
  auto line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out.push_back('\t');
      out += cells[i];
    }
    out.push_back('\n');
  };
  line(header);
  for (const auto& r : rows) line(r);
  return out;
}

std::string Table::to_text() const {
  std::vector<std::size_t> width(header.size(), 0);
  auto measure = [&width](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size() && i < width.size(); ++i) {
      width[i] = std::max(width[i], cells[i].size());
    }
  };
  measure(header);
  for (const auto& r : rows) measure(r);
  std::string out;
  auto line = [&](const std::vector<std::string>& cells) {
    std::string l;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) l += "  ";
      l += cells[i];
      if (i + 1 < cells.size() && i < width.size()) l.append(width[i] - cells[i].size(), ' ');
    }
    out += l + '\n';
  };
  line(header);
  std::size_t total = 0;
  for (auto w : width) total += w;
  out.append(total + 2 * (width.empty() ? 0 : width.size() - 1), '-');
  out.push_back('\n');
  for (const auto& r : rows) line(r);
  return out;
}

std::string Provenance::header() const {
  std::string out = "# euphony " + version + "\n";
  out += "# config_hash: " + config_hash + "\n";
  out += "# seed: " + std::to_string(seed) + "\n";
  out += "# dictionary: " + dictionary + "\n";
  for (const auto& [k, v] : extra) out += "# " + k + ": " + v + "\n";
  return out;
}

std::string format_fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

std::string format_p(double p) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4g", p);
  return buf;
}

namespace {

std::string mark(const stats::TestResult& t) { return std::string(stats::tier_mark(t.tier)); }

std::string starred(double acc, const stats::TestResult* t) {
  std::string s = format_fixed(acc, 3);
  if (t) s += t->tier == stats::Tier::None ? " ns" : mark(*t);
  return s;
}

}  // namespace

Table means_table(const std::vector<DatasetMeans>& rows) {
  Table t;
  t.header = {"dataset", "side"};
  for (auto d : kDevices) {
    const std::string n(device_short(d));
    t.header.insert(t.header.end(), {n + "_mu", n + "_sigma", n + "_sig"});
  }
  t.header.push_back("n");
  for (const auto& ds : rows) {
    for (bool persuasive : {false, true}) {
      std::vector<std::string> r{ds.dataset, persuasive ? "P" : "nonP"};
      std::size_t n = 0;
      for (const auto& dev : ds.devices) {
        const auto& s = persuasive ? dev.persuasive : dev.non_persuasive;
        r.push_back(format_fixed(s.mean, 3));
        r.push_back(format_fixed(s.std, 3));
        r.push_back(persuasive ? mark(dev.test) : "");
        n = s.n;
      }
      r.push_back(std::to_string(n));
      t.rows.push_back(std::move(r));
    }
  }
  return t;
}

Table above_threshold_table(const std::vector<DatasetAboveThreshold>& rows) {
  Table t;
  t.header = {"dataset", "side"};
  for (auto d : kDevices) {
    const std::string n(device_short(d));
    t.header.insert(t.header.end(), {"F_" + n, n + "_sig"});
  }
  for (const auto& ds : rows) {
    for (bool persuasive : {false, true}) {
      std::vector<std::string> r{ds.dataset, persuasive ? "P" : "nonP"};
      for (const auto& dev : ds.devices) {
        r.push_back(format_fixed(persuasive ? dev.persuasive : dev.non_persuasive, 3));
        r.push_back(persuasive ? mark(dev.test) : "");
      }
      t.rows.push_back(std::move(r));
    }
  }
  return t;
}

Table analysis_detail_table(const std::vector<DatasetMeans>& means,
                            const std::vector<DatasetAboveThreshold>& above) {
  Table t;
  t.header = {"dataset", "device", "n", "mean_nonP", "std_nonP", "mean_P", "std_P", "mwu_U",
              "mwu_p_raw", "mwu_p_adj", "mwu_tier", "threshold", "ccdf_nonP", "ccdf_P",
              "ks_D", "ks_p_raw", "ks_p_adj", "ks_tier"};
  for (std::size_t i = 0; i < means.size(); ++i) {
    for (std::size_t d = 0; d < 4; ++d) {
      const auto& m = means[i].devices[d];
      std::vector<std::string> r{means[i].dataset, std::string(device_name(m.device)),
                                 std::to_string(m.persuasive.n),
                                 format_fixed(m.non_persuasive.mean, 6), format_fixed(m.non_persuasive.std, 6),
                                 format_fixed(m.persuasive.mean, 6), format_fixed(m.persuasive.std, 6),
                                 format_fixed(m.test.statistic, 1), format_p(m.test.p_raw),
                                 format_p(m.test.p_adjusted), mark(m.test)};
      if (i < above.size()) {
        const auto& a = above[i].devices[d];
        r.insert(r.end(), {format_fixed(a.threshold, 6), format_fixed(a.non_persuasive, 6),
                           format_fixed(a.persuasive, 6), format_fixed(a.test.statistic, 6),
                           format_p(a.test.p_raw), format_p(a.test.p_adjusted), mark(a.test)});
      }
      t.rows.push_back(std::move(r));
    }
  }
  return t;
}

Table within_table(const std::vector<WithinReport>& reports) {
  Table t;
  t.header = {"Dataset", "Phonetic", "N-Gram", "All"};
  for (const auto& rep : reports) {
    std::vector<std::string> r{rep.dataset};
    for (std::size_t i = 0; i < rep.results.size(); ++i) {
      const auto& cv = rep.results[i];
      const stats::TestResult* vs_left = i == 0 ? nullptr : &rep.comparisons[i - 1].test;
      r.push_back(starred(cv.accuracy(), vs_left) + " " + cv.best_point().point.annotation());
    }
    t.rows.push_back(std::move(r));
  }
  return t;
}

Table within_detail_table(const std::vector<WithinReport>& reports) {
  Table t;
  t.header = {"dataset", "feature_set", "accuracy", "k", "degree", "c", "compared_to",
              "mcnemar_stat", "mcnemar_p", "mcnemar_tier", "instances"};
  for (const auto& rep : reports) {
    for (std::size_t i = 0; i < rep.results.size(); ++i) {
      const auto& cv = rep.results[i];
      const auto& p = cv.best_point().point;
      std::vector<std::string> r{rep.dataset, cv.spec.name(), format_fixed(cv.accuracy(), 6),
                                 std::to_string(p.k), std::to_string(p.degree), format_fixed(p.c, 3)};
      if (i == 0) {
        const auto& b = rep.phonetic_vs_chance;
        r.insert(r.end(), {"chance(binomial)", format_fixed(b.statistic, 6), format_p(b.p_raw), mark(b)});
      } else {
        const auto& c = rep.comparisons[i - 1];
        r.insert(r.end(), {c.baseline, format_fixed(c.test.statistic, 4), format_p(c.test.p_raw), mark(c.test)});
      }
      r.push_back(std::to_string(rep.instances));
      t.rows.push_back(std::move(r));
    }
  }
  return t;
}

Table ablation_table(const std::vector<AblationReport>& reports) {
  Table t;
  t.header = {"Dataset", "N-Gram"};
  for (auto d : kDevices) {
    std::string n(device_name(d));
    n[0] = static_cast<char>(n[0] - 'a' + 'A');
    t.header.push_back("N-Gram+" + n);
  }
  for (const auto& rep : reports) {
    std::vector<std::string> r{rep.dataset, format_fixed(rep.baseline.accuracy(), 3)};
    for (std::size_t i = 0; i < rep.variants.size(); ++i) {
      r.push_back(starred(rep.variants[i].accuracy(), &rep.comparisons[i].test) + " " +
                  rep.variants[i].best_point().point.annotation());
    }
    t.rows.push_back(std::move(r));
  }
  return t;
}

Table ablation_detail_table(const std::vector<AblationReport>& reports) {
  Table t;
  t.header = {"dataset", "feature_set", "accuracy", "k", "degree", "c", "mcnemar_stat", "mcnemar_p",
              "mcnemar_tier"};
  for (const auto& rep : reports) {
    const auto& bp = rep.baseline.best_point().point;
    t.rows.push_back({rep.dataset, rep.baseline.spec.name(), format_fixed(rep.baseline.accuracy(), 6),
                      std::to_string(bp.k), std::to_string(bp.degree), format_fixed(bp.c, 3), "", "", ""});
    for (std::size_t i = 0; i < rep.variants.size(); ++i) {
      const auto& cv = rep.variants[i];
      const auto& p = cv.best_point().point;
      const auto& test = rep.comparisons[i].test;
      t.rows.push_back({rep.dataset, cv.spec.name(), format_fixed(cv.accuracy(), 6), std::to_string(p.k),
                        std::to_string(p.degree), format_fixed(p.c, 3), format_fixed(test.statistic, 4),
                        format_p(test.p_raw), mark(test)});
    }
  }
  return t;
}

Table cross_table(const std::vector<CrossReport>& reports) {
  std::vector<std::string> trains, tests;
  std::map<std::pair<std::string, std::string>, const CrossReport*> cell;
  for (const auto& r : reports) {
    if (std::find(trains.begin(), trains.end(), r.train) == trains.end()) trains.push_back(r.train);
    if (std::find(tests.begin(), tests.end(), r.test) == tests.end()) tests.push_back(r.test);
    cell[{r.train, r.test}] = &r;
  }
  Table t;
  t.header = {"Training"};
  for (const auto& test : tests) {
    for (const auto* fs : {"Phonetic", "N-Gram", "All"}) t.header.push_back(test + ":" + fs);
  }
  for (const auto& train : trains) {
    std::vector<std::string> row{train};
    for (const auto& test : tests) {
      auto it = cell.find({train, test});
      for (std::size_t i = 0; i < 3; ++i) {
        if (it == cell.end() || i >= it->second->cells.size()) {
          row.push_back("-");
        } else {
          row.push_back(format_fixed(it->second->cells[i].accuracy, 3) + (it->second->sanity_mode ? "!" : ""));
        }
      }
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table cross_detail_table(const std::vector<CrossReport>& reports) {
  Table t;
  t.header = {"train", "test", "feature_set", "accuracy", "train_cv_accuracy", "k", "degree", "c", "sanity_mode"};
  for (const auto& r : reports) {
    for (const auto& c : r.cells) {
      t.rows.push_back({r.train, r.test, c.spec.name(), format_fixed(c.accuracy, 6),
                        format_fixed(c.train_cv_accuracy, 6), std::to_string(c.point.k),
                        std::to_string(c.point.degree), format_fixed(c.point.c, 3),
                        r.sanity_mode ? "yes" : "no"});
    }
  }
  return t;
}

Table grid_table(const std::string& dataset, const std::vector<const CvResult*>& runs) {
  Table t;
  t.header = {"dataset", "feature_set", "k", "degree", "c", "cv_accuracy", "best"};
  for (const auto* run : runs) {
    for (std::size_t g = 0; g < run->points.size(); ++g) {
      const auto& p = run->points[g];
      t.rows.push_back({dataset, run->spec.name(), std::to_string(p.point.k), std::to_string(p.point.degree),
                        format_fixed(p.point.c, 3), format_fixed(p.accuracy, 6), g == run->best ? "*" : ""});
    }
  }
  return t;
}

}  // namespace euphony
