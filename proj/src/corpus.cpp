#include "euphony/corpus.hpp"

#include <fstream>
#include <optional>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

namespace euphony {

namespace {

constexpr std::string_view kTsvHeader = "pair_id\tleft\tright\tlabel";

std::optional<Side> parse_label(std::string_view s) {
  if (s == "left") return Side::Left;
  if (s == "right") return Side::Right;
  return std::nullopt;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    auto line = text.substr(pos, eol - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    pos = eol + 1;
  }
  return lines;
}

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (true) {
    auto tab = line.find('\t', pos);
    if (tab == std::string_view::npos) {
      out.push_back(line.substr(pos));
      return out;
    }
    out.push_back(line.substr(pos, tab - pos));
    pos = tab + 1;
  }
}

bool blank(std::string_view s) { return s.find_first_not_of(" \t\r\n") == std::string_view::npos; }

// Validates a candidate row and appends it; returns an error message or empty.
std::string accept_row(std::string_view id, std::string_view left, std::string_view right,
                       std::string_view label, std::unordered_set<std::string>& seen_ids,
                       PairCorpus& corpus) {
  if (blank(id)) return "empty pair_id";
  if (blank(left)) return "empty left sentence";
  if (blank(right)) return "empty right sentence";
  auto side = parse_label(label);
  if (!side) return "invalid label '" + std::string(label) + "' (expected left or right)";
  std::string key(id);
  if (!seen_ids.insert(key).second) return "duplicate pair_id '" + key + "'";
  corpus.pairs.push_back(SentencePair{key, std::string(left), std::string(right), *side, key});
  return {};
}

}  // namespace

std::string_view side_name(Side s) { return s == Side::Left ? "left" : "right"; }

PairFormat parse_pair_format(std::string_view name) {
  if (name == "tsv") return PairFormat::Tsv;
  if (name == "jsonl") return PairFormat::Jsonl;
  throw std::invalid_argument("unknown pair format '" + std::string(name) + "'");
}

PairFormat guess_pair_format(const std::filesystem::path& path) {
  auto ext = path.extension().string();
  return (ext == ".jsonl" || ext == ".json") ? PairFormat::Jsonl : PairFormat::Tsv;
}

LoadResult parse_pairs(std::string_view text, PairFormat format, std::string name) {
  LoadResult result;
  result.corpus.name = std::move(name);
  std::unordered_set<std::string> seen;
  auto lines = split_lines(text);

  if (format == PairFormat::Tsv) {
    std::size_t first = 0;
    while (first < lines.size() && blank(lines[first])) ++first;
    if (first == lines.size()) return result;
    if (lines[first] != kTsvHeader) {
      throw std::runtime_error("pair TSV must start with header 'pair_id<TAB>left<TAB>right<TAB>label'");
    }
    for (std::size_t i = first + 1; i < lines.size(); ++i) {
      if (blank(lines[i])) continue;
      auto fields = split_tabs(lines[i]);
      if (fields.size() != 4) {
        result.errors.push_back({i + 1, "expected 4 tab-separated fields, got " + std::to_string(fields.size())});
        continue;
      }
      auto err = accept_row(fields[0], fields[1], fields[2], fields[3], seen, result.corpus);
      if (!err.empty()) result.errors.push_back({i + 1, std::move(err)});
    }
    return result;
  }

  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (blank(lines[i])) continue;
    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(lines[i]);
    } catch (const nlohmann::json::parse_error& e) {
      result.errors.push_back({i + 1, std::string("invalid JSON: ") + e.what()});
      continue;
    }
    auto field = [&](const char* key) -> std::optional<std::string> {
      if (!obj.is_object() || !obj.contains(key)) return std::nullopt;
      const auto& v = obj.at(key);
      if (v.is_string()) return v.get<std::string>();
      if (v.is_number_integer()) return std::to_string(v.get<long long>());
      return std::nullopt;
    };
    auto id = field("pair_id");
    auto left = field("left");
    auto right = field("right");
    auto label = field("label");
    if (!id || !left || !right || !label) {
      result.errors.push_back({i + 1, "missing or non-string key (need pair_id, left, right, label)"});
      continue;
    }
    auto err = accept_row(*id, *left, *right, *label, seen, result.corpus);
    if (!err.empty()) result.errors.push_back({i + 1, std::move(err)});
  }
  return result;
}

LoadResult load_pairs(const std::filesystem::path& path, PairFormat format, std::string name) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read pair file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (name.empty()) name = path.stem().string();
  return parse_pairs(buf.str(), format, std::move(name));
}

std::string format_pairs(const PairCorpus& corpus, PairFormat format) {
  std::string out;
  if (format == PairFormat::Tsv) {
    out.append(kTsvHeader).push_back('\n');
    for (const auto& p : corpus.pairs) {
      for (const auto* field : {&p.pair_id, &p.left, &p.right}) {
        if (field->find_first_of("\t\r\n") != std::string::npos) {
          throw std::invalid_argument("pair '" + p.pair_id + "': TSV fields cannot contain tabs or newlines");
        }
      }
      out += p.pair_id + '\t' + p.left + '\t' + p.right + '\t' + std::string(side_name(p.label)) + '\n';
    }
    return out;
  }
  for (const auto& p : corpus.pairs) {
    nlohmann::ordered_json obj;
    obj["pair_id"] = p.pair_id;
    obj["left"] = p.left;
    obj["right"] = p.right;
    obj["label"] = side_name(p.label);
    out += obj.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace) + '\n';
  }
  return out;
}

void write_pairs(const PairCorpus& corpus, const std::filesystem::path& path, PairFormat format) {
  auto text = format_pairs(corpus, format);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write pair file: " + path.string());
  out << text;
}

PairCorpus symmetrize(const PairCorpus& corpus) {
  if (corpus.symmetrized) throw std::logic_error("corpus '" + corpus.name + "' is already symmetrized");
  PairCorpus out{corpus.name, corpus.pairs, true};
  out.pairs.reserve(corpus.pairs.size() * 2);
  for (const auto& p : corpus.pairs) {
    out.pairs.push_back(SentencePair{p.pair_id + "~swap", p.right, p.left, flip(p.label), p.group});
  }
  return out;
}

}  // namespace euphony
