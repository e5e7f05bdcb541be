#include "fixture.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#ifndef EUPHONY_TEST_DATA_DIR
#error "EUPHONY_TEST_DATA_DIR must be defined"
#endif

namespace euphony::testing {

std::filesystem::path data_dir() { return EUPHONY_TEST_DATA_DIR; }

const PronDict& fixture_dict() {
  static const PronDict dict = load_dict(data_dir() / "cmudict-fixture.dict");
  return dict;
}

const std::vector<std::string>& fixture_words() {
  static const std::vector<std::string> words = [] {
    std::set<std::string> out;
    std::ifstream in(data_dir() / "cmudict-fixture.dict");
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line.starts_with(";;;")) continue;
      std::string head = line.substr(0, line.find(' '));
      if (head.find('(') != std::string::npos) continue;
      std::transform(head.begin(), head.end(), head.begin(),
                     [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
      out.insert(head);
    }
    return std::vector<std::string>(out.begin(), out.end());
  }();
  return words;
}

std::filesystem::path scratch_dir(const std::string& tag) {
  auto dir = std::filesystem::temp_directory_path() / ("euphony-test-" + tag);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

}  // namespace euphony::testing
