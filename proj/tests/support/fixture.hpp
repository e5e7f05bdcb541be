#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "euphony/phonodict.hpp"

namespace euphony::testing {

std::filesystem::path data_dir();
const PronDict& fixture_dict();
// Lowercase base headwords of the fixture dictionary, sorted.
const std::vector<std::string>& fixture_words();

// Fresh empty directory under the system temp dir.
std::filesystem::path scratch_dir(const std::string& tag);

std::string read_file(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace euphony::testing
