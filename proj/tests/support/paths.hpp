#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "uiml/pipeline.hpp"

namespace uiml::testing {

std::filesystem::path fixture_dir();
std::filesystem::path vocab_dir();
std::string read_fixture(const std::string& name);

/// Loaded once per process.
const Toolkit& toolkit();

/// Valid fixtures (top level of fixtures/), sorted by name.
std::vector<std::filesystem::path> corpus();

/// A fresh empty directory under the system temp dir.
std::filesystem::path scratch_dir(const std::string& tag);

}  // namespace uiml::testing
