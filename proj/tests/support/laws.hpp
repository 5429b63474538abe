#pragma once

#include <map>
#include <string>
#include <vector>

#include "gen.hpp"
#include "uiml/document.hpp"
#include "uiml/transform.hpp"

namespace uiml::testing {

/// Expansion sizes and anchor classes read straight from a `.map.json`.
struct RawMapping {
  struct Entry {
    std::size_t size = 0;
    std::string anchor_class;
  };
  std::map<std::string, Entry> entries;
  std::string target_prefix;
};

RawMapping load_raw_mapping(const std::string& path, const std::string& target_prefix);

/// Part count, child order, prefix purity, rule count and source-map totality
/// (plus bijectivity when asked). Returns one message per violation.
std::vector<std::string> check_transform_laws(const GenDoc& generic, const UimlDocument& out, const SourceMap& sm,
                                              const RawMapping& raw, bool expect_bijection);

}  // namespace uiml::testing
