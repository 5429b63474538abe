#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "uiml/error.hpp"

namespace uiml {

enum class ValueKind { Text, Color, Boolean, Integer };

struct PropertySpec {
  std::string name;
  ValueKind kind = ValueKind::Text;
};

struct ClassSpec {
  std::vector<PropertySpec> properties;
  std::vector<std::string> events;
  bool container = false;

  bool has_property(std::string_view name) const;
  bool has_event(std::string_view name) const;
};

/// Part classes, properties and events available on one platform or family.
struct Vocabulary {
  std::string id;
  std::string family;
  std::string platform_prefix;  // lowercase, colon-terminated: "g:", "h:", "j:"
  std::map<std::string, ClassSpec> classes;

  const ClassSpec* find(std::string_view class_name) const;
};

/// Where a generic property or event lands: which template of the expansion,
/// and under what name.
struct Route {
  std::size_t index = 0;
  std::string target;
};

struct TargetPartTemplate {
  std::string class_name;
  /// Index of the enclosing template; empty only for the expansion root (index 0).
  std::optional<std::size_t> parent;
  /// Identity properties fixed by the template (e.g. an input's type). Never routable.
  std::vector<std::pair<std::string, std::string>> intrinsic;
};

struct MappingEntry {
  std::vector<TargetPartTemplate> expansion;
  std::size_t child_anchor = 0;
  std::map<std::string, Route> property_routes;
  /// Target-platform-prefixed properties; anything absent lands on index 0 unchanged.
  std::map<std::string, Route> platform_routes;
  std::map<std::string, Route> event_routes;
};

struct MappingSet {
  std::string id;
  std::string from_vocab;
  std::string to_vocab;
  std::string target_prefix;
  std::map<std::string, MappingEntry> entries;
  /// Load-time notes, e.g. generic classes without an entry.
  std::vector<Diagnostic> warnings;
};

Vocabulary load_vocabulary(const std::filesystem::path& path);
Vocabulary parse_vocabulary(std::string_view json_text);

MappingSet load_mapping(const std::filesystem::path& path, const Vocabulary& from, const Vocabulary& to);
MappingSet parse_mapping(std::string_view json_text, const Vocabulary& from, const Vocabulary& to);

/// Throws UimlError{Domain, "NotMapped"} when `class_name` has no entry.
const MappingEntry& lookup_expansion(const MappingSet& ms, std::string_view class_name);

// Property-name prefixes ----------------------------------------------------

inline constexpr std::string_view kGenericPrefix = "g:";

/// The prefixes a property name may carry: the generic one plus one per platform.
const std::vector<std::string>& registered_prefixes();

/// Lowercased prefix including the colon, or empty when unprefixed.
std::string property_prefix(std::string_view name);

/// Lowercases the prefix and makes unprefixed names generic: "title" -> "g:title".
std::string canonical_property_name(std::string_view name);

/// The name without its prefix.
std::string_view property_base(std::string_view name);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace uiml
