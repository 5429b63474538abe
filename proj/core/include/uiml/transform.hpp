#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "uiml/document.hpp"
#include "uiml/vocab.hpp"

namespace uiml {

/// Generated (target) part name -> originating generic part name.
struct SourceMap {
  std::map<std::string, std::string> entries;

  std::optional<std::string> origin(std::string_view target_part) const;
  /// Every target part generated from `generic_part`, in name order.
  std::vector<std::string> images(std::string_view generic_part) const;

  /// Maps every part of `doc` to itself; used when a document is already platform-specific.
  static SourceMap identity(const UimlDocument& doc);

  /// `{"entries": {target: generic, ...}}` with sorted keys, 2-space indent, trailing newline.
  std::string to_json() const;

  friend bool operator==(const SourceMap&, const SourceMap&) = default;
};

struct DroppedProperty {
  std::string part;  // target of the binding (part, class, or "<root>")
  std::string prop;
  std::string reason;
};

struct TransformReport {
  std::vector<DroppedProperty> dropped_properties;
  std::size_t translated_events = 0;
  std::vector<Diagnostic> warnings;
};

struct TransformResult {
  UimlDocument document;
  SourceMap source_map;
  TransformReport report;
};

/// A property that survived routing: which expansion template receives it, and its target name.
struct RoutedBinding {
  std::size_t index = 0;
  std::string prop_name;
};

struct Dropped {
  std::string reason;
};

using RouteOutcome = std::variant<RoutedBinding, Dropped>;

/// Generic and unprefixed names follow the entry's property routes; names
/// carrying `target_prefix` follow its platform routes (default: template 0,
/// name unchanged); names for any other platform are dropped.
/// Throws UimlError{Domain, "UnroutableProperty"} for a generic name with no route.
RouteOutcome route_property(std::string_view prop_name, const MappingEntry& entry,
                            std::string_view target_prefix);

/// Rewrites a generic document into the vocabulary `ms` maps to. Throws
/// NotMapped, UnroutableProperty, UnroutableEvent or MultipleTopContainers
/// (all Domain errors) naming the offending part.
TransformResult transform(const UimlDocument& doc, const MappingSet& ms);

}  // namespace uiml
