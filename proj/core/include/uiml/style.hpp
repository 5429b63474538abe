#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "uiml/document.hpp"

namespace uiml {

using PropertyTable = std::map<std::string, std::string>;

/// The outcome of picking one style (and its source chain) and one content
/// group. Property names are canonical (`g:`-prefixed when written bare) and
/// every value is literal text.
struct EffectiveStyle {
  std::string style_id;
  std::string content_id;
  std::map<std::string, PropertyTable> part_props;
  std::map<std::string, PropertyTable> class_props;
  /// The selected content group, kept for resolving inline part properties.
  std::map<std::string, std::string> constants;
  std::string target_prefix;

  friend bool operator==(const EffectiveStyle&, const EffectiveStyle&) = default;
};

/// Folds the source chain of `style_id` root-first; within one style the last
/// binding wins. Properties for platforms other than `target_prefix` are
/// filtered out ("g:" keeps only generic ones). Throws UnknownStyle,
/// UnknownContentGroup, UnresolvedConstant.
EffectiveStyle resolve_style(const Interface& iface, std::string_view style_id,
                             const std::optional<std::string>& content_id, std::string_view target_prefix);

/// An empty effective style for interfaces that declare no style at all.
EffectiveStyle empty_style(const Interface& iface, const std::optional<std::string>& content_id,
                           std::string_view target_prefix);

/// class-level < part-level < inline (template intrinsic) properties.
PropertyTable effective_props_for_part(const EffectiveStyle& es, const Part& part);

/// The named group, else the first group, else an empty group.
ContentGroup select_content(const Interface& iface, const std::optional<std::string>& content_id);

/// Picks the style a render uses. With no request: the only style, nothing
/// when there are none, AmbiguousStyle when there are several.
std::optional<std::string> select_style_id(const Interface& iface, const std::optional<std::string>& requested);

/// True when a property named `name` survives filtering for `target_prefix`.
bool applies_to_platform(std::string_view name, std::string_view target_prefix);

}  // namespace uiml
