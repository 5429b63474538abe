#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "uiml/document.hpp"
#include "uiml/style.hpp"

namespace uiml {

inline constexpr std::size_t kDefaultEventDepthLimit = 32;

struct Widget {
  std::string name;
  std::string class_name;
  PropertyTable props;
  std::vector<Widget> children;

  friend bool operator==(const Widget&, const Widget&) = default;
};

struct CallRecord {
  std::string function;
  std::vector<std::string> args;
  friend bool operator==(const CallRecord&, const CallRecord&) = default;
};

/// Live widget tree of the first interface. The tree always mirrors the
/// active structure's parts.
struct RuntimeState {
  std::string active_structure;
  std::vector<Widget> widgets;
  std::vector<CallRecord> external_calls;
  std::size_t event_depth_limit = kDefaultEventDepthLimit;
  EffectiveStyle style;

  Widget* find(std::string_view part);
  const Widget* find(std::string_view part) const;
  std::size_t widget_count() const;

  friend bool operator==(const RuntimeState&, const RuntimeState&) = default;
};

struct EventInstance {
  std::string part;
  std::string event_class;
  EventData data;
  friend bool operator==(const EventInstance&, const EventInstance&) = default;
};

struct PropertySet {
  std::string part;
  std::string prop;
  std::optional<std::string> old_value;
  std::string new_value;
  friend bool operator==(const PropertySet&, const PropertySet&) = default;
};

struct ExternalCall {
  std::string function;
  std::vector<std::string> args;
  friend bool operator==(const ExternalCall&, const ExternalCall&) = default;
};

struct EventFired {
  EventInstance event;
  friend bool operator==(const EventFired&, const EventFired&) = default;
};

struct Restructured {
  std::string from;
  std::string to;
  friend bool operator==(const Restructured&, const Restructured&) = default;
};

using ActionEffect = std::variant<PropertySet, ExternalCall, EventFired, Restructured>;

RuntimeState instantiate_runtime(const UimlDocument& doc, const EffectiveStyle& es,
                                 std::size_t event_depth_limit = kDefaultEventDepthLimit);

/// Runs every rule matching `ev`, in document order, applying actions in order
/// and cascading fired events depth-first. Returns the effects in execution
/// order. Either the whole dispatch commits or `rt` is left untouched:
/// throws UnknownPart, UnknownStructure or EventCascadeOverflow.
std::vector<ActionEffect> dispatch(RuntimeState& rt, const UimlDocument& doc, const EventInstance& ev);

/// One line per effect, e.g. `PropertySet TitleLabel g:text "" -> "Submitted"`.
std::string to_line(const ActionEffect& effect);

std::string effects_to_json(const std::vector<ActionEffect>& effects);

/// A JSON array of `{part, event_class, data?}` records.
std::vector<EventInstance> parse_event_script(std::string_view json_text);

}  // namespace uiml
