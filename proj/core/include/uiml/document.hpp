#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "uiml/error.hpp"
#include "uiml/xml.hpp"

namespace uiml {

struct Vocabulary;

struct MetaEntry {
  std::string name;
  std::string content;
  friend bool operator==(const MetaEntry&, const MetaEntry&) = default;
};

/// A property value that is entirely `%constant-id%` refers to a content constant.
struct ContentRef {
  std::string constant;
  friend bool operator==(const ContentRef&, const ContentRef&) = default;
};

using PropertyValue = std::variant<std::string, ContentRef>;

/// What a style property applies to. `Root` is a property with neither
/// `part-name` nor `part-class`; it applies to the root parts of every structure.
enum class TargetKind { Part, Class, Root };

struct PropertyBinding {
  TargetKind target_kind = TargetKind::Root;
  std::string target;  // part name or class name; empty for Root
  std::string name;    // possibly prefixed, e.g. "g:title", "h:link-color"
  PropertyValue value;
  SourceLocation location;

  friend bool operator==(const PropertyBinding&, const PropertyBinding&) = default;
};

struct Part {
  std::string name;
  std::string class_name;
  /// Inline properties (`<part><style>...</style></part>`). Platform documents
  /// use them for intrinsic properties fixed by a mapping template.
  std::vector<PropertyBinding> properties;
  std::vector<Part> children;
  SourceLocation location;

  friend bool operator==(const Part&, const Part&) = default;
};

struct Structure {
  std::string id;
  std::vector<Part> roots;
  SourceLocation location;

  friend bool operator==(const Structure&, const Structure&) = default;
};

struct Style {
  std::string id;
  std::optional<std::string> source;
  std::vector<PropertyBinding> properties;
  SourceLocation location;

  friend bool operator==(const Style&, const Style&) = default;
};

struct Constant {
  std::string id;
  std::string text;
  SourceLocation location;
  friend bool operator==(const Constant&, const Constant&) = default;
};

struct ContentGroup {
  std::string id;
  std::vector<Constant> constants;
  SourceLocation location;

  const Constant* find(std::string_view constant_id) const;
  friend bool operator==(const ContentGroup&, const ContentGroup&) = default;
};

using EventData = std::map<std::string, std::string>;

struct EventOccurs {
  std::string part;
  std::string event_class;
  friend bool operator==(const EventOccurs&, const EventOccurs&) = default;
};

struct EventDataEquals {
  std::string part;
  std::string event_class;
  std::string data_name;
  std::string expected;
  friend bool operator==(const EventDataEquals&, const EventDataEquals&) = default;
};

using Condition = std::variant<EventOccurs, EventDataEquals>;

struct SetProperty {
  std::string part;
  std::string prop_name;
  std::string value;
  friend bool operator==(const SetProperty&, const SetProperty&) = default;
};

struct CallFunction {
  std::string function;
  std::vector<std::string> args;
  friend bool operator==(const CallFunction&, const CallFunction&) = default;
};

struct FireEvent {
  std::string part;
  std::string event_class;
  EventData data;
  friend bool operator==(const FireEvent&, const FireEvent&) = default;
};

struct Restructure {
  std::string structure_id;
  friend bool operator==(const Restructure&, const Restructure&) = default;
};

using Action = std::variant<SetProperty, CallFunction, FireEvent, Restructure>;

struct Rule {
  Condition condition;
  std::vector<Action> actions;
  SourceLocation location;
  friend bool operator==(const Rule&, const Rule&) = default;
};

struct Behavior {
  std::vector<Rule> rules;
  SourceLocation location;
  friend bool operator==(const Behavior&, const Behavior&) = default;
};

struct Interface {
  std::string name;
  std::vector<Structure> structures;
  std::vector<Style> styles;
  std::vector<ContentGroup> contents;
  std::vector<Behavior> behaviors;
  SourceLocation location;

  const Structure* find_structure(std::string_view id) const;
  const Style* find_style(std::string_view id) const;
  const ContentGroup* find_content(std::string_view id) const;

  /// The first part named `name` across all structures, in structure order.
  const Part* find_part(std::string_view name) const;

  friend bool operator==(const Interface&, const Interface&) = default;
};

struct UimlDocument {
  std::optional<std::string> doc_name;
  std::optional<std::string> doctype;
  std::vector<MetaEntry> head;
  std::vector<Interface> interfaces;
  /// `<peers>` and `<template>` blocks, preserved verbatim but not interpreted.
  std::vector<xml::Element> opaque;

  friend bool operator==(const UimlDocument&, const UimlDocument&) = default;
};

/// Parses UIML text. Throws UimlError: MalformedXml (Syntax), or a Validation
/// error such as UnknownElement, DuplicatePartName, DanglingStyleSource,
/// StyleSourceCycle, EmptyInterface.
UimlDocument parse_document(std::string_view source);

/// Canonical form: fixed attribute order per element, 2-space indentation,
/// LF line endings, trailing newline.
std::string serialize_document(const UimlDocument& doc);

/// Checks every class, property and event name against `vocab` and every
/// cross reference inside the document. An empty result means conforming.
std::vector<Diagnostic> validate(const UimlDocument& doc, const Vocabulary& vocab);

bool has_errors(const std::vector<Diagnostic>& diagnostics);

// Helpers shared by the passes.

void for_each_part(const Structure& s, const std::function<void(const Part&)>& fn);
void for_each_part(const Part& p, const std::function<void(const Part&)>& fn);
std::size_t count_parts(const Structure& s);

/// `%id%` when the whole text is one reference, literal otherwise.
PropertyValue parse_property_value(std::string_view text);
std::string to_text(const PropertyValue& value);

/// Returns the part of the condition/action naming a part, if any.
const std::string& condition_part(const Condition& c);
const std::string& condition_event(const Condition& c);

}  // namespace uiml
