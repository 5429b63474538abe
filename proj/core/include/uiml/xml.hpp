#pragma once

// A small non-validating XML reader that keeps source locations for every
// element and attribute. It understands what UIML documents use: the XML
// declaration, a DOCTYPE (skipped, never resolved), comments, processing
// instructions, CDATA, the five built-in entities and numeric character
// references. Anything else is reported as MalformedXml.

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "uiml/error.hpp"

namespace uiml::xml {

struct Attribute {
  std::string name;
  std::string value;
  SourceLocation location;

  friend bool operator==(const Attribute&, const Attribute&) = default;
};

struct Element;

struct Text {
  std::string value;
  SourceLocation location;
  bool cdata = false;

  friend bool operator==(const Text&, const Text&) = default;
};

using Node = std::variant<Element, Text>;

struct Element {
  std::string name;
  std::vector<Attribute> attributes;
  std::vector<Node> children;
  SourceLocation location;

  const Attribute* find_attribute(std::string_view attr) const;
  std::optional<std::string> attribute(std::string_view attr) const;

  /// Concatenated character data of the direct text children.
  std::string text() const;

  /// Direct element children, in document order.
  std::vector<const Element*> elements() const;

  friend bool operator==(const Element&, const Element&) = default;
};

struct Document {
  Element root;
  std::optional<std::string> doctype;  // raw DOCTYPE declaration body, if present
};

/// Parses `source`. Throws UimlError{Syntax, "MalformedXml"} with the offending location.
Document parse(std::string_view source);

/// Escapes `&`, `<`, `>` and `"` for use in text or attribute values.
std::string escape(std::string_view raw);

/// Writes `element` with 2-space indentation starting at `depth`, attributes
/// in their stored order. Whitespace-only text children are dropped.
void write(std::string& out, const Element& element, int depth);

}  // namespace uiml::xml
