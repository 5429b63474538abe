#pragma once

// Random UIML documents for property tests. Documents are built as plain
// records and written to XML text here, without going through the library's
// model or serializer, so laws can be checked against an independent view.

#include <map>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace uiml::testing {

struct GenPart {
  std::string name;
  std::string cls;
  std::vector<GenPart> children;
};

struct GenBinding {
  enum Kind { Part, Class, Root } kind = Part;
  std::string target;
  std::string prop;
  std::string value;
};

struct GenStyle {
  std::string id;
  std::optional<std::string> source;
  std::vector<GenBinding> bindings;
};

struct GenContent {
  std::string id;
  std::vector<std::pair<std::string, std::string>> constants;
};

struct GenCondition {
  std::string part;
  std::string event;
  std::optional<std::pair<std::string, std::string>> data_equals;
};

struct GenAction {
  enum Kind { Set, Call, Fire, Restructure } kind = Set;
  std::string part;   // Set, Fire
  std::string name;   // property, function, event class, or structure id
  std::string value;  // Set
  std::vector<std::string> args;
  std::map<std::string, std::string> data;
};

struct GenRule {
  GenCondition condition;
  std::vector<GenAction> actions;
};

struct GenStructure {
  std::optional<std::string> id;
  std::vector<GenPart> roots;
};

struct GenInterface {
  std::optional<std::string> name;
  std::vector<GenStructure> structures;
  std::vector<GenStyle> styles;
  std::vector<GenContent> contents;
  std::vector<GenRule> rules;
};

struct GenDoc {
  std::optional<std::string> name;
  std::vector<std::pair<std::string, std::string>> meta;
  std::vector<GenInterface> interfaces;
};

std::string to_xml(const GenDoc& doc);

/// Generic vocabulary read straight from the shipped JSON.
struct GenClass {
  bool container = false;
  std::vector<std::string> props;
  std::vector<std::string> events;
};
using GenVocab = std::map<std::string, GenClass>;
GenVocab load_gen_vocab(const std::string& path);

std::size_t count_parts(const GenPart& p);
std::size_t count_parts(const GenStructure& s);
void collect_parts(const GenPart& p, std::vector<const GenPart*>& out);

/// One G:TopContainer root with up to `max_parts` parts, chained styles and
/// rules that only touch generic properties and events.
GenDoc random_transform_doc(std::mt19937& rng, const GenVocab& vocab, std::size_t max_parts);

/// One or two structures, a single style, up to `max_rules` rules that may
/// cascade, restructure, or name parts outside the active structure.
GenDoc random_behavior_doc(std::mt19937& rng, const GenVocab& vocab, std::size_t max_rules);

/// Exercises every construct the grammar has: metadata, several interfaces,
/// chains, content groups, references, all action kinds, awkward text.
GenDoc random_roundtrip_doc(std::mt19937& rng, const GenVocab& vocab);

/// Short text drawn from a pool that includes markup-significant characters.
std::string random_text(std::mt19937& rng);

}  // namespace uiml::testing
