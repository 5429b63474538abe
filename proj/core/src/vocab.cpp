#include "uiml/vocab.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace uiml {

using nlohmann::json;

bool ClassSpec::has_property(std::string_view name) const {
  return std::any_of(properties.begin(), properties.end(),
                     [&](const PropertySpec& p) { return p.name == name; });
}

bool ClassSpec::has_event(std::string_view name) const {
  return std::find(events.begin(), events.end(), name) != events.end();
}

const ClassSpec* Vocabulary::find(std::string_view class_name) const {
  auto it = classes.find(std::string(class_name));
  return it == classes.end() ? nullptr : &it->second;
}

const std::vector<std::string>& registered_prefixes() {
  static const std::vector<std::string> prefixes{"g:", "h:", "j:"};
  return prefixes;
}

std::string property_prefix(std::string_view name) {
  auto colon = name.find(':');
  if (colon == std::string_view::npos) return {};
  std::string prefix(name.substr(0, colon + 1));
  std::transform(prefix.begin(), prefix.end(), prefix.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return prefix;
}

std::string_view property_base(std::string_view name) {
  auto colon = name.find(':');
  return colon == std::string_view::npos ? name : name.substr(colon + 1);
}

std::string canonical_property_name(std::string_view name) {
  auto prefix = property_prefix(name);
  if (prefix.empty()) return std::string(kGenericPrefix) + std::string(name);
  return prefix + std::string(property_base(name));
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UimlError(ErrorKind::Environment, "FileNotFound", "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

namespace {

[[noreturn]] void format_error(const std::string& message, SourceLocation at = {}) {
  throw UimlError(ErrorKind::Syntax, "FormatError", message, at);
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    SourceLocation at;
    at.offset = e.byte > 0 ? e.byte - 1 : 0;
    at.line = 1;
    at.column = 1;
    for (std::size_t i = 0; i < at.offset && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++at.line;
        at.column = 1;
      } else {
        ++at.column;
      }
    }
    format_error(e.what(), at);
  }
}

const json& field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) format_error(where + ": missing field '" + key + "'");
  return obj.at(key);
}

std::string string_field(const json& obj, const char* key, const std::string& where) {
  const auto& v = field(obj, key, where);
  if (!v.is_string() || v.get<std::string>().empty()) format_error(where + "." + key + ": expected a non-empty string");
  return v.get<std::string>();
}

ValueKind parse_kind(const std::string& kind, const std::string& where) {
  if (kind == "text") return ValueKind::Text;
  if (kind == "color") return ValueKind::Color;
  if (kind == "boolean") return ValueKind::Boolean;
  if (kind == "integer") return ValueKind::Integer;
  format_error(where + ": unknown value kind '" + kind + "'");
}

bool valid_prefix(const std::string& p) {
  if (p.size() < 2 || p.back() != ':') return false;
  return std::all_of(p.begin(), p.end() - 1, [](unsigned char c) { return std::islower(c); });
}

}  // namespace

Vocabulary parse_vocabulary(std::string_view json_text) {
  auto root = parse_json(json_text);
  Vocabulary v;
  v.id = string_field(root, "id", "vocabulary");
  v.family = string_field(root, "family", "vocabulary");
  v.platform_prefix = string_field(root, "platform_prefix", "vocabulary");
  if (!valid_prefix(v.platform_prefix)) {
    format_error("vocabulary.platform_prefix: must be lowercase and colon-terminated, got '" + v.platform_prefix + "'");
  }
  const auto& classes = field(root, "classes", "vocabulary");
  if (!classes.is_array() || classes.empty()) format_error("vocabulary.classes: expected a non-empty array");
  for (std::size_t i = 0; i < classes.size(); ++i) {
    std::string where = "classes[" + std::to_string(i) + "]";
    const auto& c = classes[i];
    auto name = string_field(c, "name", where);
    ClassSpec spec;
    spec.container = c.value("container", false);
    for (const auto& p : c.value("properties", json::array())) {
      PropertySpec ps;
      ps.name = string_field(p, "name", where + ".properties");
      ps.kind = parse_kind(p.value("kind", std::string("text")), where + ".properties");
      if (spec.has_property(ps.name)) format_error(where + ": duplicate property '" + ps.name + "'");
      spec.properties.push_back(std::move(ps));
    }
    for (const auto& e : c.value("events", json::array())) {
      if (!e.is_string()) format_error(where + ".events: expected strings");
      spec.events.push_back(e.get<std::string>());
    }
    if (v.classes.count(name)) {
      throw UimlError(ErrorKind::Syntax, "DuplicateClass", "class '" + name + "' is defined twice");
    }
    v.classes.emplace(std::move(name), std::move(spec));
  }
  return v;
}

Vocabulary load_vocabulary(const std::filesystem::path& path) { return parse_vocabulary(read_text_file(path)); }

namespace {

[[noreturn]] void unknown_class(const std::string& message) {
  throw UimlError(ErrorKind::Syntax, "UnknownClassInMapping", message);
}

[[noreturn]] void bad_expansion(const std::string& message) {
  throw UimlError(ErrorKind::Syntax, "BadExpansion", message);
}

[[noreturn]] void bad_route(const std::string& message) {
  throw UimlError(ErrorKind::Syntax, "BadRoute", message);
}

Route parse_route(const json& j, const char* name_key, const std::string& where) {
  Route r;
  const auto& idx = field(j, "part", where);
  if (!idx.is_number_unsigned()) format_error(where + ".part: expected a non-negative index");
  r.index = idx.get<std::size_t>();
  r.target = string_field(j, name_key, where);
  return r;
}

std::map<std::string, Route> parse_routes(const json& entry, const char* key, const char* name_key,
                                          const std::string& where) {
  std::map<std::string, Route> out;
  if (!entry.contains(key)) return out;
  const auto& table = entry.at(key);
  if (!table.is_object()) format_error(where + "." + key + ": expected an object");
  for (const auto& [name, r] : table.items()) {
    out.emplace(name, parse_route(r, name_key, where + "." + key + "." + name));
  }
  return out;
}

}  // namespace

MappingSet parse_mapping(std::string_view json_text, const Vocabulary& from, const Vocabulary& to) {
  auto root = parse_json(json_text);
  MappingSet ms;
  ms.id = root.value("id", std::string());
  ms.from_vocab = string_field(root, "from", "mapping");
  ms.to_vocab = string_field(root, "to", "mapping");
  if (ms.id.empty()) ms.id = ms.from_vocab + "-to-" + ms.to_vocab;
  if (ms.from_vocab != from.id) format_error("mapping.from: '" + ms.from_vocab + "' does not match vocabulary '" + from.id + "'");
  if (ms.to_vocab != to.id) format_error("mapping.to: '" + ms.to_vocab + "' does not match vocabulary '" + to.id + "'");
  ms.target_prefix = to.platform_prefix;

  const auto& entries = field(root, "entries", "mapping");
  if (!entries.is_array()) format_error("mapping.entries: expected an array");
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& e = entries[i];
    std::string where = "entries[" + std::to_string(i) + "]";
    auto generic = string_field(e, "class", where);
    const auto* generic_spec = from.find(generic);
    if (!generic_spec) unknown_class(where + ": '" + generic + "' is not in vocabulary '" + from.id + "'");
    if (ms.entries.count(generic)) format_error(where + ": class '" + generic + "' is mapped twice");

    MappingEntry entry;
    const auto& expansion = field(e, "expansion", where);
    if (!expansion.is_array() || expansion.empty()) bad_expansion(where + ".expansion: expected a non-empty array");
    for (std::size_t k = 0; k < expansion.size(); ++k) {
      std::string twhere = where + ".expansion[" + std::to_string(k) + "]";
      TargetPartTemplate t;
      t.class_name = string_field(expansion[k], "class", twhere);
      if (!to.find(t.class_name)) unknown_class(twhere + ": '" + t.class_name + "' is not in vocabulary '" + to.id + "'");
      if (expansion[k].contains("parent")) {
        const auto& p = expansion[k].at("parent");
        if (!p.is_number_unsigned() || p.get<std::size_t>() >= k) {
          bad_expansion(twhere + ".parent: must index an earlier template");
        }
        t.parent = p.get<std::size_t>();
        if (!to.find(entry.expansion[*t.parent].class_name)->container) {
          bad_expansion(twhere + ": parent template is not a container");
        }
      } else if (k != 0) {
        bad_expansion(twhere + ": only the first template may omit 'parent'");
      }
      const json intrinsic = expansion[k].value("intrinsic", json::object());
      for (const auto& [prop, value] : intrinsic.items()) {
        if (!value.is_string()) format_error(twhere + ".intrinsic." + prop + ": expected a string");
        t.intrinsic.emplace_back(prop, value.get<std::string>());
      }
      entry.expansion.push_back(std::move(t));
    }

    const auto& anchor = field(e, "child_anchor", where);
    if (!anchor.is_number_unsigned()) format_error(where + ".child_anchor: expected an index");
    entry.child_anchor = anchor.get<std::size_t>();
    if (entry.child_anchor >= entry.expansion.size()) {
      throw UimlError(ErrorKind::Syntax, "BadAnchor", where + ": child_anchor out of range");
    }
    if (generic_spec->container && !to.find(entry.expansion[entry.child_anchor].class_name)->container) {
      throw UimlError(ErrorKind::Syntax, "BadAnchor",
                      where + ": child_anchor '" + entry.expansion[entry.child_anchor].class_name +
                          "' is not a container");
    }

    entry.property_routes = parse_routes(e, "property_routes", "property", where);
    entry.platform_routes = parse_routes(e, "platform_routes", "property", where);
    entry.event_routes = parse_routes(e, "event_routes", "event", where);

    auto check = [&](const std::map<std::string, Route>& routes, bool events, const char* table) {
      for (const auto& [source, r] : routes) {
        std::string rwhere = where + "." + table + "." + source;
        if (r.index >= entry.expansion.size()) bad_route(rwhere + ": template index out of range");
        const auto* target_spec = to.find(entry.expansion[r.index].class_name);
        bool declared = events ? target_spec->has_event(r.target) : target_spec->has_property(r.target);
        if (!declared) {
          bad_route(rwhere + ": '" + r.target + "' is not declared by target class '" +
                    entry.expansion[r.index].class_name + "'");
        }
        bool known = events ? generic_spec->has_event(source) : generic_spec->has_property(source);
        if (!known) bad_route(rwhere + ": '" + source + "' is not declared by '" + generic + "'");
      }
    };
    check(entry.property_routes, false, "property_routes");
    check(entry.platform_routes, false, "platform_routes");
    check(entry.event_routes, true, "event_routes");
    for (const auto& [source, r] : entry.platform_routes) {
      if (property_prefix(source) != ms.target_prefix) {
        bad_route(where + ".platform_routes." + source + ": must carry the target prefix '" + ms.target_prefix + "'");
      }
    }

    ms.entries.emplace(std::move(generic), std::move(entry));
  }

  for (const auto& [name, spec] : from.classes) {
    if (!ms.entries.count(name)) {
      ms.warnings.push_back(Diagnostic{Severity::Warning, "UnmappedClass",
                                       "class '" + name + "' has no entry in mapping '" + ms.id + "'", {}});
    }
  }
  return ms;
}

MappingSet load_mapping(const std::filesystem::path& path, const Vocabulary& from, const Vocabulary& to) {
  return parse_mapping(read_text_file(path), from, to);
}

const MappingEntry& lookup_expansion(const MappingSet& ms, std::string_view class_name) {
  auto it = ms.entries.find(std::string(class_name));
  if (it == ms.entries.end()) {
    throw UimlError(ErrorKind::Domain, "NotMapped",
                    "class '" + std::string(class_name) + "' has no entry in mapping '" + ms.id + "'");
  }
  return it->second;
}

}  // namespace uiml
