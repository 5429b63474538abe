#include "uiml/style.hpp"

#include <vector>

#include "uiml/vocab.hpp"

namespace uiml {

bool applies_to_platform(std::string_view name, std::string_view target_prefix) {
  auto prefix = property_prefix(canonical_property_name(name));
  return prefix == kGenericPrefix || prefix == target_prefix;
}

ContentGroup select_content(const Interface& iface, const std::optional<std::string>& content_id) {
  if (content_id) {
    if (const auto* g = iface.find_content(*content_id)) return *g;
    throw UimlError(ErrorKind::Domain, "UnknownContentGroup",
                    "interface '" + iface.name + "' has no content group '" + *content_id + "'");
  }
  if (!iface.contents.empty()) return iface.contents.front();
  return ContentGroup{};
}

std::optional<std::string> select_style_id(const Interface& iface, const std::optional<std::string>& requested) {
  if (requested) {
    if (!iface.find_style(*requested)) {
      throw UimlError(ErrorKind::Domain, "UnknownStyle", "interface '" + iface.name + "' has no style '" + *requested + "'");
    }
    return requested;
  }
  if (iface.styles.empty()) return std::nullopt;
  if (iface.styles.size() == 1) return iface.styles.front().id;
  std::string ids;
  for (const auto& s : iface.styles) ids += (ids.empty() ? "" : ", ") + s.id;
  throw UimlError(ErrorKind::Domain, "AmbiguousStyle",
                  "interface '" + iface.name + "' has several styles (" + ids + "); choose one");
}

namespace {

std::string resolve_value(const PropertyValue& v, const std::map<std::string, std::string>& constants,
                          const std::string& content_id, SourceLocation at) {
  if (const auto* ref = std::get_if<ContentRef>(&v)) {
    auto it = constants.find(ref->constant);
    if (it == constants.end()) {
      throw UimlError(ErrorKind::Domain, "UnresolvedConstant",
                      "constant '" + ref->constant + "' is not in content group '" + content_id + "'", at);
    }
    return it->second;
  }
  return std::get<std::string>(v);
}

EffectiveStyle seeded(const Interface& iface, const std::optional<std::string>& content_id,
                      std::string_view target_prefix) {
  EffectiveStyle es;
  auto group = select_content(iface, content_id);
  es.content_id = group.id;
  for (const auto& c : group.constants) es.constants[c.id] = c.text;
  es.target_prefix = std::string(target_prefix);
  return es;
}

}  // namespace

EffectiveStyle empty_style(const Interface& iface, const std::optional<std::string>& content_id,
                           std::string_view target_prefix) {
  return seeded(iface, content_id, target_prefix);
}

EffectiveStyle resolve_style(const Interface& iface, std::string_view style_id,
                             const std::optional<std::string>& content_id, std::string_view target_prefix) {
  const auto* style = iface.find_style(style_id);
  if (!style) {
    throw UimlError(ErrorKind::Domain, "UnknownStyle",
                    "interface '" + iface.name + "' has no style '" + std::string(style_id) + "'");
  }
  auto es = seeded(iface, content_id, target_prefix);
  es.style_id = style->id;

  // Most derived first; parse guarantees the chain is acyclic and closed.
  std::vector<const Style*> chain{style};
  while (chain.back()->source) chain.push_back(iface.find_style(*chain.back()->source));

  for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
    for (const auto& b : (*it)->properties) {
      if (!applies_to_platform(b.name, target_prefix)) continue;
      auto name = canonical_property_name(b.name);
      auto value = resolve_value(b.value, es.constants, es.content_id, b.location);
      switch (b.target_kind) {
        case TargetKind::Part:
          es.part_props[b.target][name] = value;
          break;
        case TargetKind::Class:
          es.class_props[b.target][name] = value;
          break;
        case TargetKind::Root:
          for (const auto& s : iface.structures) {
            for (const auto& root : s.roots) es.part_props[root.name][name] = value;
          }
          break;
      }
    }
  }
  return es;
}

PropertyTable effective_props_for_part(const EffectiveStyle& es, const Part& part) {
  PropertyTable out;
  if (auto it = es.class_props.find(part.class_name); it != es.class_props.end()) out = it->second;
  if (auto it = es.part_props.find(part.name); it != es.part_props.end()) {
    for (const auto& [k, v] : it->second) out[k] = v;
  }
  for (const auto& b : part.properties) {
    if (!applies_to_platform(b.name, es.target_prefix)) continue;
    out[canonical_property_name(b.name)] = resolve_value(b.value, es.constants, es.content_id, b.location);
  }
  return out;
}

}  // namespace uiml
