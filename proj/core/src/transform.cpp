#include "uiml/transform.hpp"

#include <set>
#include <unordered_map>
#include <unordered_set>

#include "json.hpp"

namespace uiml {

std::optional<std::string> SourceMap::origin(std::string_view target_part) const {
  auto it = entries.find(std::string(target_part));
  if (it == entries.end()) return std::nullopt;
  return it->second;
}

std::vector<std::string> SourceMap::images(std::string_view generic_part) const {
  std::vector<std::string> out;
  for (const auto& [target, generic] : entries) {
    if (generic == generic_part) out.push_back(target);
  }
  return out;
}

SourceMap SourceMap::identity(const UimlDocument& doc) {
  SourceMap sm;
  for (const auto& iface : doc.interfaces) {
    for (const auto& s : iface.structures) {
      for_each_part(s, [&](const Part& p) { sm.entries[p.name] = p.name; });
    }
  }
  return sm;
}

std::string SourceMap::to_json() const {
  nlohmann::json j;
  j["entries"] = nlohmann::json::object();
  for (const auto& [target, generic] : entries) j["entries"][target] = generic;
  return j.dump(2) + "\n";
}

RouteOutcome route_property(std::string_view prop_name, const MappingEntry& entry,
                            std::string_view target_prefix) {
  auto name = canonical_property_name(prop_name);
  auto prefix = property_prefix(name);
  if (prefix == kGenericPrefix) {
    auto it = entry.property_routes.find(name);
    if (it == entry.property_routes.end()) {
      throw UimlError(ErrorKind::Domain, "UnroutableProperty", "generic property '" + name + "' has no route");
    }
    return RoutedBinding{it->second.index, it->second.target};
  }
  if (prefix == target_prefix) {
    auto it = entry.platform_routes.find(name);
    if (it == entry.platform_routes.end()) return RoutedBinding{0, name};
    return RoutedBinding{it->second.index, it->second.target};
  }
  return Dropped{"'" + name + "' applies only to the '" + prefix + "' platform"};
}

namespace {

constexpr std::string_view kTopContainer = "G:TopContainer";

[[noreturn]] void rethrow_for_part(const UimlError& e, const std::string& part, SourceLocation at) {
  throw UimlError(e.kind(), e.code(), "part '" + part + "': " + e.to_diagnostic().message, at);
}

/// Generated names of one generic part, indexed like its expansion.
struct Images {
  const MappingEntry* entry = nullptr;
  std::vector<std::string> names;
};

class Transformer {
 public:
  explicit Transformer(const MappingSet& ms) : ms_(ms) {}

  TransformResult run(const UimlDocument& doc) {
    TransformResult out;
    result_ = &out;
    out.document.doc_name = doc.doc_name;
    out.document.doctype = doc.doctype;
    out.document.head = doc.head;
    out.document.opaque = doc.opaque;
    for (const auto& iface : doc.interfaces) out.document.interfaces.push_back(interface(iface));
    return out;
  }

 private:
  const MappingSet& ms_;
  TransformResult* result_ = nullptr;
  // Per structure, in interface order.
  std::vector<std::unordered_map<std::string, Images>> images_;
  std::unordered_set<std::string> used_names_;

  const MappingEntry& entry_for(const Part& p) {
    try {
      return lookup_expansion(ms_, p.class_name);
    } catch (const UimlError& e) {
      rethrow_for_part(e, p.name, p.location);
    }
  }

  std::string fresh_name(const std::string& base) {
    if (used_names_.insert(base).second) return base;
    for (int n = 2;; ++n) {
      auto candidate = base + "-" + std::to_string(n);
      if (used_names_.insert(candidate).second) return candidate;
    }
  }

  void check_siblings(const std::vector<Part>& siblings) {
    const Part* first = nullptr;
    for (const auto& p : siblings) {
      if (p.class_name != kTopContainer) continue;
      if (first) {
        throw UimlError(ErrorKind::Domain, "MultipleTopContainers",
                        "parts '" + first->name + "' and '" + p.name + "' are sibling top containers",
                        p.location);
      }
      first = &p;
    }
  }

  Part part(const Part& generic, std::unordered_map<std::string, Images>& images) {
    const auto& entry = entry_for(generic);
    Images img;
    img.entry = &entry;
    for (const auto& t : entry.expansion) img.names.push_back(fresh_name(generic.name + "." + t.class_name));

    std::vector<Part> made(entry.expansion.size());
    for (std::size_t k = 0; k < entry.expansion.size(); ++k) {
      const auto& t = entry.expansion[k];
      made[k].name = img.names[k];
      made[k].class_name = t.class_name;
      made[k].location = generic.location;
      for (const auto& [prop, value] : t.intrinsic) {
        made[k].properties.push_back(PropertyBinding{TargetKind::Root, {}, prop, value, generic.location});
      }
      result_->source_map.entries[img.names[k]] = generic.name;
    }
    for (const auto& b : generic.properties) {
      RouteOutcome outcome;
      try {
        outcome = route_property(b.name, entry, ms_.target_prefix);
      } catch (const UimlError& e) {
        rethrow_for_part(e, generic.name, b.location);
      }
      if (const auto* routed = std::get_if<RoutedBinding>(&outcome)) {
        made[routed->index].properties.push_back(
            PropertyBinding{TargetKind::Root, {}, routed->prop_name, b.value, b.location});
      } else {
        result_->report.dropped_properties.push_back({generic.name, b.name, std::get<Dropped>(outcome).reason});
      }
    }

    check_siblings(generic.children);
    for (const auto& child : generic.children) made[entry.child_anchor].children.push_back(part(child, images));

    // Assemble the template tree bottom-up: later templates only name earlier parents.
    for (std::size_t k = entry.expansion.size(); k-- > 1;) {
      auto parent = *entry.expansion[k].parent;
      auto& siblings = made[parent].children;
      siblings.insert(siblings.begin(), std::move(made[k]));
    }
    images.emplace(generic.name, std::move(img));
    return std::move(made[0]);
  }

  Structure structure(const Structure& generic) {
    Structure s;
    s.id = generic.id;
    s.location = generic.location;
    used_names_.clear();
    images_.emplace_back();
    check_siblings(generic.roots);
    for (const auto& root : generic.roots) s.roots.push_back(part(root, images_.back()));
    return s;
  }

  /// Images of `name` in the first structure that contains it.
  const Images* images_of(const std::string& name) const {
    for (const auto& per_structure : images_) {
      auto it = per_structure.find(name);
      if (it != per_structure.end()) return &it->second;
    }
    return nullptr;
  }

  void drop(const std::string& target, const std::string& prop, std::string reason) {
    result_->report.dropped_properties.push_back({target, prop, std::move(reason)});
  }

  /// Routes `b` onto the images of one generic part, appending to `out` unless
  /// an identical target binding is already there.
  void route_onto(const PropertyBinding& b, const Images& img, const std::string& generic_name,
                  std::vector<PropertyBinding>& out) {
    RouteOutcome outcome;
    try {
      outcome = route_property(b.name, *img.entry, ms_.target_prefix);
    } catch (const UimlError& e) {
      rethrow_for_part(e, generic_name, b.location);
    }
    if (const auto* routed = std::get_if<RoutedBinding>(&outcome)) {
      PropertyBinding nb{TargetKind::Part, img.names[routed->index], routed->prop_name, b.value, b.location};
      for (const auto& existing : out) {
        if (existing.target_kind == nb.target_kind && existing.target == nb.target &&
            existing.name == nb.name && existing.value == nb.value) {
          return;
        }
      }
      out.push_back(std::move(nb));
    } else {
      drop(generic_name, b.name, std::get<Dropped>(outcome).reason);
    }
  }

  std::vector<PropertyBinding> bindings(const Interface& iface, const std::vector<PropertyBinding>& in) {
    std::vector<PropertyBinding> out;
    for (const auto& b : in) {
      switch (b.target_kind) {
        case TargetKind::Part: {
          bool found = false;
          for (const auto& per_structure : images_) {
            auto it = per_structure.find(b.target);
            if (it == per_structure.end()) continue;
            found = true;
            route_onto(b, it->second, b.target, out);
          }
          if (!found) drop(b.target, b.name, "no part named '" + b.target + "'");
          break;
        }
        case TargetKind::Class: {
          const MappingEntry* entry;
          try {
            entry = &lookup_expansion(ms_, b.target);
          } catch (const UimlError& e) {
            throw UimlError(e.kind(), e.code(), "style property '" + b.name + "': " + e.to_diagnostic().message,
                            b.location);
          }
          RouteOutcome outcome;
          try {
            outcome = route_property(b.name, *entry, ms_.target_prefix);
          } catch (const UimlError& e) {
            throw UimlError(e.kind(), e.code(), "class '" + b.target + "': " + e.to_diagnostic().message, b.location);
          }
          if (const auto* routed = std::get_if<RoutedBinding>(&outcome)) {
            out.push_back(PropertyBinding{TargetKind::Class, entry->expansion[routed->index].class_name,
                                          routed->prop_name, b.value, b.location});
          } else {
            drop(b.target, b.name, std::get<Dropped>(outcome).reason);
          }
          break;
        }
        case TargetKind::Root:
          for (std::size_t si = 0; si < iface.structures.size(); ++si) {
            for (const auto& root : iface.structures[si].roots) {
              route_onto(b, images_[si].at(root.name), root.name, out);
            }
          }
          break;
      }
    }
    return out;
  }

  /// Returns the routed (part, event) or nullopt when the event belongs to another platform.
  std::optional<std::pair<std::string, std::string>> route_event(const std::string& part_name,
                                                                  const std::string& event, SourceLocation at) {
    const auto* img = images_of(part_name);
    if (!img) {
      throw UimlError(ErrorKind::Domain, "DanglingPartRef", "behavior names unknown part '" + part_name + "'", at);
    }
    auto prefix = property_prefix(event);
    if (prefix.empty() || prefix == kGenericPrefix) {
      auto name = canonical_property_name(event);
      auto it = img->entry->event_routes.find(name);
      if (it == img->entry->event_routes.end()) {
        throw UimlError(ErrorKind::Domain, "UnroutableEvent",
                        "part '" + part_name + "': generic event '" + name + "' has no route", at);
      }
      ++result_->report.translated_events;
      return std::pair{img->names[it->second.index], it->second.target};
    }
    if (prefix == ms_.target_prefix) return std::pair{img->names[0], event};
    return std::nullopt;
  }

  std::optional<Rule> rule(const Rule& in) {
    Rule r;
    r.location = in.location;
    const auto& part_name = condition_part(in.condition);
    auto routed = route_event(part_name, condition_event(in.condition), in.location);
    if (!routed) {
      drop(part_name, condition_event(in.condition), "rule listens for another platform's event");
      return std::nullopt;
    }
    r.condition = in.condition;
    std::visit(
        [&](auto& c) {
          c.part = routed->first;
          c.event_class = routed->second;
        },
        r.condition);

    for (const auto& a : in.actions) {
      if (const auto* set = std::get_if<SetProperty>(&a)) {
        const auto* img = images_of(set->part);
        if (!img) {
          throw UimlError(ErrorKind::Domain, "DanglingPartRef", "behavior names unknown part '" + set->part + "'",
                          in.location);
        }
        RouteOutcome outcome;
        try {
          outcome = route_property(set->prop_name, *img->entry, ms_.target_prefix);
        } catch (const UimlError& e) {
          rethrow_for_part(e, set->part, in.location);
        }
        if (const auto* rb = std::get_if<RoutedBinding>(&outcome)) {
          r.actions.push_back(SetProperty{img->names[rb->index], rb->prop_name, set->value});
        } else {
          drop(set->part, set->prop_name, std::get<Dropped>(outcome).reason);
        }
      } else if (const auto* fire = std::get_if<FireEvent>(&a)) {
        auto ev = route_event(fire->part, fire->event_class, in.location);
        if (ev) {
          r.actions.push_back(FireEvent{ev->first, ev->second, fire->data});
        } else {
          drop(fire->part, fire->event_class, "fires another platform's event");
        }
      } else {
        // CallFunction reaches application logic; Restructure keeps its id since
        // structures keep theirs.
        r.actions.push_back(a);
      }
    }
    if (r.actions.empty()) {
      result_->report.warnings.push_back(Diagnostic{Severity::Warning, "RuleDropped",
                                                    "every action of the rule targets another platform",
                                                    in.location});
      return std::nullopt;
    }
    return r;
  }

  Interface interface(const Interface& generic) {
    Interface iface;
    iface.name = generic.name;
    iface.location = generic.location;
    iface.contents = generic.contents;
    images_.clear();
    for (const auto& s : generic.structures) iface.structures.push_back(structure(s));
    for (const auto& style : generic.styles) {
      Style s;
      s.id = style.id;
      s.source = style.source;
      s.location = style.location;
      s.properties = bindings(generic, style.properties);
      iface.styles.push_back(std::move(s));
    }
    for (const auto& behavior : generic.behaviors) {
      Behavior b;
      b.location = behavior.location;
      for (const auto& r : behavior.rules) {
        if (auto routed = rule(r)) b.rules.push_back(std::move(*routed));
      }
      iface.behaviors.push_back(std::move(b));
    }
    return iface;
  }
};

}  // namespace

TransformResult transform(const UimlDocument& doc, const MappingSet& ms) { return Transformer(ms).run(doc); }

}  // namespace uiml
