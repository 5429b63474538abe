#include <algorithm>
#include <set>

#include "uiml/document.hpp"
#include "uiml/vocab.hpp"

namespace uiml {

namespace {

class Validator {
 public:
  Validator(const Vocabulary& vocab, std::vector<Diagnostic>& out) : vocab_(vocab), out_(out) {}

  void interface(const Interface& iface) {
    iface_ = &iface;
    constants_.clear();
    for (const auto& g : iface.contents) {
      for (const auto& c : g.constants) constants_.insert(c.id);
    }
    for (const auto& s : iface.structures) {
      for_each_part(s, [&](const Part& p) { part(p); });
    }
    for (const auto& style : iface.styles) {
      for (const auto& b : style.properties) binding(b);
    }
    for (const auto& behavior : iface.behaviors) {
      for (const auto& r : behavior.rules) rule(r);
    }
  }

  void opaque(const xml::Element& e) {
    warn("OpaqueElement", "<" + e.name + "> is preserved but not interpreted", e.location);
  }

 private:
  const Vocabulary& vocab_;
  std::vector<Diagnostic>& out_;
  const Interface* iface_ = nullptr;
  std::set<std::string> constants_;

  void error(std::string code, std::string message, SourceLocation at) {
    out_.push_back(Diagnostic{Severity::Error, std::move(code), std::move(message), at});
  }
  void warn(std::string code, std::string message, SourceLocation at) {
    out_.push_back(Diagnostic{Severity::Warning, std::move(code), std::move(message), at});
  }

  const ClassSpec* class_of(const std::string& class_name, SourceLocation at) {
    const auto* spec = vocab_.find(class_name);
    if (!spec) error("UnknownClass", "class '" + class_name + "' is not in vocabulary '" + vocab_.id + "'", at);
    return spec;
  }

  /// Unprefixed names are generic; everything else must carry a registered prefix.
  bool prefix_ok(const std::string& prop, SourceLocation at) {
    auto prefix = property_prefix(prop);
    if (prefix.empty()) return true;
    const auto& known = registered_prefixes();
    if (std::find(known.begin(), known.end(), prefix) == known.end()) {
      error("UnknownPrefix", "property '" + prop + "' has unregistered prefix '" + prefix + "'", at);
      return false;
    }
    return true;
  }

  void property_on(const ClassSpec& spec, const std::string& class_name, const std::string& prop,
                   SourceLocation at) {
    if (!prefix_ok(prop, at)) return;
    std::string name = property_prefix(prop).empty() ? std::string(vocab_.platform_prefix) + prop
                                                       : canonical_property_name(prop);
    if (!spec.has_property(name)) {
      error("UnknownProperty", "class '" + class_name + "' has no property '" + prop + "'", at);
    }
  }

  void value(const PropertyValue& v, SourceLocation at) {
    if (const auto* ref = std::get_if<ContentRef>(&v); ref && !constants_.count(ref->constant)) {
      error("UnresolvedConstant", "constant '" + ref->constant + "' is absent from every content group", at);
    }
  }

  void part(const Part& p) {
    if (const auto* spec = class_of(p.class_name, p.location)) {
      if (!spec->container && !p.children.empty()) {
        error("NotAContainer", "part '" + p.name + "' of class '" + p.class_name + "' cannot hold children",
              p.location);
      }
      for (const auto& b : p.properties) {
        property_on(*spec, p.class_name, b.name, b.location);
        value(b.value, b.location);
      }
    }
  }

  const Part* referenced_part(const std::string& name, SourceLocation at) {
    const auto* p = iface_->find_part(name);
    if (!p) error("DanglingPartRef", "no part named '" + name + "'", at);
    return p;
  }

  void binding(const PropertyBinding& b) {
    value(b.value, b.location);
    switch (b.target_kind) {
      case TargetKind::Part:
        if (const auto* p = referenced_part(b.target, b.location)) {
          if (const auto* spec = vocab_.find(p->class_name)) property_on(*spec, p->class_name, b.name, b.location);
        }
        break;
      case TargetKind::Class:
        if (const auto* spec = class_of(b.target, b.location)) property_on(*spec, b.target, b.name, b.location);
        break;
      case TargetKind::Root:
        for (const auto& s : iface_->structures) {
          for (const auto& root : s.roots) {
            if (const auto* spec = vocab_.find(root.class_name)) {
              property_on(*spec, root.class_name, b.name, b.location);
            }
          }
        }
        break;
    }
  }

  void event_on(const std::string& part_name, const std::string& event, SourceLocation at) {
    const auto* p = referenced_part(part_name, at);
    if (!p) return;
    const auto* spec = vocab_.find(p->class_name);
    if (spec && !spec->has_event(event)) {
      error("UnknownEvent", "class '" + p->class_name + "' has no event '" + event + "'", at);
    }
  }

  void rule(const Rule& r) {
    event_on(condition_part(r.condition), condition_event(r.condition), r.location);
    for (const auto& a : r.actions) {
      if (const auto* set = std::get_if<SetProperty>(&a)) {
        if (const auto* p = referenced_part(set->part, r.location)) {
          if (const auto* spec = vocab_.find(p->class_name)) {
            property_on(*spec, p->class_name, set->prop_name, r.location);
          }
        }
      } else if (const auto* fire = std::get_if<FireEvent>(&a)) {
        event_on(fire->part, fire->event_class, r.location);
      } else if (const auto* re = std::get_if<Restructure>(&a)) {
        if (!iface_->find_structure(re->structure_id)) {
          error("DanglingStructureRef", "no structure with id '" + re->structure_id + "'", r.location);
        }
      }
    }
  }
};

}  // namespace

std::vector<Diagnostic> validate(const UimlDocument& doc, const Vocabulary& vocab) {
  std::vector<Diagnostic> out;
  Validator v(vocab, out);
  for (const auto& iface : doc.interfaces) v.interface(iface);
  for (const auto& blob : doc.opaque) v.opaque(blob);
  return out;
}

}  // namespace uiml
