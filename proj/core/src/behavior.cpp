#include "uiml/behavior.hpp"

#include "json.hpp"
#include "uiml/vocab.hpp"

namespace uiml {

using nlohmann::json;

namespace {

template <typename Widgets>
auto find_in(Widgets& ws, std::string_view name) -> decltype(&ws.front()) {
  for (auto& w : ws) {
    if (w.name == name) return &w;
    if (auto* hit = find_in(w.children, name)) return hit;
  }
  return nullptr;
}

std::size_t count(const std::vector<Widget>& ws) {
  std::size_t n = ws.size();
  for (const auto& w : ws) n += count(w.children);
  return n;
}

Widget build(const Part& p, const EffectiveStyle& es) {
  Widget w{p.name, p.class_name, effective_props_for_part(es, p), {}};
  for (const auto& c : p.children) w.children.push_back(build(c, es));
  return w;
}

void mount(RuntimeState& rt, const Structure& s) {
  rt.active_structure = s.id;
  rt.widgets.clear();
  for (const auto& root : s.roots) rt.widgets.push_back(build(root, rt.style));
}

const Interface& first_interface(const UimlDocument& doc) {
  if (doc.interfaces.empty()) throw UimlError(ErrorKind::Validation, "EmptyInterface", "document has no interface");
  return doc.interfaces.front();
}

class Dispatcher {
 public:
  Dispatcher(RuntimeState& rt, const Interface& iface) : rt_(rt), iface_(iface) {
    for (const auto& b : iface.behaviors) {
      for (const auto& r : b.rules) rules_.push_back(&r);
    }
  }

  void fire(const EventInstance& ev, std::size_t depth) {
    if (!rt_.find(ev.part)) {
      throw UimlError(ErrorKind::Domain, "UnknownPart",
                      "event '" + ev.event_class + "' names part '" + ev.part + "' absent from structure '" +
                          rt_.active_structure + "'");
    }
    for (const Rule* r : rules_) {
      if (!matches(r->condition, ev)) continue;
      for (const auto& a : r->actions) apply(a, depth);
    }
  }

  std::vector<ActionEffect> effects;

 private:
  RuntimeState& rt_;
  const Interface& iface_;
  std::vector<const Rule*> rules_;

  static bool matches(const Condition& c, const EventInstance& ev) {
    if (const auto* occurs = std::get_if<EventOccurs>(&c)) {
      return occurs->part == ev.part && occurs->event_class == ev.event_class;
    }
    const auto& eq = std::get<EventDataEquals>(c);
    if (eq.part != ev.part || eq.event_class != ev.event_class) return false;
    auto it = ev.data.find(eq.data_name);
    return it != ev.data.end() && it->second == eq.expected;
  }

  void apply(const Action& a, std::size_t depth) {
    if (const auto* set = std::get_if<SetProperty>(&a)) {
      auto* w = rt_.find(set->part);
      if (!w) {
        throw UimlError(ErrorKind::Domain, "UnknownPart",
                        "cannot set '" + set->prop_name + "' on part '" + set->part + "' absent from structure '" +
                            rt_.active_structure + "'");
      }
      auto prop = canonical_property_name(set->prop_name);
      std::optional<std::string> old;
      if (auto it = w->props.find(prop); it != w->props.end()) old = it->second;
      w->props[prop] = set->value;
      effects.push_back(PropertySet{set->part, prop, std::move(old), set->value});
    } else if (const auto* call = std::get_if<CallFunction>(&a)) {
      rt_.external_calls.push_back(CallRecord{call->function, call->args});
      effects.push_back(ExternalCall{call->function, call->args});
    } else if (const auto* fire_ev = std::get_if<FireEvent>(&a)) {
      EventInstance next{fire_ev->part, fire_ev->event_class, fire_ev->data};
      effects.push_back(EventFired{next});
      if (depth + 1 > rt_.event_depth_limit) {
        throw UimlError(ErrorKind::Domain, "EventCascadeOverflow",
                        "event cascade exceeded depth " + std::to_string(rt_.event_depth_limit) + " at '" +
                            next.part + "' " + next.event_class);
      }
      fire(next, depth + 1);
    } else {
      const auto& re = std::get<Restructure>(a);
      const auto* target = iface_.find_structure(re.structure_id);
      if (!target) {
        throw UimlError(ErrorKind::Domain, "UnknownStructure", "no structure with id '" + re.structure_id + "'");
      }
      auto from = rt_.active_structure;
      mount(rt_, *target);
      effects.push_back(Restructured{from, target->id});
    }
  }
};

std::string display_value(const std::optional<std::string>& s) {
  if (!s) return "<unset>";
  return json(*s).dump();
}

}  // namespace

Widget* RuntimeState::find(std::string_view part) { return find_in(widgets, part); }

const Widget* RuntimeState::find(std::string_view part) const {
  return find_in(widgets, part);
}

std::size_t RuntimeState::widget_count() const { return count(widgets); }

RuntimeState instantiate_runtime(const UimlDocument& doc, const EffectiveStyle& es, std::size_t event_depth_limit) {
  const auto& iface = first_interface(doc);
  RuntimeState rt;
  rt.style = es;
  rt.event_depth_limit = event_depth_limit;
  mount(rt, iface.structures.front());
  return rt;
}

std::vector<ActionEffect> dispatch(RuntimeState& rt, const UimlDocument& doc, const EventInstance& ev) {
  RuntimeState work = rt;
  Dispatcher d(work, first_interface(doc));
  d.fire(ev, 0);
  rt = std::move(work);
  return std::move(d.effects);
}

std::string to_line(const ActionEffect& effect) {
  return std::visit(
      [](const auto& e) -> std::string {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, PropertySet>) {
          return "PropertySet " + e.part + " " + e.prop + " " + display_value(e.old_value) + " -> " + display_value(e.new_value);
        } else if constexpr (std::is_same_v<T, ExternalCall>) {
          return "ExternalCall " + e.function + json(e.args).dump();
        } else if constexpr (std::is_same_v<T, EventFired>) {
          std::string line = "EventFired " + e.event.part + " " + e.event.event_class;
          if (!e.event.data.empty()) line += " " + json(e.event.data).dump();
          return line;
        } else {
          return "Restructured " + e.from + " -> " + e.to;
        }
      },
      effect);
}

std::string effects_to_json(const std::vector<ActionEffect>& effects) {
  json out = json::array();
  for (const auto& effect : effects) {
    out.push_back(std::visit(
        [](const auto& e) -> json {
          using T = std::decay_t<decltype(e)>;
          if constexpr (std::is_same_v<T, PropertySet>) {
            return {{"kind", "PropertySet"},
                    {"part", e.part},
                    {"prop", e.prop},
                    {"old", e.old_value ? json(*e.old_value) : json(nullptr)},
                    {"new", e.new_value}};
          } else if constexpr (std::is_same_v<T, ExternalCall>) {
            return {{"kind", "ExternalCall"}, {"function", e.function}, {"args", e.args}};
          } else if constexpr (std::is_same_v<T, EventFired>) {
            return {{"kind", "EventFired"},
                    {"part", e.event.part},
                    {"event_class", e.event.event_class},
                    {"data", e.event.data}};
          } else {
            return {{"kind", "Restructured"}, {"from", e.from}, {"to", e.to}};
          }
        },
        effect));
  }
  return out.dump(2) + "\n";
}

std::vector<EventInstance> parse_event_script(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw UimlError(ErrorKind::Syntax, "FormatError", std::string("event script: ") + e.what());
  }
  if (!root.is_array()) throw UimlError(ErrorKind::Syntax, "FormatError", "event script must be a JSON array");
  std::vector<EventInstance> out;
  for (std::size_t i = 0; i < root.size(); ++i) {
    const auto& r = root[i];
    auto where = "event script[" + std::to_string(i) + "]";
    if (!r.is_object() || !r.contains("part") || !r["part"].is_string() || !r.contains("event_class") ||
        !r["event_class"].is_string()) {
      throw UimlError(ErrorKind::Syntax, "FormatError", where + ": needs string fields 'part' and 'event_class'");
    }
    EventInstance ev{r["part"].get<std::string>(), r["event_class"].get<std::string>(), {}};
    if (r.contains("data")) {
      if (!r["data"].is_object()) throw UimlError(ErrorKind::Syntax, "FormatError", where + ".data must be an object");
      for (const auto& [k, v] : r["data"].items()) {
        if (!v.is_string()) throw UimlError(ErrorKind::Syntax, "FormatError", where + ".data values must be strings");
        ev.data[k] = v.get<std::string>();
      }
    }
    out.push_back(std::move(ev));
  }
  return out;
}

}  // namespace uiml
