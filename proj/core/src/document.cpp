#include "uiml/document.hpp"

#include <set>
#include <unordered_map>
#include <unordered_set>

namespace uiml {

const Constant* ContentGroup::find(std::string_view constant_id) const {
  for (const auto& c : constants) {
    if (c.id == constant_id) return &c;
  }
  return nullptr;
}

const Structure* Interface::find_structure(std::string_view id) const {
  for (const auto& s : structures) {
    if (s.id == id) return &s;
  }
  return nullptr;
}

const Style* Interface::find_style(std::string_view id) const {
  for (const auto& s : styles) {
    if (s.id == id) return &s;
  }
  return nullptr;
}

const ContentGroup* Interface::find_content(std::string_view id) const {
  for (const auto& c : contents) {
    if (c.id == id) return &c;
  }
  return nullptr;
}

namespace {

const Part* find_in(const Part& p, std::string_view name) {
  if (p.name == name) return &p;
  for (const auto& c : p.children) {
    if (const auto* hit = find_in(c, name)) return hit;
  }
  return nullptr;
}

}  // namespace

const Part* Interface::find_part(std::string_view name) const {
  for (const auto& s : structures) {
    for (const auto& r : s.roots) {
      if (const auto* hit = find_in(r, name)) return hit;
    }
  }
  return nullptr;
}

void for_each_part(const Part& p, const std::function<void(const Part&)>& fn) {
  fn(p);
  for (const auto& c : p.children) for_each_part(c, fn);
}

void for_each_part(const Structure& s, const std::function<void(const Part&)>& fn) {
  for (const auto& r : s.roots) for_each_part(r, fn);
}

std::size_t count_parts(const Structure& s) {
  std::size_t n = 0;
  for_each_part(s, [&](const Part&) { ++n; });
  return n;
}

PropertyValue parse_property_value(std::string_view text) {
  if (text.size() >= 3 && text.front() == '%' && text.back() == '%') {
    auto inner = text.substr(1, text.size() - 2);
    if (inner.find('%') == std::string_view::npos &&
        inner.find_first_of(" \t\r\n") == std::string_view::npos) {
      return ContentRef{std::string(inner)};
    }
  }
  return std::string(text);
}

std::string to_text(const PropertyValue& value) {
  if (const auto* ref = std::get_if<ContentRef>(&value)) return "%" + ref->constant + "%";
  return std::get<std::string>(value);
}

const std::string& condition_part(const Condition& c) {
  return std::visit([](const auto& v) -> const std::string& { return v.part; }, c);
}

const std::string& condition_event(const Condition& c) {
  return std::visit([](const auto& v) -> const std::string& { return v.event_class; }, c);
}

bool has_errors(const std::vector<Diagnostic>& diagnostics) {
  for (const auto& d : diagnostics) {
    if (d.severity == Severity::Error) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

[[noreturn]] void invalid(std::string code, const std::string& message, SourceLocation at) {
  throw UimlError(ErrorKind::Validation, std::move(code), message, at);
}

bool blank(std::string_view s) { return s.find_first_not_of(" \t\r\n") == std::string_view::npos; }

/// Rejects non-whitespace character data in element-only content.
void element_only(const xml::Element& e) {
  for (const auto& child : e.children) {
    if (const auto* t = std::get_if<xml::Text>(&child); t && !blank(t->value)) {
      invalid("UnexpectedText", "unexpected text inside <" + e.name + ">", t->location);
    }
  }
}

std::string required(const xml::Element& e, std::string_view attr) {
  auto v = e.attribute(attr);
  if (!v || v->empty()) {
    invalid("MissingAttribute", "<" + e.name + "> requires attribute '" + std::string(attr) + "'",
            e.location);
  }
  return *v;
}

[[noreturn]] void unknown(const xml::Element& e, std::string_view parent) {
  invalid("UnknownElement", "<" + e.name + "> is not allowed inside <" + std::string(parent) + ">",
          e.location);
}

PropertyBinding parse_property(const xml::Element& e) {
  PropertyBinding b;
  b.location = e.location;
  auto name = e.attribute("name");
  if (!name) name = e.attribute("id");
  if (!name || name->empty()) {
    invalid("MissingAttribute", "<property> requires attribute 'name'", e.location);
  }
  b.name = *name;
  auto part = e.attribute("part-name");
  auto cls = e.attribute("part-class");
  if (part && cls) {
    invalid("ConflictingTarget", "<property> may not carry both part-name and part-class", e.location);
  }
  if (part) {
    b.target_kind = TargetKind::Part;
    b.target = *part;
  } else if (cls) {
    b.target_kind = TargetKind::Class;
    b.target = *cls;
  }
  for (const auto* child : e.elements()) unknown(*child, "property");
  b.value = parse_property_value(e.text());
  return b;
}

std::vector<PropertyBinding> parse_inline_style(const xml::Element& e) {
  element_only(e);
  std::vector<PropertyBinding> props;
  for (const auto* child : e.elements()) {
    if (child->name != "property") unknown(*child, "style");
    auto b = parse_property(*child);
    if (b.target_kind != TargetKind::Root) {
      invalid("ConflictingTarget", "inline properties apply to their enclosing part", child->location);
    }
    props.push_back(std::move(b));
  }
  return props;
}

Part parse_part(const xml::Element& e) {
  element_only(e);
  Part p;
  p.location = e.location;
  p.name = required(e, "name");
  p.class_name = required(e, "class");
  for (const auto* child : e.elements()) {
    if (child->name == "part") {
      p.children.push_back(parse_part(*child));
    } else if (child->name == "style") {
      auto props = parse_inline_style(*child);
      p.properties.insert(p.properties.end(), props.begin(), props.end());
    } else {
      unknown(*child, "part");
    }
  }
  return p;
}

Structure parse_structure(const xml::Element& e, std::size_t ordinal) {
  element_only(e);
  Structure s;
  s.location = e.location;
  s.id = e.attribute("id").value_or("");
  if (s.id.empty()) s.id = "structure-" + std::to_string(ordinal);
  for (const auto* child : e.elements()) {
    if (child->name != "part") unknown(*child, "structure");
    s.roots.push_back(parse_part(*child));
  }
  std::unordered_set<std::string> seen;
  for_each_part(s, [&](const Part& p) {
    if (!seen.insert(p.name).second) {
      invalid("DuplicatePartName",
              "part name '" + p.name + "' is used more than once in structure '" + s.id + "'",
              p.location);
    }
  });
  return s;
}

Style parse_style(const xml::Element& e, std::size_t ordinal) {
  element_only(e);
  Style s;
  s.location = e.location;
  s.id = e.attribute("id").value_or("");
  if (s.id.empty()) s.id = "style-" + std::to_string(ordinal);
  if (auto src = e.attribute("source"); src && !src->empty()) s.source = *src;
  for (const auto* child : e.elements()) {
    if (child->name != "property") unknown(*child, "style");
    s.properties.push_back(parse_property(*child));
  }
  return s;
}

ContentGroup parse_content(const xml::Element& e, std::size_t ordinal) {
  element_only(e);
  ContentGroup g;
  g.location = e.location;
  g.id = e.attribute("id").value_or("");
  if (g.id.empty()) g.id = "content-" + std::to_string(ordinal);
  for (const auto* child : e.elements()) {
    if (child->name != "constant") unknown(*child, "content");
    Constant c;
    c.location = child->location;
    c.id = required(*child, "id");
    for (const auto* nested : child->elements()) unknown(*nested, "constant");
    c.text = child->attribute("value").value_or(child->text());
    if (g.find(c.id)) {
      invalid("DuplicateConstant", "constant '" + c.id + "' appears twice in content '" + g.id + "'",
              c.location);
    }
    g.constants.push_back(std::move(c));
  }
  return g;
}

EventData parse_event_data(const xml::Element& e) {
  EventData data;
  for (const auto* child : e.elements()) {
    if (child->name != "data") unknown(*child, e.name);
    auto key = required(*child, "name");
    for (const auto* nested : child->elements()) unknown(*nested, "data");
    data[key] = child->attribute("value").value_or(child->text());
  }
  return data;
}

Condition parse_condition(const xml::Element& e) {
  element_only(e);
  auto kids = e.elements();
  if (kids.size() != 1) invalid("BadCondition", "<condition> needs exactly one <event> or <equal>", e.location);
  const auto& c = *kids.front();
  if (c.name == "event") {
    element_only(c);
    if (!c.elements().empty()) unknown(*c.elements().front(), "event");
    return EventOccurs{required(c, "part-name"), required(c, "class")};
  }
  if (c.name == "equal") {
    element_only(c);
    const xml::Element* ev = nullptr;
    const xml::Element* data = nullptr;
    for (const auto* k : c.elements()) {
      if (k->name == "event" && !ev) {
        ev = k;
      } else if (k->name == "data" && !data) {
        data = k;
      } else {
        unknown(*k, "equal");
      }
    }
    if (!ev || !data) invalid("BadCondition", "<equal> needs one <event> and one <data>", c.location);
    EventDataEquals out;
    out.part = required(*ev, "part-name");
    out.event_class = required(*ev, "class");
    out.data_name = required(*data, "name");
    out.expected = data->attribute("value").value_or(data->text());
    return out;
  }
  unknown(c, "condition");
}

Action parse_action(const xml::Element& e) {
  if (e.name == "property") {
    auto b = parse_property(e);
    if (b.target_kind != TargetKind::Part) {
      invalid("MissingAttribute", "action <property> requires attribute 'part-name'", e.location);
    }
    return SetProperty{b.target, b.name, e.text()};
  }
  if (e.name == "call") {
    element_only(e);
    CallFunction call{required(e, "name"), {}};
    for (const auto* p : e.elements()) {
      if (p->name != "param") unknown(*p, "call");
      call.args.push_back(p->attribute("value").value_or(p->text()));
    }
    return call;
  }
  if (e.name == "event") {
    element_only(e);
    return FireEvent{required(e, "part-name"), required(e, "class"), parse_event_data(e)};
  }
  if (e.name == "restructure") {
    element_only(e);
    if (!e.elements().empty()) unknown(*e.elements().front(), "restructure");
    return Restructure{required(e, "structure")};
  }
  unknown(e, "action");
}

Rule parse_rule(const xml::Element& e) {
  element_only(e);
  const xml::Element* cond = nullptr;
  const xml::Element* act = nullptr;
  for (const auto* k : e.elements()) {
    if (k->name == "condition" && !cond) {
      cond = k;
    } else if (k->name == "action" && !act) {
      act = k;
    } else {
      unknown(*k, "rule");
    }
  }
  if (!cond) invalid("BadRule", "<rule> requires a <condition>", e.location);
  if (!act) invalid("EmptyRule", "<rule> requires an <action>", e.location);
  Rule r;
  r.location = e.location;
  r.condition = parse_condition(*cond);
  element_only(*act);
  for (const auto* a : act->elements()) r.actions.push_back(parse_action(*a));
  if (r.actions.empty()) invalid("EmptyRule", "<action> must contain at least one action", act->location);
  return r;
}

Behavior parse_behavior(const xml::Element& e) {
  element_only(e);
  Behavior b;
  b.location = e.location;
  for (const auto* k : e.elements()) {
    if (k->name != "rule") unknown(*k, "behavior");
    b.rules.push_back(parse_rule(*k));
  }
  return b;
}

void check_style_chains(const Interface& iface) {
  for (const auto& s : iface.styles) {
    if (s.source && !iface.find_style(*s.source)) {
      invalid("DanglingStyleSource",
              "style '" + s.id + "' names unknown source style '" + *s.source + "'", s.location);
    }
  }
  for (const auto& s : iface.styles) {
    std::set<std::string> visited{s.id};
    const Style* cur = &s;
    while (cur->source) {
      cur = iface.find_style(*cur->source);
      if (!visited.insert(cur->id).second) {
        invalid("StyleSourceCycle", "style source chain starting at '" + s.id + "' is cyclic",
                s.location);
      }
    }
  }
}

Interface parse_interface(const xml::Element& e, std::size_t ordinal) {
  element_only(e);
  Interface iface;
  iface.location = e.location;
  iface.name = e.attribute("name").value_or("");
  if (iface.name.empty()) iface.name = "interface-" + std::to_string(ordinal);
  for (const auto* k : e.elements()) {
    if (k->name == "structure") {
      auto s = parse_structure(*k, iface.structures.size() + 1);
      if (iface.find_structure(s.id)) {
        invalid("DuplicateStructureId", "structure id '" + s.id + "' is used twice", s.location);
      }
      iface.structures.push_back(std::move(s));
    } else if (k->name == "style") {
      auto s = parse_style(*k, iface.styles.size() + 1);
      if (iface.find_style(s.id)) {
        invalid("DuplicateStyleId", "style id '" + s.id + "' is used twice", s.location);
      }
      iface.styles.push_back(std::move(s));
    } else if (k->name == "content") {
      auto c = parse_content(*k, iface.contents.size() + 1);
      if (iface.find_content(c.id)) {
        invalid("DuplicateContentId", "content id '" + c.id + "' is used twice", c.location);
      }
      iface.contents.push_back(std::move(c));
    } else if (k->name == "behavior") {
      iface.behaviors.push_back(parse_behavior(*k));
    } else {
      unknown(*k, "interface");
    }
  }
  if (iface.structures.empty()) {
    invalid("EmptyInterface", "interface '" + iface.name + "' has no <structure>", e.location);
  }
  check_style_chains(iface);
  return iface;
}

/// Opaque blobs are kept in the form the writer emits: blank text dropped,
/// adjacent text merged and trimmed, CDATA folded into plain text.
xml::Element normalize_opaque(const xml::Element& e) {
  xml::Element out;
  out.name = e.name;
  out.attributes = e.attributes;
  out.location = e.location;
  std::string pending;
  auto flush = [&] {
    auto first = pending.find_first_not_of(" \t\r\n");
    if (first != std::string::npos) {
      auto last = pending.find_last_not_of(" \t\r\n");
      out.children.emplace_back(xml::Text{pending.substr(first, last - first + 1), {}, false});
    }
    pending.clear();
  };
  for (const auto& child : e.children) {
    if (const auto* t = std::get_if<xml::Text>(&child)) {
      pending += t->value;
    } else {
      flush();
      out.children.emplace_back(normalize_opaque(std::get<xml::Element>(child)));
    }
  }
  flush();
  return out;
}

}  // namespace

UimlDocument parse_document(std::string_view source) {
  auto xdoc = xml::parse(source);
  const auto& root = xdoc.root;
  if (root.name != "uiml") invalid("UnknownElement", "root element must be <uiml>, found <" + root.name + ">", root.location);
  element_only(root);

  UimlDocument doc;
  doc.doctype = xdoc.doctype;
  if (auto n = root.attribute("name"); n && !n->empty()) doc.doc_name = *n;
  bool seen_head = false;
  for (const auto* k : root.elements()) {
    if (k->name == "head") {
      if (seen_head) invalid("UnknownElement", "<uiml> may contain only one <head>", k->location);
      seen_head = true;
      element_only(*k);
      for (const auto* m : k->elements()) {
        if (m->name != "meta") unknown(*m, "head");
        doc.head.push_back(MetaEntry{m->attribute("name").value_or(""), m->attribute("content").value_or("")});
      }
    } else if (k->name == "interface") {
      auto iface = parse_interface(*k, doc.interfaces.size() + 1);
      for (const auto& other : doc.interfaces) {
        if (other.name == iface.name) {
          invalid("DuplicateInterfaceName", "interface name '" + iface.name + "' is used twice", iface.location);
        }
      }
      doc.interfaces.push_back(std::move(iface));
    } else if (k->name == "peers" || k->name == "template") {
      doc.opaque.push_back(normalize_opaque(*k));
    } else {
      unknown(*k, "uiml");
    }
  }
  if (doc.interfaces.empty()) invalid("EmptyInterface", "document has no <interface>", root.location);
  return doc;
}

// ---------------------------------------------------------------------------
// Serialization

namespace {

class Writer {
 public:
  std::string out;

  void line(int depth, std::string_view text) {
    out.append(static_cast<std::size_t>(depth) * 2, ' ');
    out += text;
    out += '\n';
  }

  static std::string attr(std::string_view name, std::string_view value) {
    return " " + std::string(name) + "=\"" + xml::escape(value) + "\"";
  }

  void property(int depth, const PropertyBinding& b) {
    std::string open = "<property" + attr("name", b.name);
    if (b.target_kind == TargetKind::Part) open += attr("part-name", b.target);
    if (b.target_kind == TargetKind::Class) open += attr("part-class", b.target);
    line(depth, open + ">" + xml::escape(to_text(b.value)) + "</property>");
  }

  void part(int depth, const Part& p) {
    std::string open = "<part" + attr("name", p.name) + attr("class", p.class_name);
    if (p.properties.empty() && p.children.empty()) {
      line(depth, open + "/>");
      return;
    }
    line(depth, open + ">");
    if (!p.properties.empty()) {
      line(depth + 1, "<style>");
      for (const auto& b : p.properties) property(depth + 2, b);
      line(depth + 1, "</style>");
    }
    for (const auto& c : p.children) part(depth + 1, c);
    line(depth, "</part>");
  }

  void data(int depth, const EventData& d) {
    for (const auto& [k, v] : d) line(depth, "<data" + attr("name", k) + ">" + xml::escape(v) + "</data>");
  }

  void event(int depth, const std::string& part, const std::string& cls, const EventData& d) {
    std::string open = "<event" + attr("part-name", part) + attr("class", cls);
    if (d.empty()) {
      line(depth, open + "/>");
      return;
    }
    line(depth, open + ">");
    data(depth + 1, d);
    line(depth, "</event>");
  }

  void condition(int depth, const Condition& c) {
    line(depth, "<condition>");
    if (const auto* occurs = std::get_if<EventOccurs>(&c)) {
      event(depth + 1, occurs->part, occurs->event_class, {});
    } else {
      const auto& eq = std::get<EventDataEquals>(c);
      line(depth + 1, "<equal>");
      event(depth + 2, eq.part, eq.event_class, {});
      line(depth + 2, "<data" + attr("name", eq.data_name) + ">" + xml::escape(eq.expected) + "</data>");
      line(depth + 1, "</equal>");
    }
    line(depth, "</condition>");
  }

  void action(int depth, const Action& a) {
    std::visit(
        [&](const auto& act) {
          using T = std::decay_t<decltype(act)>;
          if constexpr (std::is_same_v<T, SetProperty>) {
            line(depth, "<property" + attr("name", act.prop_name) + attr("part-name", act.part) + ">" +
                            xml::escape(act.value) + "</property>");
          } else if constexpr (std::is_same_v<T, CallFunction>) {
            if (act.args.empty()) {
              line(depth, "<call" + attr("name", act.function) + "/>");
            } else {
              line(depth, "<call" + attr("name", act.function) + ">");
              for (const auto& arg : act.args) line(depth + 1, "<param>" + xml::escape(arg) + "</param>");
              line(depth, "</call>");
            }
          } else if constexpr (std::is_same_v<T, FireEvent>) {
            event(depth, act.part, act.event_class, act.data);
          } else {
            line(depth, "<restructure" + attr("structure", act.structure_id) + "/>");
          }
        },
        a);
  }

  void interface(int depth, const Interface& iface) {
    line(depth, "<interface" + attr("name", iface.name) + ">");
    for (const auto& s : iface.structures) {
      if (s.roots.empty()) {
        line(depth + 1, "<structure" + attr("id", s.id) + "/>");
        continue;
      }
      line(depth + 1, "<structure" + attr("id", s.id) + ">");
      for (const auto& p : s.roots) part(depth + 2, p);
      line(depth + 1, "</structure>");
    }
    for (const auto& s : iface.styles) {
      std::string open = "<style" + attr("id", s.id);
      if (s.source) open += attr("source", *s.source);
      if (s.properties.empty()) {
        line(depth + 1, open + "/>");
        continue;
      }
      line(depth + 1, open + ">");
      for (const auto& b : s.properties) property(depth + 2, b);
      line(depth + 1, "</style>");
    }
    for (const auto& g : iface.contents) {
      if (g.constants.empty()) {
        line(depth + 1, "<content" + attr("id", g.id) + "/>");
        continue;
      }
      line(depth + 1, "<content" + attr("id", g.id) + ">");
      for (const auto& c : g.constants) {
        line(depth + 2, "<constant" + attr("id", c.id) + ">" + xml::escape(c.text) + "</constant>");
      }
      line(depth + 1, "</content>");
    }
    for (const auto& b : iface.behaviors) {
      if (b.rules.empty()) {
        line(depth + 1, "<behavior/>");
        continue;
      }
      line(depth + 1, "<behavior>");
      for (const auto& r : b.rules) {
        line(depth + 2, "<rule>");
        condition(depth + 3, r.condition);
        line(depth + 3, "<action>");
        for (const auto& a : r.actions) action(depth + 4, a);
        line(depth + 3, "</action>");
        line(depth + 2, "</rule>");
      }
      line(depth + 1, "</behavior>");
    }
    line(depth, "</interface>");
  }
};

}  // namespace

std::string serialize_document(const UimlDocument& doc) {
  Writer w;
  w.line(0, "<?xml version=\"1.0\" encoding=\"UTF-8\"?>");
  if (doc.doctype) w.line(0, "<!DOCTYPE " + *doc.doctype + ">");
  w.line(0, doc.doc_name ? "<uiml" + Writer::attr("name", *doc.doc_name) + ">" : "<uiml>");
  if (!doc.head.empty()) {
    w.line(1, "<head>");
    for (const auto& m : doc.head) {
      w.line(2, "<meta" + Writer::attr("name", m.name) + Writer::attr("content", m.content) + "/>");
    }
    w.line(1, "</head>");
  }
  for (const auto& iface : doc.interfaces) w.interface(1, iface);
  for (const auto& blob : doc.opaque) xml::write(w.out, blob, 1);
  w.line(0, "</uiml>");
  return std::move(w.out);
}

}  // namespace uiml
