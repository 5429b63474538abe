#include "uiml/render.hpp"

#include <algorithm>
#include <array>
#include <set>

#include "json.hpp"

namespace uiml {

using nlohmann::json;

namespace {

const Structure& active_structure(const UimlDocument& doc) {
  if (doc.interfaces.empty()) throw UimlError(ErrorKind::Validation, "EmptyInterface", "document has no interface");
  return doc.interfaces.front().structures.front();
}

std::string origin_of(const SourceMap& sm, const std::string& part) { return sm.origin(part).value_or(part); }

// HTML -----------------------------------------------------------------------

constexpr std::array kVoidElements{"base", "img", "input", "link", "meta"};
constexpr std::array kAttributeProps{"accept", "alt",  "charset", "checked", "href",
                                     "lang",   "name", "rel",     "size",    "src",
                                     "type",   "value"};

bool contains(const auto& table, std::string_view key) {
  return std::find(table.begin(), table.end(), key) != table.end();
}

class HtmlWriter {
 public:
  HtmlWriter(const EffectiveStyle& es, const SourceMap& sm, const Vocabulary& vocab, RenderOutput& out)
      : es_(es), sm_(sm), vocab_(vocab), out_(out) {}

  void element(const Part& p, int depth) {
    if (!vocab_.find(p.class_name)) {
      throw UimlError(ErrorKind::Domain, "UnknownHtmlClass",
                      "part '" + p.name + "' has class '" + p.class_name + "' which is not in vocabulary '" +
                          vocab_.id + "'",
                      p.location);
    }
    std::string tag = p.class_name;
    std::transform(tag.begin(), tag.end(), tag.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });

    std::map<std::string, std::string> attrs;
    std::map<std::string, std::string> css;
    std::map<std::string, std::string> rest;
    std::string text;
    auto src = origin_of(sm_, p.name);
    attrs["data-uiml-part"] = p.name;
    attrs["data-uiml-src"] = src;
    out_.annotations[p.name] = src;

    for (const auto& [name, value] : effective_props_for_part(es_, p)) {
      auto prefix = property_prefix(name);
      std::string base(property_base(name));
      bool renders = prefix == "g:" || prefix == "h:";
      if (renders && (base == "text" || base == "title") && !contains(kVoidElements, tag)) {
        text = value;
      } else if (renders && base == "link-color" && tag == "style") {
        text = "a { color: " + value + "; }";
      } else if (renders && (base == "background" || base == "color")) {
        css[base] = value;
      } else if (renders && contains(kAttributeProps, base)) {
        attrs[base] = value;
      } else {
        rest[name] = value;
      }
    }
    if (!css.empty()) {
      std::string style;
      for (const auto& [k, v] : css) style += (style.empty() ? "" : " ") + k + ": " + v + ";";
      attrs["style"] = style;
    }
    if (!rest.empty()) attrs["data-uiml-props"] = json(rest).dump();

    std::string open = "<" + tag;
    for (const auto& [k, v] : attrs) open += " " + k + "=\"" + xml::escape(v) + "\"";
    open += ">";

    std::string indent(static_cast<std::size_t>(depth) * 2, ' ');
    if (contains(kVoidElements, tag)) {
      line(indent + open);
      // Void elements cannot hold children; emit them as following siblings.
      for (const auto& c : p.children) element(c, depth);
      return;
    }
    if (p.children.empty()) {
      line(indent + open + xml::escape(text) + "</" + tag + ">");
      return;
    }
    line(indent + open);
    if (!text.empty()) line(indent + "  " + xml::escape(text));
    for (const auto& c : p.children) element(c, depth + 1);
    line(indent + "</" + tag + ">");
  }

 private:
  const EffectiveStyle& es_;
  const SourceMap& sm_;
  const Vocabulary& vocab_;
  RenderOutput& out_;

  void line(const std::string& s) {
    out_.text += s;
    out_.text += '\n';
  }
};

// Mock desktop ----------------------------------------------------------------

json mock_node(const Part& p, const EffectiveStyle& es, const SourceMap& sm, const Vocabulary& vocab,
               RenderOutput& out) {
  if (!vocab.find(p.class_name)) {
    throw UimlError(ErrorKind::Domain, "UnknownMockClass",
                    "part '" + p.name + "' has class '" + p.class_name + "' which is not in vocabulary '" +
                        vocab.id + "'",
                    p.location);
  }
  auto src = origin_of(sm, p.name);
  out.annotations[p.name] = src;
  json node;
  node["class"] = p.class_name;
  node["name"] = p.name;
  node["src"] = src;
  node["props"] = json::object();
  for (const auto& [name, value] : effective_props_for_part(es, p)) node["props"][name] = value;
  node["children"] = json::array();
  for (const auto& c : p.children) node["children"].push_back(mock_node(c, es, sm, vocab, out));
  return node;
}

}  // namespace

RenderOutput render_html(const UimlDocument& doc, const EffectiveStyle& es, const SourceMap& sm,
                         const Vocabulary& html_vocab) {
  RenderOutput out;
  out.target = "html";
  HtmlWriter w(es, sm, html_vocab, out);
  for (const auto& root : active_structure(doc).roots) w.element(root, 0);
  return out;
}

RenderOutput render_mockdesk(const UimlDocument& doc, const EffectiveStyle& es, const SourceMap& sm,
                             const Vocabulary& mock_vocab) {
  RenderOutput out;
  out.target = "mockdesk-json";
  const auto& roots = active_structure(doc).roots;
  json tree;
  if (roots.size() == 1) {
    tree = mock_node(roots.front(), es, sm, mock_vocab, out);
  } else {
    tree = json::array();
    for (const auto& r : roots) tree.push_back(mock_node(r, es, sm, mock_vocab, out));
  }
  out.text = tree.dump(2) + "\n";
  return out;
}

}  // namespace uiml
