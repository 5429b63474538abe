#include <random>

#include "check.hpp"
#include "paths.hpp"
#include "uiml/style.hpp"

using namespace uiml;
using namespace uiml::testing;

namespace {

const char* kTree = R"(<structure><part name="Top" class="G:TopContainer"><part name="L" class="G:Label"/>)"
                    R"(<part name="B" class="G:Button"/></part></structure>)";

Interface iface_of(const std::string& body) {
  return parse_document("<uiml><interface>" + std::string(kTree) + body + "</interface></uiml>").interfaces.at(0);
}

struct Bind {
  bool by_class;
  std::string target, prop, value;
};

std::string style_xml(const std::string& id, const std::optional<std::string>& source, const std::vector<Bind>& bs) {
  std::string s = "<style id=\"" + id + "\"" + (source ? " source=\"" + *source + "\"" : "") + ">";
  for (const auto& b : bs)
    s += std::string("<property ") + (b.by_class ? "part-class" : "part-name") + "=\"" + b.target + "\" name=\"" + b.prop +
         "\">" + b.value + "</property>";
  return s + "</style>";
}

// Last write wins over the concatenation root..leaf, then platform filter.
std::map<std::string, PropertyTable> fold(const std::vector<std::vector<Bind>>& chain, bool by_class,
                                          const std::string& prefix) {
  std::map<std::string, PropertyTable> out;
  for (const auto& style : chain)
    for (const auto& b : style) {
      if (b.by_class != by_class) continue;
      auto p = b.prop.substr(0, 2);
      if (p != "g:" && p != prefix) continue;
      out[b.target][b.prop] = b.value;
    }
  return out;
}

}  // namespace

TEST_CASE("source chain folds root-first") {
  auto iface = iface_of(style_xml("a", std::nullopt, {{false, "L", "g:text", "one"}, {false, "B", "g:text", "ok"}}) +
                        style_xml("b", "a", {{false, "L", "g:text", "two"}}) +
                        style_xml("c", "b", {{false, "L", "g:foreground", "red"}, {false, "L", "g:text", "x"},
                                             {false, "L", "g:text", "three"}}));
  auto es = resolve_style(iface, "c", std::nullopt, "h:");
  CHECK(es.style_id == "c");
  CHECK(es.part_props["L"] == PropertyTable{{"g:foreground", "red"}, {"g:text", "three"}});
  CHECK(es.part_props["B"] == PropertyTable{{"g:text", "ok"}});
  CHECK(resolve_style(iface, "b", std::nullopt, "h:").part_props["L"]["g:text"] == "two");
  CHECK(resolve_style(iface, "a", std::nullopt, "h:").part_props["L"]["g:text"] == "one");
}

TEST_CASE("three styles: platform filtering per target") {
  auto iface = parse_document(read_fixture("three_styles.uiml")).interfaces.at(0);
  auto html = resolve_style(iface, "onlyHTML", std::nullopt, "h:");
  auto top = iface.structures[0].roots[0];
  CHECK(effective_props_for_part(html, top) == PropertyTable{{"g:title", "My User Interface"}, {"h:link-color", "red"}});
  auto java_on_html = resolve_style(iface, "onlyJava", std::nullopt, "h:");
  CHECK(effective_props_for_part(java_on_html, top) == PropertyTable{{"g:title", "My User Interface"}});
  auto java = resolve_style(iface, "onlyJava", std::nullopt, "j:");
  CHECK(effective_props_for_part(java, top) == PropertyTable{{"g:title", "My User Interface"}, {"j:resizable", "red"}});
  auto generic = resolve_style(iface, "onlyJava", std::nullopt, "g:");
  CHECK(effective_props_for_part(generic, top) == PropertyTable{{"g:title", "My User Interface"}});
  // Root bindings do not reach children.
  CHECK(effective_props_for_part(html, top.children[0]).empty());
}

TEST_CASE("applies_to_platform") {
  CHECK(applies_to_platform("g:title", "h:"));
  CHECK(applies_to_platform("title", "j:"));
  CHECK(applies_to_platform("H:link-color", "h:"));
  CHECK_FALSE(applies_to_platform("h:link-color", "j:"));
  CHECK_FALSE(applies_to_platform("j:resizable", "g:"));
}

TEST_CASE("class, part and inline precedence") {
  auto iface = iface_of(style_xml("s", std::nullopt,
                                  {{false, "B", "g:text", "part"}, {true, "G:Button", "g:text", "class"},
                                   {true, "G:Button", "g:background", "grey"}}));
  auto es = resolve_style(iface, "s", std::nullopt, "g:");
  Part b = iface.structures[0].roots[0].children[1];
  CHECK(effective_props_for_part(es, b) == PropertyTable{{"g:background", "grey"}, {"g:text", "part"}});
  b.properties.push_back(PropertyBinding{TargetKind::Part, "B", "g:text", std::string("inline"), {}});
  CHECK(effective_props_for_part(es, b).at("g:text") == "inline");
  CHECK(effective_props_for_part(es, iface.structures[0].roots[0].children[0]).empty());
}

TEST_CASE("a class binding reaches every button of the data-collection form") {
  auto text = read_fixture("data_collection.uiml");
  auto at = text.find("</interface>");
  REQUIRE(at != std::string::npos);
  text.insert(at, R"(<style id="s"><property part-class="G:Button" name="g:background">silver</property></style>)");
  auto iface = parse_document(text).interfaces.at(0);
  auto es = resolve_style(iface, "s", std::nullopt, "h:");
  std::vector<std::string> got;
  for_each_part(iface.structures[0], [&](const Part& p) {
    if (effective_props_for_part(es, p).count("g:background")) got.push_back(p.name);
  });
  CHECK(got == std::vector<std::string>{"OKBtn", "CancelBtn", "ResetBtn"});
}

TEST_CASE("content selection") {
  auto iface = parse_document(read_fixture("bilingual.uiml")).interfaces.at(0);
  auto en = resolve_style(iface, "shared", std::nullopt, "h:");
  CHECK(en.content_id == "english");
  CHECK(en.part_props["Hello"]["g:text"] == "Hello & welcome");
  auto fr = resolve_style(iface, "shared", std::string("french"), "h:");
  CHECK(fr.part_props["Frame"]["g:title"] == "Bienvenue");
  CHECK(fr.part_props["Hello"]["g:text"] == "Bonjour <ami>");
  CHECK(fr.class_props["G:Label"]["g:foreground"] == "navy");
  CHECK(select_content(iface, std::string("french")).id == "french");
  CHECK(select_content(iface, std::nullopt).id == "english");
  CHECK_THROWS_CODE(resolve_style(iface, "shared", std::string("german"), "h:"), "UnknownContentGroup");
  CHECK_THROWS_CODE(resolve_style(iface, "nope", std::nullopt, "h:"), "UnknownStyle");
  CHECK(select_content(iface_of(""), std::nullopt).constants.empty());
}

TEST_CASE("a constant missing from the selected group") {
  auto iface = iface_of(style_xml("s", std::nullopt, {{false, "L", "g:text", "%gone%"}}) +
                        R"(<content id="c"><constant id="here">x</constant></content>)");
  CHECK_THROWS_CODE(resolve_style(iface, "s", std::nullopt, "h:"), "UnresolvedConstant");
}

TEST_CASE("style selection") {
  CHECK_FALSE(select_style_id(iface_of(""), std::nullopt));
  CHECK(select_style_id(iface_of(style_xml("only", std::nullopt, {})), std::nullopt) == "only");
  auto three = parse_document(read_fixture("three_styles.uiml")).interfaces.at(0);
  CHECK_THROWS_CODE(select_style_id(three, std::nullopt), "AmbiguousStyle");
  CHECK(select_style_id(three, std::string("onlyJava")) == "onlyJava");
  CHECK_THROWS_CODE(select_style_id(three, std::string("other")), "UnknownStyle");
  auto none = empty_style(three, std::nullopt, "h:");
  CHECK(none.part_props.empty());
  CHECK(none.class_props.empty());
}

TEST_CASE("random chains match a last-write-wins fold") {
  std::mt19937 rng(11);
  const std::vector<std::string> props = {"g:text", "g:background", "h:link-color", "j:resizable", "g:foreground"};
  const std::vector<std::string> parts = {"Top", "L", "B"};
  const std::vector<std::string> classes = {"G:Label", "G:Button"};
  for (int round = 0; round < 200; ++round) {
    std::size_t depth = 1 + rng() % 5;
    std::vector<std::vector<Bind>> chain(depth);
    std::string xml;
    for (std::size_t i = 0; i < depth; ++i) {
      std::size_t n = rng() % 5;
      for (std::size_t k = 0; k < n; ++k) {
        bool by_class = rng() % 3 == 0;
        chain[i].push_back({by_class, by_class ? classes[rng() % 2] : parts[rng() % 3], props[rng() % props.size()],
                            "v" + std::to_string(rng() % 4)});
      }
      xml += style_xml("s" + std::to_string(i), i ? std::optional<std::string>("s" + std::to_string(i - 1)) : std::nullopt,
                       chain[i]);
    }
    auto iface = iface_of(xml);
    auto leaf = "s" + std::to_string(depth - 1);
    for (std::string prefix : {"g:", "h:", "j:"}) {
      auto es = resolve_style(iface, leaf, std::nullopt, prefix);
      CHECK(es.part_props == fold(chain, false, prefix));
      CHECK(es.class_props == fold(chain, true, prefix));

      // filter idempotence: every survivor survives again
      for (const auto& [_, table] : es.part_props)
        for (const auto& [name, __] : table) CHECK(applies_to_platform(name, prefix));
    }
  }
}

TEST_CASE("fold is associative over chain splits") {
  // a<-b<-c vs a<-(b+c)
  auto split = iface_of(style_xml("a", std::nullopt, {{false, "L", "g:text", "1"}}) +
                        style_xml("b", "a", {{false, "L", "g:text", "2"}, {false, "B", "g:text", "b"}}) +
                        style_xml("c", "b", {{false, "B", "g:text", "c"}}));
  auto merged = iface_of(style_xml("a", std::nullopt, {{false, "L", "g:text", "1"}}) +
                         style_xml("bc", "a", {{false, "L", "g:text", "2"}, {false, "B", "g:text", "b"}, {false, "B", "g:text", "c"}}));
  CHECK(resolve_style(split, "c", std::nullopt, "h:").part_props == resolve_style(merged, "bc", std::nullopt, "h:").part_props);
}
