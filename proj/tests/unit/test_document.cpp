#include <random>

#include "check.hpp"
#include "gen.hpp"
#include "paths.hpp"
#include "uiml/document.hpp"

using namespace uiml;
using namespace uiml::testing;

namespace {

std::vector<std::pair<std::string, std::string>> flatten(const Structure& s) {
  std::vector<std::pair<std::string, std::string>> out;
  for_each_part(s, [&](const Part& p) { out.emplace_back(p.name, p.class_name); });
  return out;
}

const char* kMinimal = R"(<uiml><interface><structure><part name="Only" class="G:Label"/></structure></interface></uiml>)";

std::string wrap(const std::string& interface_body) {
  return "<uiml><interface>" + interface_body + "</interface></uiml>";
}

const std::string kTree = R"(<structure><part name="Top" class="G:TopContainer"><part name="B" class="G:Button"/></part></structure>)";

}  // namespace

TEST_CASE("data-collection listing parses to 18 parts") {
  auto doc = parse_document(read_fixture("data_collection.uiml"));
  REQUIRE(doc.interfaces.size() == 1);
  const auto& iface = doc.interfaces[0];
  CHECK(iface.name == "DataCollectionForm");
  REQUIRE(iface.structures.size() == 1);
  CHECK(iface.structures[0].id == "structure-1");
  CHECK(count_parts(iface.structures[0]) == 18);
  auto parts = flatten(iface.structures[0]);
  CHECK(parts.front() == std::make_pair(std::string("RequestWindow"), std::string("G:TopContainer")));
  CHECK(parts[1] == std::make_pair(std::string("EBlock1"), std::string("G:Area")));
  CHECK(parts.back() == std::make_pair(std::string("ResetBtn"), std::string("G:Button")));
  REQUIRE(doc.head.size() == 2);
  CHECK(doc.head[0].name == "Purpose");
  CHECK(doc.head[0].content == "Data Collection Form");
  CHECK(doc.head[1].content == "Farooq Ali");
  REQUIRE(doc.doctype);
}

TEST_CASE("minimal document: one root, one part") {
  auto doc = parse_document(kMinimal);
  const auto& s = doc.interfaces.at(0).structures.at(0);
  CHECK(s.roots.size() == 1);
  CHECK(count_parts(s) == 1);
  CHECK(doc.interfaces[0].name == "interface-1");
}

TEST_CASE("three-style listing keeps the source chain") {
  auto doc = parse_document(read_fixture("three_styles.uiml"));
  const auto& styles = doc.interfaces.at(0).styles;
  REQUIRE(styles.size() == 3);
  CHECK(styles[0].id == "allPlatforms");
  CHECK_FALSE(styles[0].source);
  CHECK(styles[1].id == "onlyHTML");
  CHECK(styles[1].source == "allPlatforms");
  CHECK(styles[2].source == "allPlatforms");
  // `id` is accepted as the property name attribute; untargeted bindings apply to roots.
  REQUIRE(styles[0].properties.size() == 1);
  CHECK(styles[0].properties[0].name == "g:title");
  CHECK(styles[0].properties[0].target_kind == TargetKind::Root);
  CHECK(std::get<std::string>(styles[0].properties[0].value) == "My User Interface");
}

TEST_CASE("behavior grammar: both conditions and all four actions") {
  auto doc = parse_document(read_fixture("form_behavior.uiml"));
  const auto& rules = doc.interfaces.at(0).behaviors.at(0).rules;
  REQUIRE(rules.size() == 2);
  auto occurs = std::get<EventOccurs>(rules[0].condition);
  CHECK(occurs.part == "OKBtn");
  CHECK(occurs.event_class == "g:click");
  CHECK(std::get<SetProperty>(rules[0].actions[0]) == SetProperty{"TitleLabel", "g:text", "Submitted"});
  auto eq = std::get<EventDataEquals>(rules[1].condition);
  CHECK(eq == EventDataEquals{"ZipField", "g:change", "value", "00000"});
  CHECK(std::get<CallFunction>(rules[1].actions[0]) == CallFunction{"warn", {"invalid zip"}});

  auto cascade = parse_document(read_fixture("cascade.uiml"));
  CHECK(std::get<FireEvent>(cascade.interfaces[0].behaviors[0].rules[0].actions[0]) ==
        FireEvent{"Relay", "g:click", {}});
  auto wizard = parse_document(read_fixture("wizard.uiml"));
  CHECK(std::get<Restructure>(wizard.interfaces[0].behaviors[0].rules[0].actions[0]).structure_id == "step2");
}

TEST_CASE("content groups and references") {
  auto doc = parse_document(read_fixture("bilingual.uiml"));
  const auto& iface = doc.interfaces.at(0);
  REQUIRE(iface.contents.size() == 2);
  CHECK(iface.contents[1].id == "french");
  REQUIRE(iface.contents[1].find("greeting"));
  CHECK(iface.contents[1].find("greeting")->text == "Bonjour <ami>");
  CHECK(std::get<ContentRef>(iface.styles[0].properties[0].value).constant == "windowTitle");
}

TEST_CASE("property values: whole-value references only") {
  CHECK(std::get<ContentRef>(parse_property_value("%abc%")).constant == "abc");
  CHECK(std::get<std::string>(parse_property_value("50%")) == "50%");
  CHECK(std::get<std::string>(parse_property_value("%a b%")) == "%a b%");
  CHECK(std::get<std::string>(parse_property_value("x %abc%")) == "x %abc%");
  CHECK(std::get<std::string>(parse_property_value("%%")) == "%%");
  CHECK(to_text(parse_property_value("%abc%")) == "%abc%");
}

TEST_CASE("grammar violations") {
  CHECK_THROWS_CODE(parse_document("<uiml><interface/></uiml>"), "EmptyInterface");
  CHECK_THROWS_CODE(parse_document("<uiml><widget/></uiml>"), "UnknownElement");
  CHECK_THROWS_CODE(parse_document("<notuiml/>"), "UnknownElement");
  CHECK_THROWS_CODE(parse_document(read_fixture("invalid/duplicate_parts.uiml")), "DuplicatePartName");
  CHECK_THROWS_CODE(parse_document(wrap(kTree + R"(<style id="a" source="zzz"/>)")), "DanglingStyleSource");
  CHECK_THROWS_CODE(parse_document(wrap(kTree + R"(<style id="a" source="b"/><style id="b" source="a"/>)")),
                    "StyleSourceCycle");
  CHECK_THROWS_CODE(parse_document(wrap(kTree + R"(<style id="a" source="a"/>)")), "StyleSourceCycle");
  CHECK_THROWS_CODE(parse_document(wrap(kTree + R"(<style id="a"/><style id="a"/>)")), "DuplicateStyleId");
  CHECK_THROWS_CODE(parse_document(wrap(R"(<structure><part class="G:Label"/></structure>)")), "MissingAttribute");
  CHECK_THROWS_CODE(parse_document(wrap(kTree + R"(<style><property part-name="B" part-class="G:Button" name="g:text">x</property></style>)")),
                    "ConflictingTarget");
  CHECK_THROWS_CODE(parse_document(wrap(kTree + R"(<behavior><rule><condition><event part-name="B" class="g:click"/></condition><action/></rule></behavior>)")),
                    "EmptyRule");
  CHECK_THROWS_CODE(parse_document("<uiml><interface name=\"x\">" + kTree + "</interface><interface name=\"x\">" + kTree +
                                   "</interface></uiml>"),
                    "DuplicateInterfaceName");
  CHECK_THROWS_CODE(parse_document(read_fixture("invalid/malformed.uiml")), "MalformedXml");
}

TEST_CASE("grammar errors are validation errors with locations") {
  try {
    parse_document(read_fixture("invalid/duplicate_parts.uiml"));
    FAIL("duplicate accepted");
  } catch (const UimlError& e) {
    CHECK(e.kind() == ErrorKind::Validation);
    REQUIRE(e.location());
    CHECK(e.location()->line == 7);
  }
}

TEST_CASE("every part, style and rule has a location inside the text") {
  for (const auto& path : corpus()) {
    CAPTURE(path);
    auto text = read_text_file(path);
    auto doc = parse_document(text);
    auto inside = [&](const SourceLocation& at) { return at.known() && at.offset < text.size(); };
    for (const auto& iface : doc.interfaces) {
      for (const auto& s : iface.structures) for_each_part(s, [&](const Part& p) { CHECK(inside(p.location)); });
      for (const auto& st : iface.styles) CHECK(inside(st.location));
      for (const auto& b : iface.behaviors) {
        for (const auto& r : b.rules) CHECK(inside(r.location));
      }
    }
  }
}

TEST_CASE("serialization is canonical and a round-trip fixpoint on the corpus") {
  for (const auto& path : corpus()) {
    CAPTURE(path);
    auto doc = parse_document(read_text_file(path));
    auto once = serialize_document(doc);
    CHECK(once == serialize_document(doc));
    auto reparsed = parse_document(once);
    CHECK(reparsed == doc);
    CHECK(serialize_document(reparsed) == once);
    CHECK(once.back() == '\n');
    CHECK(once.find('\t') == std::string::npos);
    CHECK(once.find("\r") == std::string::npos);
  }
}

TEST_CASE("peers and template survive a round trip") {
  auto doc = parse_document(read_fixture("peers_template.uiml"));
  REQUIRE(doc.opaque.size() == 2);
  CHECK(doc.opaque[0].name == "peers");
  CHECK(doc.opaque[1].name == "template");
  auto text = serialize_document(doc);
  CHECK(text.find("<presentation name=\"html\" source=\"generic-to-html\"/>") != std::string::npos);
  CHECK(parse_document(text) == doc);
}

TEST_CASE("canonical order: structures, styles, contents, behaviors") {
  auto doc = parse_document(wrap(
      R"(<behavior><rule><condition><event part-name="B" class="g:click"/></condition><action><call name="f"/></action></rule></behavior>)"
      R"(<content id="c"><constant id="k">v</constant></content><style id="s"/>)" +
      kTree));
  auto text = serialize_document(doc);
  auto at = [&](const char* s) { return text.find(s); };
  CHECK(at("<structure") < at("<style"));
  CHECK(at("<style") < at("<content"));
  CHECK(at("<content") < at("<behavior"));
}

TEST_CASE("round trip on generated documents") {
  auto vocab = load_gen_vocab((vocab_dir() / "generic.vocab.json").string());
  std::mt19937 rng(20261019);
  for (int i = 0; i < 300; ++i) {
    auto gen = random_roundtrip_doc(rng, vocab);
    auto text = to_xml(gen);
    CAPTURE(text);
    auto doc = parse_document(text);

    // The generated model and the parsed model agree on what matters.
    REQUIRE(doc.interfaces.size() == gen.interfaces.size());
    for (std::size_t k = 0; k < gen.interfaces.size(); ++k) {
      const auto& gi = gen.interfaces[k];
      const auto& di = doc.interfaces[k];
      REQUIRE(di.structures.size() == gi.structures.size());
      for (std::size_t s = 0; s < gi.structures.size(); ++s) {
        std::vector<const GenPart*> expected;
        collect_parts(gi.structures[s].roots[0], expected);
        auto got = flatten(di.structures[s]);
        REQUIRE(got.size() == expected.size());
        for (std::size_t p = 0; p < got.size(); ++p) {
          CHECK(got[p].first == expected[p]->name);
          CHECK(got[p].second == expected[p]->cls);
        }
      }
      REQUIRE(di.styles.size() == gi.styles.size());
      for (std::size_t s = 0; s < gi.styles.size(); ++s) {
        REQUIRE(di.styles[s].properties.size() == gi.styles[s].bindings.size());
        for (std::size_t b = 0; b < gi.styles[s].bindings.size(); ++b) {
          CHECK(to_text(di.styles[s].properties[b].value) == gi.styles[s].bindings[b].value);
        }
      }
      std::size_t rules = 0;
      for (const auto& b : di.behaviors) rules += b.rules.size();
      CHECK(rules == gi.rules.size());
    }

    auto once = serialize_document(doc);
    auto reparsed = parse_document(once);
    CHECK(reparsed == doc);
    CHECK(serialize_document(reparsed) == once);
  }
}

TEST_CASE("head metadata and document name are preserved") {
  auto doc = parse_document(std::string(R"(<uiml name="n"><head><meta name="A" content="x &amp; y"/></head>)") +
                            "<interface>" + kTree + "</interface></uiml>");
  CHECK(doc.doc_name == "n");
  REQUIRE(doc.head.size() == 1);
  CHECK(doc.head[0].content == "x & y");
  auto text = serialize_document(doc);
  CHECK(text.find("<uiml name=\"n\">") != std::string::npos);
  CHECK(text.find("content=\"x &amp; y\"") != std::string::npos);
}
