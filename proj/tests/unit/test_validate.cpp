#include "check.hpp"
#include "paths.hpp"
#include "uiml/document.hpp"

using namespace uiml;
using namespace uiml::testing;

namespace {

std::vector<Diagnostic> check(const std::string& interface_body) {
  auto doc = parse_document("<uiml><interface>" + interface_body + "</interface></uiml>");
  return validate(doc, toolkit().generic);
}

std::vector<std::string> codes(const std::vector<Diagnostic>& ds) {
  std::vector<std::string> out;
  for (const auto& d : ds) out.push_back(d.code);
  return out;
}

const std::string kForm =
    R"(<structure><part name="Top" class="G:TopContainer"><part name="OK" class="G:Button"/><part name="L" class="G:Label"/></part></structure>)";

}  // namespace

TEST_CASE("data-collection listing conforms to the generic vocabulary") {
  auto doc = parse_document(read_fixture("data_collection.uiml"));
  CHECK(validate(doc, toolkit().generic).empty());
}

TEST_CASE("every valid fixture conforms") {
  for (const auto& path : corpus()) {
    CAPTURE(path);
    auto doc = parse_document(read_text_file(path));
    CHECK_FALSE(has_errors(validate(doc, toolkit().generic)));
  }
}

TEST_CASE("unknown class") {
  auto ds = check(R"(<structure><part name="X" class="G:Nonexistent"/></structure>)");
  CHECK(codes(ds) == std::vector<std::string>{"UnknownClass"});
  CHECK(ds[0].severity == Severity::Error);
  CHECK(ds[0].location.line == 1);
}

TEST_CASE("SetProperty on an absent part") {
  auto ds = check(kForm +
                  R"(<behavior><rule><condition><event part-name="OK" class="g:click"/></condition>)"
                  R"(<action><property part-name="Ghost" name="g:text">x</property></action></rule></behavior>)");
  CHECK(codes(ds) == std::vector<std::string>{"DanglingPartRef"});
}

TEST_CASE("unknown property, prefix and event") {
  CHECK(codes(check(kForm + R"(<style><property part-name="OK" name="g:title">x</property></style>)")) ==
        std::vector<std::string>{"UnknownProperty"});
  CHECK(codes(check(kForm + R"(<style><property part-name="OK" name="w:voice">x</property></style>)")) ==
        std::vector<std::string>{"UnknownPrefix"});
  CHECK(codes(check(kForm + R"(<style><property part-class="G:Label" name="h:link-color">x</property></style>)")) ==
        std::vector<std::string>{"UnknownProperty"});
  CHECK(codes(check(kForm + R"(<behavior><rule><condition><event part-name="L" class="g:change"/></condition>)"
                            R"(<action><call name="f"/></action></rule></behavior>)")) ==
        std::vector<std::string>{"UnknownEvent"});
}

TEST_CASE("unprefixed and platform-prefixed properties the class declares are accepted") {
  CHECK(check(kForm + R"(<style><property part-name="OK" name="text">x</property>)"
                      R"(<property part-name="Top" name="H:link-color">red</property>)"
                      R"(<property part-name="Top" name="j:resizable">true</property></style>)")
            .empty());
}

TEST_CASE("root bindings are checked against every root class") {
  CHECK(check(kForm + R"(<style><property name="g:title">T</property></style>)").empty());
  CHECK(codes(check(kForm + R"(<style><property name="g:text">T</property></style>)")) ==
        std::vector<std::string>{"UnknownProperty"});
}

TEST_CASE("content references must resolve in some group") {
  CHECK(check(kForm + R"(<style><property part-name="OK" name="g:text">%k%</property></style>)"
                      R"(<content id="a"><constant id="k">v</constant></content>)")
            .empty());
  CHECK(codes(check(kForm + R"(<style><property part-name="OK" name="g:text">%missing%</property></style>)"
                            R"(<content id="a"><constant id="k">v</constant></content>)")) ==
        std::vector<std::string>{"UnresolvedConstant"});
}

TEST_CASE("restructure must name an existing structure") {
  CHECK(codes(check(kForm + R"(<behavior><rule><condition><event part-name="OK" class="g:click"/></condition>)"
                            R"(<action><restructure structure="nowhere"/></action></rule></behavior>)")) ==
        std::vector<std::string>{"DanglingStructureRef"});
}

TEST_CASE("leaf classes cannot hold children") {
  CHECK(codes(check(R"(<structure><part name="B" class="G:Button"><part name="C" class="G:Label"/></part></structure>)")) ==
        std::vector<std::string>{"NotAContainer"});
}

TEST_CASE("opaque sections are warnings, not errors") {
  auto doc = parse_document(read_fixture("peers_template.uiml"));
  auto ds = validate(doc, toolkit().generic);
  CHECK(codes(ds) == std::vector<std::string>{"OpaqueElement", "OpaqueElement"});
  CHECK_FALSE(has_errors(ds));
}

TEST_CASE("diagnostic line format") {
  Diagnostic d{Severity::Error, "UnknownClass", "boom", SourceLocation{10, 3, 7}};
  CHECK(d.to_line() == "error UnknownClass 3:7 boom");
  Diagnostic w{Severity::Warning, "OpaqueElement", "kept", {}};
  CHECK(w.to_line() == "warning OpaqueElement 0:0 kept");
}

TEST_CASE("soundness: a clean report means every name resolves") {
  // Exhaustive walk with the vocabulary tables, independent of the validator.
  const auto& vocab = toolkit().generic;
  for (const auto& path : corpus()) {
    auto doc = parse_document(read_text_file(path));
    if (has_errors(validate(doc, vocab))) continue;
    for (const auto& iface : doc.interfaces) {
      for (const auto& s : iface.structures) {
        for_each_part(s, [&](const Part& p) { CHECK(vocab.find(p.class_name)); });
      }
      for (const auto& b : iface.behaviors) {
        for (const auto& r : b.rules) {
          const auto* p = iface.find_part(condition_part(r.condition));
          REQUIRE(p);
          CHECK(vocab.find(p->class_name)->has_event(condition_event(r.condition)));
        }
      }
    }
  }
}
