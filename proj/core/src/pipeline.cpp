#include "uiml/pipeline.hpp"

#include <cstdlib>

#include "json.hpp"

#ifndef UIML_DEFAULT_VOCAB_DIR
#define UIML_DEFAULT_VOCAB_DIR "vocab"
#endif

namespace uiml {

Target parse_target(std::string_view name) {
  if (name == "html") return Target::Html;
  if (name == "mockdesk" || name == "mockdesk-json") return Target::Mockdesk;
  throw UimlError(ErrorKind::Domain, "UnknownTarget", "unknown render target '" + std::string(name) + "'");
}

std::string_view to_string(Target t) { return t == Target::Html ? "html" : "mockdesk"; }

std::filesystem::path default_vocab_dir() {
  if (const char* env = std::getenv("UIML_VOCAB_DIR"); env && *env) return env;
  return UIML_DEFAULT_VOCAB_DIR;
}

Toolkit Toolkit::load(const std::filesystem::path& vocab_dir) {
  Toolkit kit;
  kit.generic = load_vocabulary(vocab_dir / "generic.vocab.json");
  kit.html = load_vocabulary(vocab_dir / "html.vocab.json");
  kit.mockdesk = load_vocabulary(vocab_dir / "mockdesk.vocab.json");
  kit.to_html = load_mapping(vocab_dir / "generic-to-html.map.json", kit.generic, kit.html);
  kit.to_mockdesk = load_mapping(vocab_dir / "generic-to-mockdesk.map.json", kit.generic, kit.mockdesk);
  return kit;
}

MappingSet Toolkit::resolve_mapping(const std::string& id_or_path) const {
  if (id_or_path == to_html.id || id_or_path == "html") return to_html;
  if (id_or_path == to_mockdesk.id || id_or_path == "mockdesk") return to_mockdesk;
  std::filesystem::path path(id_or_path);
  if (!std::filesystem::exists(path)) {
    throw UimlError(ErrorKind::Environment, "FileNotFound", "no shipped mapping or file named '" + id_or_path + "'");
  }
  auto text = read_text_file(path);
  // The target vocabulary is named inside the file.
  std::string to;
  try {
    to = nlohmann::json::parse(text).value("to", std::string());
  } catch (const nlohmann::json::exception&) {
    // parse_mapping reports the syntax error with its location.
  }
  const Vocabulary& target = to == mockdesk.id ? mockdesk : html;
  return parse_mapping(text, generic, target);
}

const Vocabulary* Toolkit::detect_vocabulary(const UimlDocument& doc) const {
  for (const Vocabulary* v : {&generic, &html, &mockdesk}) {
    bool all = true;
    for (const auto& iface : doc.interfaces) {
      for (const auto& s : iface.structures) {
        for_each_part(s, [&](const Part& p) { all = all && v->find(p.class_name) != nullptr; });
      }
    }
    if (all) return v;
  }
  return nullptr;
}

EffectiveStyle resolve_for_render(const Interface& iface, const std::optional<std::string>& style,
                                  const std::optional<std::string>& content, std::string_view target_prefix) {
  auto id = select_style_id(iface, style);
  if (!id) return empty_style(iface, content, target_prefix);
  return resolve_style(iface, *id, content, target_prefix);
}

PipelineResult render_document(const Toolkit& kit, const UimlDocument& doc, const RenderRequest& req) {
  PipelineResult out;
  const auto& target_vocab = kit.vocabulary(req.target);
  const auto* vocab = kit.detect_vocabulary(doc);
  if (vocab == &kit.generic) {
    auto t = transform(doc, kit.mapping(req.target));
    out.platform_document = std::move(t.document);
    out.source_map = std::move(t.source_map);
    out.report = std::move(t.report);
    out.transformed = true;
  } else if (vocab == &target_vocab) {
    out.platform_document = doc;
    out.source_map = SourceMap::identity(doc);
  } else {
    throw UimlError(ErrorKind::Domain, "VocabularyMismatch",
                    "document is neither generic nor written for the '" + std::string(to_string(req.target)) +
                        "' target");
  }
  const auto& iface = out.platform_document.interfaces.front();
  out.style = resolve_for_render(iface, req.style, req.content, target_vocab.platform_prefix);
  out.output = req.target == Target::Html ? render_html(out.platform_document, out.style, out.source_map, kit.html)
                                          : render_mockdesk(out.platform_document, out.style, out.source_map, kit.mockdesk);
  return out;
}

}  // namespace uiml
