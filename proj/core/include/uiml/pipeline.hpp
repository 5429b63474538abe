#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "uiml/document.hpp"
#include "uiml/render.hpp"
#include "uiml/style.hpp"
#include "uiml/transform.hpp"
#include "uiml/vocab.hpp"

namespace uiml {

enum class Target { Html, Mockdesk };

/// "html" or "mockdesk"; throws UimlError{Domain, "UnknownTarget"}.
Target parse_target(std::string_view name);
std::string_view to_string(Target t);

/// The shipped vocabularies and mappings, loaded once.
struct Toolkit {
  Vocabulary generic;
  Vocabulary html;
  Vocabulary mockdesk;
  MappingSet to_html;
  MappingSet to_mockdesk;

  /// Expects the five shipped files in `vocab_dir`.
  static Toolkit load(const std::filesystem::path& vocab_dir);

  const Vocabulary& vocabulary(Target t) const { return t == Target::Html ? html : mockdesk; }
  const MappingSet& mapping(Target t) const { return t == Target::Html ? to_html : to_mockdesk; }

  /// Accepts a shipped mapping id ("generic-to-html", "html", ...) or a path to a `.map.json`.
  MappingSet resolve_mapping(const std::string& id_or_path) const;

  /// The vocabulary every part class of `doc` belongs to, if any.
  const Vocabulary* detect_vocabulary(const UimlDocument& doc) const;
};

/// UIML_VOCAB_DIR when set, otherwise the directory the build was configured with.
std::filesystem::path default_vocab_dir();

struct RenderRequest {
  Target target = Target::Html;
  std::optional<std::string> style;
  std::optional<std::string> content;
};

struct PipelineResult {
  UimlDocument platform_document;
  SourceMap source_map;
  TransformReport report;
  EffectiveStyle style;
  RenderOutput output;
  bool transformed = false;
};

/// Transforms `doc` when it is written against the generic vocabulary, then
/// resolves the requested style and content and renders. The CLI and the
/// workbench server both go through here.
PipelineResult render_document(const Toolkit& kit, const UimlDocument& doc, const RenderRequest& req);

/// Style resolution for `iface` with the renderer's selection rules applied.
EffectiveStyle resolve_for_render(const Interface& iface, const std::optional<std::string>& style,
                                  const std::optional<std::string>& content, std::string_view target_prefix);

}  // namespace uiml
