#pragma once

#include <map>
#include <string>

#include "uiml/document.hpp"
#include "uiml/style.hpp"
#include "uiml/transform.hpp"
#include "uiml/vocab.hpp"

namespace uiml {

struct RenderOutput {
  std::string text;
  /// Rendered node id (the platform part name) -> originating generic part.
  std::map<std::string, std::string> annotations;
  std::string target;  // "html" or "mockdesk-json"

  friend bool operator==(const RenderOutput&, const RenderOutput&) = default;
};

/// Emits the active structure of the first interface as an HTML document.
/// Every element carries `data-uiml-part` and `data-uiml-src`; attributes are
/// sorted, indentation is two spaces, tags are lowercase.
/// Throws UimlError{Domain, "UnknownHtmlClass"}.
RenderOutput render_html(const UimlDocument& doc, const EffectiveStyle& es, const SourceMap& sm,
                         const Vocabulary& html_vocab);

/// Emits a canonical JSON widget tree: `{children, class, name, props, src}`
/// per node, keys sorted, two-space indent. Throws UimlError{Domain, "UnknownMockClass"}.
RenderOutput render_mockdesk(const UimlDocument& doc, const EffectiveStyle& es, const SourceMap& sm,
                             const Vocabulary& mock_vocab);

}  // namespace uiml
