#pragma once

#include <cstdint>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "uiml/behavior.hpp"
#include "uiml/pipeline.hpp"

namespace uiml {

/// One immutable entry of a workbench session's history.
struct Snapshot {
  std::int64_t ordinal = 0;
  std::string document_text;
  std::optional<RenderOutput> render_output;
  SourceMap source_map;
  std::string label;
  std::string timestamp;  // UTC, ISO-8601
};

struct ApiResponse {
  int status = 200;
  std::string body;  // JSON
};

/// Workbench state for one served document. Every call is serialized on an
/// internal mutex. Mutating calls (document replace, property edit, restore)
/// append exactly one snapshot; history is never truncated.
class WorkbenchSession {
 public:
  /// Throws UimlError when `initial_text` does not parse.
  WorkbenchSession(const Toolkit& kit, std::string initial_text, std::string session_id = "default");

  /// Routes an `/api/...` request. Errors come back as `{code, message, location?}`
  /// with 400 (domain), 422 (validation) or 500 (internal).
  ApiResponse handle(std::string_view method, std::string_view path, std::string_view body);

  const std::string& session_id() const { return session_id_; }
  std::string current_text() const;
  std::vector<Snapshot> history() const;

 private:
  const Toolkit& kit_;
  std::string session_id_;
  mutable std::mutex mu_;
  std::string text_;
  UimlDocument doc_;
  std::vector<Snapshot> history_;
  RenderRequest params_;
  std::optional<SourceMap> last_source_map_;
  std::optional<RuntimeState> runtime_;

  void snapshot(std::string label);
  void replace_document(std::string text, UimlDocument doc, std::string label);

  ApiResponse get_document() const;
  ApiResponse put_document(std::string_view body);
  ApiResponse post_property(std::string_view body);
  ApiResponse post_transform(std::string_view body) const;
  ApiResponse post_render(std::string_view body);
  ApiResponse post_event(std::string_view body);
  ApiResponse get_sourcemap();
  ApiResponse get_history() const;
  ApiResponse get_snapshot(std::string_view ordinal) const;
  ApiResponse post_restore(std::string_view body);
};

}  // namespace uiml
