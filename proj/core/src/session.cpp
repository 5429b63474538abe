#include "uiml/session.hpp"

#include <charconv>
#include <chrono>
#include <ctime>

#include "json.hpp"

namespace uiml {

using nlohmann::json;

namespace {

std::string utc_now() {
  auto now = std::chrono::system_clock::now();
  auto secs = std::chrono::system_clock::to_time_t(now);
  auto millis = std::chrono::duration_cast<std::chrono::milliseconds>(now.time_since_epoch()).count() % 1000;
  std::tm tm{};
  gmtime_r(&secs, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%S", &tm);
  char out[40];
  std::snprintf(out, sizeof out, "%s.%03dZ", buf, static_cast<int>(millis));
  return out;
}

ApiResponse ok(const json& body) { return ApiResponse{200, body.dump(2) + "\n"}; }

ApiResponse failure(int status, const std::string& code, const std::string& message,
                    const std::optional<SourceLocation>& at = std::nullopt) {
  json body{{"code", code}, {"message", message}};
  if (at && at->known()) body["location"] = {{"offset", at->offset}, {"line", at->line}, {"column", at->column}};
  return ApiResponse{status, body.dump(2) + "\n"};
}

ApiResponse from_error(const UimlError& e) {
  int status = 500;
  switch (e.kind()) {
    case ErrorKind::Domain: status = 400; break;
    case ErrorKind::Syntax:
    case ErrorKind::Validation: status = 422; break;
    case ErrorKind::Environment: status = 500; break;
  }
  return failure(status, e.code(), e.to_diagnostic().message, e.location());
}

/// Thrown for malformed request bodies; surfaces as HTTP 400.
struct BadRequest : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json request_body(std::string_view body) {
  if (body.empty()) return json::object();
  try {
    auto j = json::parse(body);
    if (!j.is_object()) throw BadRequest("request body must be a JSON object");
    return j;
  } catch (const json::parse_error& e) {
    throw BadRequest(std::string("request body is not JSON: ") + e.what());
  }
}

std::string string_member(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_string()) throw BadRequest(std::string("field '") + key + "' must be a string");
  return j[key].get<std::string>();
}

std::optional<std::string> optional_member(const json& j, const char* key) {
  if (!j.contains(key) || j[key].is_null()) return std::nullopt;
  if (!j[key].is_string()) throw BadRequest(std::string("field '") + key + "' must be a string");
  auto v = j[key].get<std::string>();
  if (v.empty()) return std::nullopt;
  return v;
}

json part_tree(const Part& p) {
  json node{{"name", p.name}, {"class", p.class_name}, {"children", json::array()}};
  for (const auto& c : p.children) node["children"].push_back(part_tree(c));
  return node;
}

json document_tree(const UimlDocument& doc) {
  json ifaces = json::array();
  for (const auto& iface : doc.interfaces) {
    json structures = json::array();
    for (const auto& s : iface.structures) {
      json parts = json::array();
      for (const auto& r : s.roots) parts.push_back(part_tree(r));
      structures.push_back({{"id", s.id}, {"parts", parts}});
    }
    json styles = json::array();
    for (const auto& s : iface.styles) styles.push_back(s.id);
    json contents = json::array();
    for (const auto& c : iface.contents) contents.push_back(c.id);
    ifaces.push_back({{"name", iface.name}, {"structures", structures}, {"styles", styles}, {"contents", contents}});
  }
  return {{"interfaces", ifaces}};
}

json diagnostics_json(const std::vector<Diagnostic>& ds) {
  json out = json::array();
  for (const auto& d : ds) {
    out.push_back({{"severity", to_string(d.severity)},
                   {"code", d.code},
                   {"message", d.message},
                   {"location", {{"offset", d.location.offset}, {"line", d.location.line}, {"column", d.location.column}}}});
  }
  return out;
}

json source_map_json(const SourceMap& sm) { return {{"entries", sm.entries}}; }

json render_json(const RenderOutput& r) {
  return {{"text", r.text}, {"annotations", r.annotations}, {"target", r.target}};
}

}  // namespace

WorkbenchSession::WorkbenchSession(const Toolkit& kit, std::string initial_text, std::string session_id)
    : kit_(kit), session_id_(std::move(session_id)) {
  auto doc = parse_document(initial_text);
  replace_document(std::move(initial_text), std::move(doc), "open");
}

std::string WorkbenchSession::current_text() const {
  std::lock_guard lock(mu_);
  return text_;
}

std::vector<Snapshot> WorkbenchSession::history() const {
  std::lock_guard lock(mu_);
  return history_;
}

void WorkbenchSession::snapshot(std::string label) {
  Snapshot s;
  s.ordinal = history_.empty() ? 0 : history_.back().ordinal + 1;
  s.document_text = text_;
  s.label = std::move(label);
  s.timestamp = utc_now();
  try {
    auto r = render_document(kit_, doc_, params_);
    s.render_output = std::move(r.output);
    s.source_map = std::move(r.source_map);
  } catch (const UimlError&) {
    // kept without a render
  }
  history_.push_back(std::move(s));
}

void WorkbenchSession::replace_document(std::string text, UimlDocument doc, std::string label) {
  text_ = std::move(text);
  doc_ = std::move(doc);
  runtime_.reset();
  last_source_map_.reset();
  snapshot(std::move(label));
}

ApiResponse WorkbenchSession::handle(std::string_view method, std::string_view path, std::string_view body) {
  std::lock_guard lock(mu_);
  try {
    if (path == "/api/document" && method == "GET") return get_document();
    if (path == "/api/document" && method == "PUT") return put_document(body);
    if (path == "/api/property" && method == "POST") return post_property(body);
    if (path == "/api/transform" && method == "POST") return post_transform(body);
    if (path == "/api/render" && method == "POST") return post_render(body);
    if (path == "/api/event" && method == "POST") return post_event(body);
    if (path == "/api/sourcemap" && method == "GET") return get_sourcemap();
    if (path == "/api/history" && method == "GET") return get_history();
    if (path == "/api/history/restore" && method == "POST") return post_restore(body);
    if (path.starts_with("/api/history/") && method == "GET") return get_snapshot(path.substr(13));
    return failure(404, "NotFound", std::string(method) + " " + std::string(path) + " is not an API endpoint");
  } catch (const BadRequest& e) {
    return failure(400, "BadRequest", e.what());
  } catch (const UimlError& e) {
    return from_error(e);
  } catch (const std::exception& e) {
    return failure(500, "Internal", e.what());
  }
}

ApiResponse WorkbenchSession::get_document() const {
  json body{{"session", session_id_}, {"text", text_}, {"tree", document_tree(doc_)}};
  const auto* vocab = kit_.detect_vocabulary(doc_);
  body["diagnostics"] = diagnostics_json(validate(doc_, vocab ? *vocab : kit_.generic));
  return ok(body);
}

ApiResponse WorkbenchSession::put_document(std::string_view body) {
  auto req = request_body(body);
  auto text = string_member(req, "text");
  auto doc = parse_document(text);
  replace_document(std::move(text), std::move(doc), optional_member(req, "label").value_or("edit document"));
  return ok({{"ordinal", history_.back().ordinal}, {"text", text_}});
}

ApiResponse WorkbenchSession::post_property(std::string_view body) {
  auto req = request_body(body);
  auto part = string_member(req, "part");
  auto prop = string_member(req, "prop");
  auto value = string_member(req, "value");

  auto doc = doc_;
  auto& iface = doc.interfaces.front();
  if (!iface.find_part(part)) {
    throw UimlError(ErrorKind::Domain, "UnknownPart", "no part named '" + part + "'");
  }
  std::string style_id;
  if (auto id = select_style_id(iface, params_.style)) {
    style_id = *id;
  } else {
    style_id = "default";
    iface.styles.push_back(Style{style_id, std::nullopt, {}, {}});
  }
  Style* style = nullptr;
  for (auto& s : iface.styles) {
    if (s.id == style_id) style = &s;
  }
  auto canonical = canonical_property_name(prop);
  PropertyBinding* existing = nullptr;
  for (auto& b : style->properties) {
    if (b.target_kind == TargetKind::Part && b.target == part && canonical_property_name(b.name) == canonical) {
      existing = &b;
    }
  }
  if (existing) {
    existing->value = parse_property_value(value);
  } else {
    style->properties.push_back(PropertyBinding{TargetKind::Part, part, prop, parse_property_value(value), {}});
  }
  auto text = serialize_document(doc);
  replace_document(text, parse_document(text), "set " + part + " " + prop + " = " + value);
  return ok({{"ordinal", history_.back().ordinal}, {"style", style_id}, {"text", text_}});
}

ApiResponse WorkbenchSession::post_transform(std::string_view body) const {
  auto req = request_body(body);
  auto ms = kit_.resolve_mapping(optional_member(req, "mapping").value_or(kit_.to_html.id));
  auto result = transform(doc_, ms);
  json dropped = json::array();
  for (const auto& d : result.report.dropped_properties) {
    dropped.push_back({{"part", d.part}, {"prop", d.prop}, {"reason", d.reason}});
  }
  return ok({{"mapping", ms.id},
             {"text", serialize_document(result.document)},
             {"source_map", source_map_json(result.source_map)},
             {"report", {{"dropped_properties", dropped},
                         {"translated_events", result.report.translated_events},
                         {"warnings", diagnostics_json(result.report.warnings)}}}});
}

ApiResponse WorkbenchSession::post_render(std::string_view body) {
  auto req = request_body(body);
  RenderRequest params;
  params.target = parse_target(optional_member(req, "target").value_or("html"));
  params.style = optional_member(req, "style");
  params.content = optional_member(req, "content");
  auto result = render_document(kit_, doc_, params);
  params_ = params;
  last_source_map_ = result.source_map;
  auto out = render_json(result.output);
  out["source_map"] = source_map_json(result.source_map);
  out["style"] = result.style.style_id;
  out["content"] = result.style.content_id;
  return ok(out);
}

ApiResponse WorkbenchSession::post_event(std::string_view body) {
  auto req = request_body(body);
  EventInstance ev{string_member(req, "part"), string_member(req, "event_class"), {}};
  if (req.contains("data")) {
    if (!req["data"].is_object()) throw BadRequest("field 'data' must be an object");
    for (const auto& [k, v] : req["data"].items()) {
      if (!v.is_string()) throw BadRequest("event data values must be strings");
      ev.data[k] = v.get<std::string>();
    }
  }
  if (!runtime_) {
    // generic docs run on g: props
    const auto* vocab = kit_.detect_vocabulary(doc_);
    std::string prefix = vocab ? vocab->platform_prefix : std::string(kGenericPrefix);
    runtime_ = instantiate_runtime(doc_, resolve_for_render(doc_.interfaces.front(), params_.style, params_.content, prefix));
  }
  auto effects = dispatch(*runtime_, doc_, ev);
  return ok({{"effects", json::parse(effects_to_json(effects))}, {"active_structure", runtime_->active_structure}});
}

ApiResponse WorkbenchSession::get_sourcemap() {
  if (!last_source_map_) last_source_map_ = render_document(kit_, doc_, params_).source_map;
  return ok(source_map_json(*last_source_map_));
}

ApiResponse WorkbenchSession::get_history() const {
  json entries = json::array();
  for (const auto& s : history_) {
    entries.push_back({{"ordinal", s.ordinal},
                       {"label", s.label},
                       {"timestamp", s.timestamp},
                       {"has_render", s.render_output.has_value()}});
  }
  return ok({{"entries", entries}});
}

ApiResponse WorkbenchSession::get_snapshot(std::string_view ordinal_text) const {
  std::int64_t ordinal = -1;
  auto [ptr, ec] = std::from_chars(ordinal_text.data(), ordinal_text.data() + ordinal_text.size(), ordinal);
  if (ec != std::errc() || ptr != ordinal_text.data() + ordinal_text.size()) {
    throw BadRequest("history ordinal must be an integer");
  }
  for (const auto& s : history_) {
    if (s.ordinal != ordinal) continue;
    return ok({{"ordinal", s.ordinal},
               {"label", s.label},
               {"timestamp", s.timestamp},
               {"text", s.document_text},
               {"render", s.render_output ? render_json(*s.render_output) : json(nullptr)},
               {"source_map", source_map_json(s.source_map)}});
  }
  throw UimlError(ErrorKind::Domain, "UnknownOrdinal", "no snapshot with ordinal " + std::string(ordinal_text));
}

ApiResponse WorkbenchSession::post_restore(std::string_view body) {
  auto req = request_body(body);
  if (!req.contains("ordinal") || !req["ordinal"].is_number_integer()) throw BadRequest("field 'ordinal' must be an integer");
  auto ordinal = req["ordinal"].get<std::int64_t>();
  for (const auto& s : history_) {
    if (s.ordinal != ordinal) continue;
    auto text = s.document_text;
    replace_document(text, parse_document(text), "restore " + std::to_string(ordinal));
    return ok({{"ordinal", history_.back().ordinal}, {"text", text_}});
  }
  throw UimlError(ErrorKind::Domain, "UnknownOrdinal", "no snapshot with ordinal " + std::to_string(ordinal));
}

}  // namespace uiml
