#include "uiml_tools/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "uiml/behavior.hpp"
#include "uiml/pipeline.hpp"
#include "uiml/session.hpp"
#include "uiml_tools/serve.hpp"

namespace uiml::tools {

namespace {

int exit_code(const UimlError& e) {
  switch (e.kind()) {
    case ErrorKind::Syntax:
    case ErrorKind::Environment: return 2;
    case ErrorKind::Validation:
    case ErrorKind::Domain: return 1;
  }
  return 1;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UimlError(ErrorKind::Environment, "WriteFailed", "cannot open '" + path + "' for writing");
  f << text;
  if (!f.flush()) throw UimlError(ErrorKind::Environment, "WriteFailed", "cannot write '" + path + "'");
}

void emit(const std::optional<std::string>& path, const std::string& text, std::ostream& out) {
  if (path) {
    write_file(*path, text);
  } else {
    out << text;
  }
}

UimlDocument load_document(const std::string& path) { return parse_document(read_text_file(path)); }

struct Options {
  std::string vocab_dir;
  std::string file;
  std::optional<std::string> output;
  std::string mapping = "generic-to-html";
  std::string target = "html";
  std::optional<std::string> style;
  std::optional<std::string> content;
  std::string events;
  bool json = false;
  std::string host = "127.0.0.1";
  int port = 8080;
};

Toolkit load_toolkit(const Options& o) {
  return Toolkit::load(o.vocab_dir.empty() ? default_vocab_dir() : std::filesystem::path(o.vocab_dir));
}

int cmd_validate(const Options& o, std::ostream& err) {
  auto kit = load_toolkit(o);
  auto doc = load_document(o.file);
  const auto* vocab = kit.detect_vocabulary(doc);
  auto diags = validate(doc, vocab ? *vocab : kit.generic);
  for (const auto& d : diags) err << o.file << ": " << d.to_line() << "\n";
  return has_errors(diags) ? 1 : 0;
}

int cmd_transform(const Options& o, std::ostream& out, std::ostream& err) {
  auto kit = load_toolkit(o);
  auto doc = load_document(o.file);
  auto result = transform(doc, kit.resolve_mapping(o.mapping));
  for (const auto& w : result.report.warnings) err << o.file << ": " << w.to_line() << "\n";
  for (const auto& d : result.report.dropped_properties) {
    err << o.file << ": note dropped " << d.part << " " << d.prop << " (" << d.reason << ")\n";
  }
  emit(o.output, serialize_document(result.document), out);
  if (o.output) write_file(*o.output + ".srcmap.json", result.source_map.to_json());
  return 0;
}

int cmd_render(const Options& o, std::ostream& out) {
  auto kit = load_toolkit(o);
  auto doc = load_document(o.file);
  auto result = render_document(kit, doc, RenderRequest{parse_target(o.target), o.style, o.content});
  emit(o.output, result.output.text, out);
  return 0;
}

int cmd_simulate(const Options& o, std::ostream& out, std::ostream& err) {
  auto kit = load_toolkit(o);
  auto doc = load_document(o.file);
  auto script = parse_event_script(read_text_file(o.events));
  if (doc.interfaces.empty()) throw UimlError(ErrorKind::Domain, "EmptyDocument", "document has no interface");
  const auto* vocab = kit.detect_vocabulary(doc);
  std::string prefix = vocab ? vocab->platform_prefix : std::string(kGenericPrefix);
  auto rt = instantiate_runtime(doc, resolve_for_render(doc.interfaces.front(), o.style, o.content, prefix));

  std::vector<ActionEffect> trace;
  int code = 0;
  for (const auto& ev : script) {
    try {
      auto effects = dispatch(rt, doc, ev);
      trace.insert(trace.end(), effects.begin(), effects.end());
    } catch (const UimlError& e) {
      err << o.file << ": " << e.to_diagnostic().to_line() << "\n";
      code = exit_code(e);
      break;
    }
  }
  if (o.json) {
    out << effects_to_json(trace);
  } else {
    for (const auto& e : trace) out << to_line(e) << "\n";
  }
  return code;
}

int cmd_serve(const Options& o, std::ostream& out, std::ostream& err) {
  auto kit = load_toolkit(o);
  WorkbenchSession session(kit, read_text_file(o.file), o.file);
  WorkbenchServer server(session);
  int port = server.bind(o.host, o.port);
  if (port < 0) {
    err << "error AddressInUse cannot bind " << o.host << ":" << o.port << "\n";
    return 2;
  }
  out << "serving " << o.file << " at http://" << o.host << ":" << port << "/" << std::endl;
  return server.listen() ? 0 : 2;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"UIML compiler toolkit", "uimlc"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--vocab-dir", o.vocab_dir, "Directory holding the vocabulary and mapping files");

  auto* validate_cmd = app.add_subcommand("validate", "Check a document against its vocabulary");
  validate_cmd->add_option("file", o.file)->required();

  auto* transform_cmd = app.add_subcommand("transform", "Rewrite a generic document for one platform");
  transform_cmd->add_option("file", o.file)->required();
  transform_cmd->add_option("--mapping", o.mapping, "Mapping id or path to a .map.json");
  transform_cmd->add_option("-o,--output", o.output, "Output file; a .srcmap.json is written beside it");

  auto* render_cmd = app.add_subcommand("render", "Render a document to HTML or mockdesk JSON");
  render_cmd->add_option("file", o.file)->required();
  render_cmd->add_option("--target", o.target)->check(CLI::IsMember({"html", "mockdesk"}));
  render_cmd->add_option("--style", o.style);
  render_cmd->add_option("--content", o.content);
  render_cmd->add_option("-o,--output", o.output);

  auto* simulate_cmd = app.add_subcommand("simulate", "Run an event script through the behavior rules");
  simulate_cmd->add_option("file", o.file)->required();
  simulate_cmd->add_option("--events", o.events, "JSON array of {part, event_class, data}")->required();
  simulate_cmd->add_option("--style", o.style);
  simulate_cmd->add_option("--content", o.content);
  simulate_cmd->add_flag("--json", o.json, "Print the trace as JSON");

  auto* serve_cmd = app.add_subcommand("serve", "Serve the workbench API for one document");
  serve_cmd->add_option("--open", o.file)->required();
  serve_cmd->add_option("--port", o.port)->check(CLI::Range(0, 65535));
  serve_cmd->add_option("--host", o.host);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*validate_cmd) return cmd_validate(o, err);
    if (*transform_cmd) return cmd_transform(o, out, err);
    if (*render_cmd) return cmd_render(o, out);
    if (*simulate_cmd) return cmd_simulate(o, out, err);
    if (*serve_cmd) return cmd_serve(o, out, err);
  } catch (const UimlError& e) {
    err << o.file << ": " << e.to_diagnostic().to_line() << "\n";
    return exit_code(e);
  } catch (const std::exception& e) {
    err << "error Internal " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace uiml::tools
