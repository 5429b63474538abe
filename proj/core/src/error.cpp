#include "uiml/error.hpp"

namespace uiml {

std::string to_string(Severity s) { return s == Severity::Error ? "error" : "warning"; }

std::string Diagnostic::to_line() const {
  std::string out = to_string(severity);
  out += ' ';
  out += code;
  out += ' ';
  out += std::to_string(location.line);
  out += ':';
  out += std::to_string(location.column);
  out += ' ';
  out += message;
  return out;
}

UimlError::UimlError(ErrorKind kind, std::string code, const std::string& message,
                     std::optional<SourceLocation> location)
    : std::runtime_error(code + ": " + message),
      kind_(kind),
      code_(std::move(code)),
      location_(location) {}

Diagnostic UimlError::to_diagnostic() const {
  Diagnostic d;
  d.severity = Severity::Error;
  d.code = code_;
  // what() carries the "code: " prefix; diagnostics print the code separately.
  std::string msg = what();
  d.message = msg.substr(code_.size() + 2);
  d.location = location_.value_or(SourceLocation{});
  return d;
}

}  // namespace uiml
