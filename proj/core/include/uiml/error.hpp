#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace uiml {

/// Position of a node in the original source text. Lines and columns are 1-based.
struct SourceLocation {
  std::size_t offset = 0;
  std::size_t line = 0;
  std::size_t column = 0;

  bool known() const { return line != 0; }

  // Locations are provenance, not content: two documents that differ only in
  // where their nodes came from compare equal.
  friend bool operator==(const SourceLocation&, const SourceLocation&) { return true; }
};

enum class Severity { Error, Warning };

/// Broad classification used to pick exit codes and HTTP statuses.
enum class ErrorKind {
  Syntax,       // malformed XML or input file format
  Validation,   // document violates the UIML grammar or its invariants
  Domain,       // well-formed input the pipeline cannot process
  Environment,  // I/O, missing files, ports
};

struct Diagnostic {
  Severity severity = Severity::Error;
  std::string code;
  std::string message;
  SourceLocation location;

  /// `severity code line:col message`
  std::string to_line() const;
};

std::string to_string(Severity s);

/// The single exception type thrown by the toolkit. `code()` is a short
/// stable identifier such as "NotMapped" or "DuplicatePartName".
class UimlError : public std::runtime_error {
 public:
  UimlError(ErrorKind kind, std::string code, const std::string& message,
            std::optional<SourceLocation> location = std::nullopt);

  ErrorKind kind() const { return kind_; }
  const std::string& code() const { return code_; }
  const std::optional<SourceLocation>& location() const { return location_; }

  Diagnostic to_diagnostic() const;

 private:
  ErrorKind kind_;
  std::string code_;
  std::optional<SourceLocation> location_;
};

}  // namespace uiml
