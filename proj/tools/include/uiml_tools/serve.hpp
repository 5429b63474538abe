#pragma once

#include <memory>
#include <string>

#include "uiml/session.hpp"

namespace uiml::tools {

/// HTTP front for one WorkbenchSession: the `/api` routes plus the static
/// workbench page at `/`. Requests are handled one at a time per session.
class WorkbenchServer {
 public:
  explicit WorkbenchServer(WorkbenchSession& session);
  ~WorkbenchServer();
  WorkbenchServer(const WorkbenchServer&) = delete;
  WorkbenchServer& operator=(const WorkbenchServer&) = delete;

  /// Port 0 picks a free port. Returns the bound port, or -1 when binding fails.
  int bind(const std::string& host, int port);
  /// Blocks until stop().
  bool listen();
  void stop();
  void wait_until_ready() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace uiml::tools
