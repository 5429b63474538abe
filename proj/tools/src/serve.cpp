#include "uiml_tools/serve.hpp"

#include "httplib.h"

namespace uiml::tools {

namespace {

constexpr const char* kIndexPage = R"(<!DOCTYPE html>
<html lang="en">
<head>
<meta charset="utf-8">
<title>UIML workbench</title>
</head>
<body>
<main id="workbench">
<p>The workbench client is served separately. API root: <code>/api</code></p>
<ul>
<li>GET /api/document</li>
<li>PUT /api/document</li>
<li>POST /api/property</li>
<li>POST /api/transform</li>
<li>POST /api/render</li>
<li>POST /api/event</li>
<li>GET /api/sourcemap</li>
<li>GET /api/history</li>
<li>POST /api/history/restore</li>
</ul>
</main>
</body>
</html>
)";

}  // namespace

struct WorkbenchServer::Impl {
  WorkbenchSession& session;
  httplib::Server server;
};

WorkbenchServer::WorkbenchServer(WorkbenchSession& session) : impl_(new Impl{session, {}}) {
  auto& srv = impl_->server;
  // No SO_REUSEPORT: a second server on a taken port must fail to bind.
  srv.set_socket_options([](socket_t sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const void*>(&yes), sizeof(yes));
  });

  auto api = [this](const httplib::Request& req, httplib::Response& res) {
    auto r = impl_->session.handle(req.method, req.path, req.body);
    res.status = r.status;
    res.set_content(r.body, "application/json");
  };
  srv.Get(R"(/api/.*)", api);
  srv.Put(R"(/api/.*)", api);
  srv.Post(R"(/api/.*)", api);
  srv.Get("/", [](const httplib::Request&, httplib::Response& res) {
    res.set_content(kIndexPage, "text/html; charset=utf-8");
  });
}

WorkbenchServer::~WorkbenchServer() { stop(); }

int WorkbenchServer::bind(const std::string& host, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(host);
  return impl_->server.bind_to_port(host, port) ? port : -1;
}

bool WorkbenchServer::listen() { return impl_->server.listen_after_bind(); }

void WorkbenchServer::stop() {
  if (impl_->server.is_running()) impl_->server.stop();
}

void WorkbenchServer::wait_until_ready() const { impl_->server.wait_until_ready(); }

}  // namespace uiml::tools
