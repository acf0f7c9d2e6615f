#include "seqcmp/http_server.hpp"

#include <httplib.h>

namespace seqcmp {

struct HttpServer::Impl {
    Service& service;
    httplib::Server server;

    explicit Impl(Service& s) : service(s) {}

    void forward(const httplib::Request& req, httplib::Response& res) {
        ApiRequest r;
        r.method = req.method;
        r.path = req.path;
        r.body = req.body;
        for (const auto& [k, v] : req.params)
            r.query.emplace(k, v); // first value wins for repeated keys
        if (r.path.rfind("/api/", 0) == 0)
            r.path.erase(0, 4);
        const ApiResponse out = service.handle(r);
        res.status = out.status;
        res.set_content(out.body, "application/json");
    }
};

HttpServer::HttpServer(Service& service, std::optional<std::filesystem::path> staticDir)
    : impl_(std::make_unique<Impl>(service)) {
    auto& srv = impl_->server;
    auto handler = [this](const httplib::Request& req, httplib::Response& res) { impl_->forward(req, res); };
    // The API lives under /api when a UI bundle is mounted at the root.
    const std::string pattern = staticDir ? R"(/api/.*)" : R"(/.*)";
    srv.Get(pattern, handler);
    srv.Post(pattern, handler);
    srv.Delete(pattern, handler);
    if (staticDir)
        srv.set_mount_point("/", staticDir->string());
    srv.set_default_headers({{"Access-Control-Allow-Origin", "*"}});
    srv.Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) {
        res.set_header("Access-Control-Allow-Methods", "GET, POST, DELETE, OPTIONS");
        res.set_header("Access-Control-Allow-Headers", "Content-Type");
        res.status = 204;
    });
}

HttpServer::~HttpServer() { stop(); }

bool HttpServer::listen(const std::string& host, int port) { return impl_->server.listen(host, port); }

int HttpServer::bindToAnyPort(const std::string& host) { return impl_->server.bind_to_any_port(host); }

bool HttpServer::listenAfterBind() { return impl_->server.listen_after_bind(); }

void HttpServer::waitUntilReady() const { impl_->server.wait_until_ready(); }

void HttpServer::stop() {
    if (impl_)
        impl_->server.stop();
}

} // namespace seqcmp
