#pragma once

#include "seqcmp/service.hpp"

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

namespace seqcmp {

/// Binds a Service to HTTP. Optionally serves a static UI bundle from `/`.
class HttpServer {
public:
    explicit HttpServer(Service& service, std::optional<std::filesystem::path> staticDir = std::nullopt);
    ~HttpServer();

    HttpServer(const HttpServer&) = delete;
    HttpServer& operator=(const HttpServer&) = delete;

    /// Blocks until stop().
    bool listen(const std::string& host, int port);
    /// Returns the chosen port, or -1.
    int bindToAnyPort(const std::string& host);
    bool listenAfterBind();
    void waitUntilReady() const;
    void stop();

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

} // namespace seqcmp
