#include "seqcmp/http_server.hpp"
#include "seqcmp/service.hpp"

#include <CLI11.hpp>

#include <csignal>
#include <iostream>

namespace {
seqcmp::HttpServer* activeServer = nullptr;

void onSignal(int) {
    if (activeServer)
        activeServer->stop();
}
} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Event-sequence comparison service"};
    std::string dataDir;
    std::string snapshotDir;
    std::string staticDir;
    std::string host = "127.0.0.1";
    int port = 8080;
    double minSupport = 30.0;
    std::size_t maxDepth = seqcmp::kDefaultMaxDepth;

    app.add_option("--data-dir", dataDir, "Directory of dataset manifests (*.json)")
        ->envname("SEQCMP_DATA_DIR")
        ->required();
    app.add_option("--port", port, "Listening port")->envname("SEQCMP_PORT");
    app.add_option("--snapshot-dir", snapshotDir, "Persist sessions as JSON snapshots here")
        ->envname("SEQCMP_SNAPSHOT_DIR");
    app.add_option("--host", host, "Bind address")->envname("SEQCMP_HOST");
    app.add_option("--static-dir", staticDir, "Serve a UI bundle from / (API moves under /api)")
        ->envname("SEQCMP_STATIC_DIR");
    app.add_option("--min-support", minSupport, "Default minimum support percentage")
        ->envname("SEQCMP_MIN_SUPPORT");
    app.add_option("--max-depth", maxDepth, "Depth cap of the prefix/suffix trees")->envname("SEQCMP_MAX_DEPTH");
    CLI11_PARSE(app, argc, argv);

    try {
        seqcmp::ServiceOptions options;
        if (!snapshotDir.empty())
            options.snapshotDir = snapshotDir;
        options.maxTreeDepth = maxDepth;
        options.defaultMining.minSupportPct = minSupport;
        auto service = seqcmp::Service::fromManifestDirectory(dataDir, options);

        std::optional<std::filesystem::path> assets;
        if (!staticDir.empty())
            assets = staticDir;
        seqcmp::HttpServer server(*service, assets);
        activeServer = &server;
        std::signal(SIGINT, onSignal);
        std::signal(SIGTERM, onSignal);

        std::cerr << "loaded " << service->datasetNames().size() << " dataset(s); listening on " << host << ':'
                  << port << '\n';
        if (!server.listen(host, port)) {
            std::cerr << "cannot listen on " << host << ':' << port << '\n';
            return 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
