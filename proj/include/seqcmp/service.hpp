#pragma once

#include "seqcmp/affix.hpp"
#include "seqcmp/dataset.hpp"
#include "seqcmp/layout.hpp"
#include "seqcmp/mining.hpp"

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

namespace seqcmp {

struct ApiRequest {
    std::string method;
    std::string path;
    std::map<std::string, std::string> query;
    std::string body;
};

struct ApiResponse {
    int status = 200;
    std::string body;
};

struct ServiceOptions {
    std::optional<std::filesystem::path> snapshotDir;
    std::size_t maxTreeDepth = kDefaultMaxDepth;
    MiningConfig defaultMining;
    LayoutOptions layout;
};

/// Transport-independent request handler for the analysis workflow.
///
/// Routes:
///   GET  /datasets
///   POST /sessions                              {dataset}
///   GET  /sessions/{id}
///   DELETE /sessions/{id}
///   GET  /sessions/{id}/matrix
///   POST /sessions/{id}/matrix                  {op, row?, column?}
///   POST /sessions/{id}/matrix/sort             {metric, order}
///   POST /sessions/{id}/matrix/filter           {minLen, maxLen?}
///   POST /sessions/{id}/matrix/bars             {metric}
///   POST /sessions/{id}/selection               {picksA, picksB}
///   GET  /sessions/{id}/patterns                ?minSupport&mode&maxLength&patternLayout&unitLayout&sortKey&width&height&padding
///   GET  /sessions/{id}/patterns/{pid}/sequences ?alignEvent
///   GET  /sessions/{id}/status
///
/// Requests on one session are serialized; distinct sessions run
/// concurrently. Datasets and affix trees are shared read-only.
class Service {
public:
    Service(std::map<std::string, std::shared_ptr<const Dataset>> datasets, ServiceOptions options = {});
    ~Service();

    Service(const Service&) = delete;
    Service& operator=(const Service&) = delete;

    /// Loads every manifest in `dataDir`.
    static std::unique_ptr<Service> fromManifestDirectory(const std::filesystem::path& dataDir,
                                                          ServiceOptions options = {});

    ApiResponse handle(const ApiRequest& request);

    std::vector<std::string> datasetNames() const;
    std::size_t sessionCount() const;

    struct Session;
    struct TreePair;

private:
    std::shared_ptr<const TreePair> trees(const std::string& dataset, const LengthFilter& filter);
    std::shared_ptr<Session> findSession(const std::string& id) const;
    std::shared_ptr<Session> restore(const std::filesystem::path& file);
    void snapshot(const Session& s) const;

    ApiResponse route(const ApiRequest& request);
    ApiResponse listDatasets() const;
    ApiResponse createSession(const ApiRequest& request);
    ApiResponse deleteSession(const std::string& id);
    ApiResponse sessionInfo(Session& s) const;
    ApiResponse matrix(Session& s) const;
    ApiResponse matrixOp(Session& s, const ApiRequest& request);
    ApiResponse matrixSort(Session& s, const ApiRequest& request);
    ApiResponse matrixFilter(Session& s, const ApiRequest& request);
    ApiResponse matrixBars(Session& s, const ApiRequest& request);
    ApiResponse select(Session& s, const ApiRequest& request);
    ApiResponse patterns(Session& s, const ApiRequest& request);
    ApiResponse sequences(Session& s, const std::string& patternId, const ApiRequest& request);
    ApiResponse status(const Session& s) const;

    std::map<std::string, std::shared_ptr<const Dataset>> datasets_;
    ServiceOptions options_;

    mutable std::shared_mutex sessionsMutex_;
    std::map<std::string, std::shared_ptr<Session>> sessions_;
    std::uint64_t nextSession_ = 1;

    std::mutex treesMutex_;
    std::map<std::string, std::shared_ptr<const TreePair>> treeCache_;
};

} // namespace seqcmp
