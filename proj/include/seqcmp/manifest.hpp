#pragma once

#include "seqcmp/dataset.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>
#include <vector>

namespace seqcmp {

/// A loadable dataset: `{name, csvPath, ingestConfig}`. Relative csv paths
/// resolve against the directory holding the manifest file.
struct DatasetManifest {
    std::string name;
    std::filesystem::path csvPath;
    IngestConfig ingestConfig;
};

IngestConfig ingestConfigFromJson(const nlohmann::json& j);
nlohmann::json toJson(const IngestConfig& c);

DatasetManifest parseManifest(const nlohmann::json& j, const std::filesystem::path& baseDir);
DatasetManifest loadManifest(const std::filesystem::path& file);

/// Every `*.json` manifest directly inside `dir`, ordered by name.
std::vector<DatasetManifest> loadManifestDirectory(const std::filesystem::path& dir);

Dataset loadDataset(const DatasetManifest& m);

} // namespace seqcmp
