#include "seqcmp/manifest.hpp"

#include "seqcmp/error.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace seqcmp {

using nlohmann::json;

IngestConfig ingestConfigFromJson(const json& j) {
    if (!j.is_object())
        throw ConfigError("ingestConfig must be an object");
    IngestConfig c;
    try {
        c.groupByColumn = j.at("groupByColumn").get<std::string>();
        c.eventTypeColumn = j.at("eventTypeColumn").get<std::string>();
        if (j.contains("timestampColumn") && !j.at("timestampColumn").is_null())
            c.timestampColumn = j.at("timestampColumn").get<std::string>();
        if (j.contains("delimiter")) {
            const auto d = j.at("delimiter").get<std::string>();
            if (d == "\\t" || d == "tab")
                c.delimiter = '\t';
            else if (d.size() == 1)
                c.delimiter = d[0];
            else
                throw ConfigError("delimiter must be a single character");
        }
        if (j.contains("hasHeader"))
            c.hasHeader = j.at("hasHeader").get<bool>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("invalid ingestConfig: ") + e.what());
    }
    c.validate();
    return c;
}

json toJson(const IngestConfig& c) {
    json j{{"groupByColumn", c.groupByColumn},
           {"eventTypeColumn", c.eventTypeColumn},
           {"delimiter", c.delimiter == '\t' ? std::string("\\t") : std::string(1, c.delimiter)},
           {"hasHeader", c.hasHeader}};
    j["timestampColumn"] = c.timestampColumn ? json(*c.timestampColumn) : json(nullptr);
    return j;
}

DatasetManifest parseManifest(const json& j, const std::filesystem::path& baseDir) {
    DatasetManifest m;
    try {
        m.name = j.at("name").get<std::string>();
        m.csvPath = j.at("csvPath").get<std::string>();
        m.ingestConfig = ingestConfigFromJson(j.at("ingestConfig"));
    } catch (const json::exception& e) {
        throw ConfigError(std::string("invalid manifest: ") + e.what());
    }
    if (m.name.empty())
        throw ConfigError("manifest name must not be empty");
    if (m.csvPath.is_relative())
        m.csvPath = baseDir / m.csvPath;
    return m;
}

DatasetManifest loadManifest(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in)
        throw ConfigError("cannot open manifest " + file.string());
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw ConfigError("manifest " + file.string() + ": " + e.what());
    }
    return parseManifest(j, file.parent_path());
}

std::vector<DatasetManifest> loadManifestDirectory(const std::filesystem::path& dir) {
    if (!std::filesystem::is_directory(dir))
        throw ConfigError("manifest directory " + dir.string() + " does not exist");
    std::vector<DatasetManifest> out;
    for (const auto& entry : std::filesystem::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".json")
            out.push_back(loadManifest(entry.path()));
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
    for (std::size_t i = 1; i < out.size(); ++i)
        if (out[i].name == out[i - 1].name)
            throw ConfigError("duplicate dataset name '" + out[i].name + "'");
    return out;
}

Dataset loadDataset(const DatasetManifest& m) {
    std::ifstream in(m.csvPath, std::ios::binary);
    if (!in)
        throw ConfigError("cannot open " + m.csvPath.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return ingest(buf.str(), m.ingestConfig);
}

} // namespace seqcmp
