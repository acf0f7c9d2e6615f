#include "seqcmp/serialize.hpp"

#include "seqcmp/error.hpp"

namespace seqcmp {

using nlohmann::json;

json toJson(const DatasetStats& s) {
    return {{"count", s.count}, {"avgLength", s.avgLength}, {"totalEvents", s.totalEvents}};
}

namespace {

json axisJson(const std::vector<FrontierEntry>& entries, const std::vector<AxisMetrics>& metrics) {
    json out = json::array();
    for (std::size_t i = 0; i < entries.size(); ++i)
        out.push_back({{"path", entries[i].path},
                       {"residual", entries[i].residual},
                       {"count", metrics[i].count},
                       {"avgLength", metrics[i].avgLength}});
    return out;
}

} // namespace

json toJson(const Grid& g) {
    json cells = json::array();
    for (const auto& row : g.cells) {
        json r = json::array();
        for (const auto& c : row)
            r.push_back({{"count", c.count()}, {"avgLength", c.avgLength}});
        cells.push_back(std::move(r));
    }
    return {{"columns", axisJson(g.columns, g.columnMetrics)},
            {"rows", axisJson(g.rows, g.rowMetrics)},
            {"cells", std::move(cells)},
            {"maxCellCount", g.maxCellCount},
            {"barMetric", toString(g.barMetric)}};
}

json toJson(const MatrixState& s) {
    json filter{{"minLen", s.lengthFilter.minLen}};
    filter["maxLen"] = s.lengthFilter.maxLen ? json(*s.lengthFilter.maxLen) : json(nullptr);
    return {{"expandedPrefix", s.expandedPrefix},
            {"expandedSuffix", s.expandedSuffix},
            {"sortMetric", toString(s.sortMetric)},
            {"sortOrder", toString(s.sortOrder)},
            {"barMetric", toString(s.barMetric)},
            {"lengthFilter", std::move(filter)}};
}

MatrixState matrixStateFromJson(const json& j) {
    MatrixState s;
    try {
        s.expandedPrefix = j.at("expandedPrefix").get<std::set<Path>>();
        s.expandedSuffix = j.at("expandedSuffix").get<std::set<Path>>();
        s.expandedPrefix.insert(Path{});
        s.expandedSuffix.insert(Path{});
        auto metric = parseMetric(j.at("sortMetric").get<std::string>());
        auto order = parseSortOrder(j.at("sortOrder").get<std::string>());
        auto bars = parseMetric(j.at("barMetric").get<std::string>());
        if (!metric || !order || !bars)
            throw ArgumentError("invalid matrix state enumeration");
        s.sortMetric = *metric;
        s.sortOrder = *order;
        s.barMetric = *bars;
        const auto& f = j.at("lengthFilter");
        s.lengthFilter.minLen = f.at("minLen").get<std::size_t>();
        if (f.contains("maxLen") && !f.at("maxLen").is_null())
            s.lengthFilter.maxLen = f.at("maxLen").get<std::size_t>();
    } catch (const json::exception& e) {
        throw ArgumentError(std::string("invalid matrix state: ") + e.what());
    }
    return s;
}

json toJson(const Selection& s) {
    return {{"setA", s.setA}, {"setB", s.setB}, {"provenance", s.provenance}};
}

Selection selectionFromJson(const json& j) {
    Selection s;
    try {
        s.setA = j.at("setA").get<std::set<SequenceId>>();
        s.setB = j.at("setB").get<std::set<SequenceId>>();
        s.provenance = j.value("provenance", "");
    } catch (const json::exception& e) {
        throw ArgumentError(std::string("invalid selection: ") + e.what());
    }
    return s;
}

json toJson(const MiningConfig& c) {
    return {{"minSupport", c.minSupportPct}, {"maxLength", c.maxPatternLength}, {"mode", toString(c.mode)}};
}

json toJson(const Pattern& p, const std::string& id) {
    return {{"id", id},
            {"events", p.events},
            {"support",
             {{"pct", p.supportPct}, {"count", p.supportCount()}, {"countA", p.countA}, {"countB", p.countB}}},
            {"sequenceIds", p.supportIds}};
}

json toJson(const LayoutResult& r) {
    json containers = json::object();
    for (const auto& c : r.containers)
        containers[c.patternId] = {{"x", c.rect.x}, {"y", c.rect.y}, {"w", c.rect.width}, {"h", c.rect.height}};
    json units = json::array();
    for (const auto& u : r.units)
        units.push_back({{"pid", u.patternId}, {"sid", u.sequenceId}, {"set", toString(u.set)}, {"x", u.rect.x},
                         {"y", u.rect.y}});
    return {{"unitSize", r.unitSize},
            {"containers", std::move(containers)},
            {"units", std::move(units)},
            {"overflow", r.overflow}};
}

json toJson(const AlignmentView& v) {
    json rows = json::array();
    for (const auto& r : v.rows)
        rows.push_back({{"sid", r.sequenceId}, {"set", toString(r.set)}, {"offset", r.offset}, {"events", r.events}});
    json out{{"pattern", v.patternId}, {"keyEvents", v.keyEvents}, {"rows", std::move(rows)}};
    out["alignEvent"] = v.alignedOn ? json(*v.alignedOn) : json(nullptr);
    return out;
}

} // namespace seqcmp
