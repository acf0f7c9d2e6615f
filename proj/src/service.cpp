#include "seqcmp/service.hpp"

#include "seqcmp/alignment.hpp"
#include "seqcmp/error.hpp"
#include "seqcmp/manifest.hpp"
#include "seqcmp/serialize.hpp"

#include <atomic>
#include <charconv>
#include <fstream>
#include <sstream>

namespace seqcmp {

using nlohmann::json;

struct Service::TreePair {
    std::shared_ptr<const Dataset> data;
    AffixTree prefix;
    AffixTree suffix;
};

struct Service::Session {
    struct Mined {
        MiningConfig config;
        std::uint64_t generation = 0;
        std::vector<Pattern> patterns;
    };

    std::string id;
    std::string dataset;
    std::shared_ptr<const Dataset> base;
    std::shared_ptr<const TreePair> trees;
    MatrixState state;
    std::optional<Selection> selection;
    MiningConfig mining;
    std::optional<Mined> cache;

    std::mutex mutex;
    std::atomic<std::uint64_t> generation{0};
    std::atomic<bool> miningActive{false};
    std::atomic<std::size_t> patternCount{0};
};

namespace {

/// Maps to a 4xx response inside the router.
struct HttpError {
    int status;
    std::string message;
};

ApiResponse reply(const json& body, int status = 200) { return {status, body.dump()}; }

ApiResponse failure(int status, const std::string& message) { return reply(json{{"error", message}}, status); }

json parseBody(const ApiRequest& r) {
    if (r.body.empty())
        return json::object();
    try {
        json j = json::parse(r.body);
        if (!j.is_object())
            throw HttpError{400, "request body must be a JSON object"};
        return j;
    } catch (const json::parse_error& e) {
        throw HttpError{400, std::string("malformed JSON: ") + e.what()};
    }
}

template <class T>
T field(const json& body, const char* name) {
    if (!body.contains(name))
        throw HttpError{422, std::string("missing field '") + name + "'"};
    try {
        return body.at(name).get<T>();
    } catch (const json::exception&) {
        throw HttpError{422, std::string("field '") + name + "' has the wrong type"};
    }
}

std::optional<std::string> queryParam(const ApiRequest& r, const std::string& name) {
    auto it = r.query.find(name);
    if (it == r.query.end() || it->second.empty())
        return std::nullopt;
    return it->second;
}

double queryNumber(const ApiRequest& r, const std::string& name, double fallback) {
    auto v = queryParam(r, name);
    if (!v)
        return fallback;
    double out = 0;
    auto [p, ec] = std::from_chars(v->data(), v->data() + v->size(), out);
    if (ec != std::errc() || p != v->data() + v->size())
        throw HttpError{422, "query parameter '" + name + "' must be a number"};
    return out;
}

template <class Enum, class Parser>
Enum queryEnum(const ApiRequest& r, const std::string& name, Enum fallback, Parser parse) {
    auto v = queryParam(r, name);
    if (!v)
        return fallback;
    auto parsed = parse(*v);
    if (!parsed)
        throw HttpError{422, "invalid value '" + *v + "' for '" + name + "'"};
    return *parsed;
}

std::vector<std::string> splitPath(const std::string& path) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : path) {
        if (c == '/') {
            if (!cur.empty())
                parts.push_back(std::move(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty())
        parts.push_back(std::move(cur));
    return parts;
}

std::vector<Pick> parsePicks(const json& body, const char* name) {
    if (!body.contains(name) || !body.at(name).is_array())
        throw HttpError{422, std::string("'") + name + "' must be an array of picks"};
    std::vector<Pick> picks;
    for (const auto& p : body.at(name)) {
        if (!p.is_object())
            throw HttpError{422, "a pick must be an object"};
        auto mode = parsePickMode(p.value("mode", "cell"));
        if (!mode)
            throw HttpError{422, "pick mode must be cell, row or column"};
        Pick pick;
        pick.mode = *mode;
        try {
            pick.row = p.value("row", std::size_t{0});
            pick.column = p.value("column", std::size_t{0});
        } catch (const json::exception&) {
            throw HttpError{422, "pick coordinates must be non-negative integers"};
        }
        picks.push_back(pick);
    }
    return picks;
}

std::string patternId(std::uint64_t generation, std::size_t index) {
    return "g" + std::to_string(generation) + "-p" + std::to_string(index);
}

} // namespace

Service::Service(std::map<std::string, std::shared_ptr<const Dataset>> datasets, ServiceOptions options)
    : datasets_(std::move(datasets)), options_(std::move(options)) {
    options_.defaultMining.validate();
    if (options_.snapshotDir) {
        std::filesystem::create_directories(*options_.snapshotDir);
        for (const auto& entry : std::filesystem::directory_iterator(*options_.snapshotDir)) {
            if (!entry.is_regular_file() || entry.path().extension() != ".json")
                continue;
            if (auto s = restore(entry.path()))
                sessions_.emplace(s->id, s);
        }
    }
}

Service::~Service() = default;

std::unique_ptr<Service> Service::fromManifestDirectory(const std::filesystem::path& dataDir,
                                                        ServiceOptions options) {
    std::map<std::string, std::shared_ptr<const Dataset>> datasets;
    for (const auto& m : loadManifestDirectory(dataDir))
        datasets.emplace(m.name, std::make_shared<const Dataset>(loadDataset(m)));
    return std::make_unique<Service>(std::move(datasets), std::move(options));
}

std::vector<std::string> Service::datasetNames() const {
    std::vector<std::string> names;
    for (const auto& [name, _] : datasets_)
        names.push_back(name);
    return names;
}

std::size_t Service::sessionCount() const {
    std::shared_lock lock(sessionsMutex_);
    return sessions_.size();
}

std::shared_ptr<const Service::TreePair> Service::trees(const std::string& dataset, const LengthFilter& filter) {
    const std::string key = dataset + '\x1f' + std::to_string(filter.minLen) + '\x1f' +
                            (filter.maxLen ? std::to_string(*filter.maxLen) : std::string("-"));
    std::lock_guard lock(treesMutex_);
    if (auto it = treeCache_.find(key); it != treeCache_.end())
        return it->second;
    auto data = std::make_shared<const Dataset>(filterByLength(*datasets_.at(dataset), filter.minLen, filter.maxLen));
    auto pair = std::make_shared<const TreePair>(
        TreePair{data, buildPrefixTree(data, options_.maxTreeDepth), buildSuffixTree(data, options_.maxTreeDepth)});
    treeCache_.emplace(key, pair);
    return pair;
}

std::shared_ptr<Service::Session> Service::findSession(const std::string& id) const {
    std::shared_lock lock(sessionsMutex_);
    auto it = sessions_.find(id);
    return it == sessions_.end() ? nullptr : it->second;
}

void Service::snapshot(const Session& s) const {
    if (!options_.snapshotDir)
        return;
    json j{{"sessionId", s.id},
           {"dataset", s.dataset},
           {"state", toJson(s.state)},
           {"miningConfig", toJson(s.mining)},
           {"generation", s.generation.load()}};
    j["selection"] = s.selection ? toJson(*s.selection) : json(nullptr);
    const auto target = *options_.snapshotDir / (s.id + ".json");
    const auto tmp = *options_.snapshotDir / (s.id + ".json.tmp");
    {
        std::ofstream out(tmp, std::ios::trunc);
        out << j.dump(2);
    }
    std::filesystem::rename(tmp, target);
}

std::shared_ptr<Service::Session> Service::restore(const std::filesystem::path& file) {
    std::ifstream in(file);
    json j = json::parse(in, nullptr, false);
    if (j.is_discarded() || !j.is_object())
        return nullptr;
    try {
        auto s = std::make_shared<Session>();
        s->id = j.at("sessionId").get<std::string>();
        s->dataset = j.at("dataset").get<std::string>();
        if (!datasets_.contains(s->dataset))
            return nullptr;
        s->base = datasets_.at(s->dataset);
        s->state = matrixStateFromJson(j.at("state"));
        const auto& mc = j.at("miningConfig");
        s->mining.minSupportPct = mc.at("minSupport").get<double>();
        s->mining.maxPatternLength = mc.at("maxLength").get<std::size_t>();
        s->mining.mode = parseMiningMode(mc.at("mode").get<std::string>()).value_or(MiningMode::Maximal);
        s->mining.validate();
        if (!j.at("selection").is_null())
            s->selection = selectionFromJson(j.at("selection"));
        s->generation = j.at("generation").get<std::uint64_t>();
        s->trees = trees(s->dataset, s->state.lengthFilter);
        materializeMatrix(s->trees->prefix, s->trees->suffix, s->state); // validates the stored paths
        if (s->id.size() > 1 && s->id[0] == 's') {
            std::uint64_t n = 0;
            auto [p, ec] = std::from_chars(s->id.data() + 1, s->id.data() + s->id.size(), n);
            if (ec == std::errc() && p == s->id.data() + s->id.size())
                nextSession_ = std::max(nextSession_, n + 1);
        }
        return s;
    } catch (const std::exception&) {
        return nullptr;
    }
}

ApiResponse Service::handle(const ApiRequest& request) {
    try {
        return route(request);
    } catch (const HttpError& e) {
        return failure(e.status, e.message);
    } catch (const StateError& e) {
        return failure(409, e.what());
    } catch (const ConsistencyError& e) {
        return failure(409, e.what());
    } catch (const ArgumentError& e) {
        return failure(422, e.what());
    } catch (const SizeError& e) {
        return failure(422, e.what());
    } catch (const std::exception& e) {
        return failure(500, e.what());
    }
}

ApiResponse Service::route(const ApiRequest& r) {
    const auto parts = splitPath(r.path);
    const auto& m = r.method;
    auto methodNotAllowed = [] { return failure(405, "method not allowed"); };

    if (parts.size() == 1 && parts[0] == "datasets")
        return m == "GET" ? listDatasets() : methodNotAllowed();
    if (parts.empty() || parts[0] != "sessions")
        return failure(404, "no such route");
    if (parts.size() == 1)
        return m == "POST" ? createSession(r) : methodNotAllowed();

    if (parts.size() == 2 && m == "DELETE")
        return deleteSession(parts[1]);

    auto session = findSession(parts[1]);
    if (!session)
        return failure(404, "unknown session '" + parts[1] + "'");

    if (parts.size() == 3 && parts[2] == "status")
        return m == "GET" ? status(*session) : methodNotAllowed();

    std::lock_guard lock(session->mutex);
    if (parts.size() == 2)
        return m == "GET" ? sessionInfo(*session) : methodNotAllowed();
    const std::string& section = parts[2];
    if (section == "matrix") {
        if (parts.size() == 3)
            return m == "GET" ? matrix(*session) : m == "POST" ? matrixOp(*session, r) : methodNotAllowed();
        if (parts.size() == 4 && m != "POST")
            return methodNotAllowed();
        if (parts.size() == 4 && parts[3] == "sort")
            return matrixSort(*session, r);
        if (parts.size() == 4 && parts[3] == "filter")
            return matrixFilter(*session, r);
        if (parts.size() == 4 && parts[3] == "bars")
            return matrixBars(*session, r);
    } else if (section == "selection" && parts.size() == 3) {
        if (m == "POST")
            return select(*session, r);
        if (m == "GET")
            return reply(session->selection ? toJson(*session->selection) : json(nullptr));
        return methodNotAllowed();
    } else if (section == "patterns") {
        if (m != "GET")
            return methodNotAllowed();
        if (parts.size() == 3)
            return patterns(*session, r);
        if (parts.size() == 5 && parts[4] == "sequences")
            return sequences(*session, parts[3], r);
    }
    return failure(404, "no such route");
}

ApiResponse Service::listDatasets() const {
    json out = json::array();
    for (const auto& [name, d] : datasets_)
        out.push_back({{"name", name}, {"stats", toJson(stats(*d))}, {"alphabetSize", d->alphabet().size()}});
    return reply(json{{"datasets", std::move(out)}});
}

ApiResponse Service::createSession(const ApiRequest& r) {
    const json body = parseBody(r);
    const auto name = field<std::string>(body, "dataset");
    if (!datasets_.contains(name))
        return failure(404, "unknown dataset '" + name + "'");

    auto s = std::make_shared<Session>();
    s->dataset = name;
    s->base = datasets_.at(name);
    s->mining = options_.defaultMining;
    s->trees = trees(name, s->state.lengthFilter);
    {
        std::unique_lock lock(sessionsMutex_);
        s->id = "s" + std::to_string(nextSession_++);
        sessions_.emplace(s->id, s);
    }
    std::lock_guard lock(s->mutex);
    snapshot(*s);
    const Grid g = materializeMatrix(s->trees->prefix, s->trees->suffix, s->state);
    return reply(json{{"sessionId", s->id}, {"stats", toJson(stats(*s->trees->data))}, {"initialGrid", toJson(g)}},
                 201);
}

ApiResponse Service::deleteSession(const std::string& id) {
    std::unique_lock lock(sessionsMutex_);
    if (sessions_.erase(id) == 0)
        return failure(404, "unknown session '" + id + "'");
    if (options_.snapshotDir)
        std::filesystem::remove(*options_.snapshotDir / (id + ".json"));
    return reply(json{{"deleted", id}});
}

ApiResponse Service::sessionInfo(Session& s) const {
    json out{{"sessionId", s.id},
             {"dataset", s.dataset},
             {"stats", toJson(stats(*s.trees->data))},
             {"state", toJson(s.state)},
             {"miningConfig", toJson(s.mining)},
             {"generation", s.generation.load()}};
    out["selection"] = s.selection ? toJson(*s.selection) : json(nullptr);
    return reply(out);
}

ApiResponse Service::matrix(Session& s) const {
    const Grid g = materializeMatrix(s.trees->prefix, s.trees->suffix, s.state);
    return reply(json{{"grid", toJson(g)}, {"state", toJson(s.state)}});
}

ApiResponse Service::matrixOp(Session& s, const ApiRequest& r) {
    const json body = parseBody(r);
    const auto op = field<std::string>(body, "op");
    const AffixTree& prefix = s.trees->prefix;
    const AffixTree& suffix = s.trees->suffix;
    auto path = [&](const char* name) { return field<Path>(body, name); };

    Transition t;
    if (op == "expandCell")
        t = expandCell(s.state, prefix, suffix, path("row"), path("column"));
    else if (op == "expandRow")
        t = expandRow(s.state, suffix, path("row"));
    else if (op == "expandColumn")
        t = expandColumn(s.state, prefix, path("column"));
    else if (op == "collapse") {
        if (!body.contains("row") && !body.contains("column"))
            throw HttpError{422, "collapse needs 'row' and/or 'column'"};
        t = {s.state, true};
        if (body.contains("column")) {
            auto c = collapseColumn(t.state, path("column"));
            t = {c.state, t.noop && c.noop};
        }
        if (body.contains("row")) {
            auto rr = collapseRow(t.state, path("row"));
            t = {rr.state, t.noop && rr.noop};
        }
    } else if (op == "expandAllNextLevel")
        t = expandAllNextLevel(s.state, prefix, suffix);
    else if (op == "collapseAll") {
        MatrixState next = collapseAll(s.state);
        t = {next, next == s.state};
    } else
        throw HttpError{422, "unknown matrix op '" + op + "'"};

    const Grid g = materializeMatrix(prefix, suffix, t.state);
    s.state = t.state;
    snapshot(s);
    return reply(json{{"grid", toJson(g)}, {"noop", t.noop}, {"state", toJson(s.state)}});
}

ApiResponse Service::matrixSort(Session& s, const ApiRequest& r) {
    const json body = parseBody(r);
    auto metric = parseMetric(field<std::string>(body, "metric"));
    auto order = parseSortOrder(field<std::string>(body, "order"));
    if (!metric || !order)
        throw HttpError{422, "metric must be count|avgLength and order ascending|descending|none"};
    s.state.sortMetric = *metric;
    s.state.sortOrder = *order;
    snapshot(s);
    return matrix(s);
}

ApiResponse Service::matrixFilter(Session& s, const ApiRequest& r) {
    const json body = parseBody(r);
    LengthFilter f;
    f.minLen = field<std::size_t>(body, "minLen");
    if (body.contains("maxLen") && !body.at("maxLen").is_null())
        f.maxLen = field<std::size_t>(body, "maxLen");
    if (f.minLen < 1 || (f.maxLen && *f.maxLen < f.minLen))
        throw HttpError{422, "length filter needs 1 <= minLen <= maxLen"};
    s.trees = trees(s.dataset, f);
    s.state.lengthFilter = f;
    s.state.expandedPrefix = {Path{}};
    s.state.expandedSuffix = {Path{}};
    snapshot(s);
    const Grid g = materializeMatrix(s.trees->prefix, s.trees->suffix, s.state);
    return reply(json{{"grid", toJson(g)}, {"stats", toJson(stats(*s.trees->data))}, {"state", toJson(s.state)}});
}

ApiResponse Service::matrixBars(Session& s, const ApiRequest& r) {
    const json body = parseBody(r);
    auto metric = parseMetric(field<std::string>(body, "metric"));
    if (!metric)
        throw HttpError{422, "metric must be count or avgLength"};
    s.state.barMetric = *metric;
    snapshot(s);
    return matrix(s);
}

ApiResponse Service::select(Session& s, const ApiRequest& r) {
    const json body = parseBody(r);
    const auto picksA = parsePicks(body, "picksA");
    const auto picksB = parsePicks(body, "picksB");
    const Grid g = materializeMatrix(s.trees->prefix, s.trees->suffix, s.state);
    SelectionResult res = selectSets(g, picksA, picksB);
    if (res.selection.setA.empty() || res.selection.setB.empty())
        return reply(json{{"error", "both selected sets must be non-empty"}, {"warnings", res.warnings}}, 422);
    s.selection = res.selection;
    s.cache.reset();
    s.patternCount = 0;
    snapshot(s);
    return reply(json{{"sizeA", res.selection.setA.size()},
                      {"sizeB", res.selection.setB.size()},
                      {"overlap", res.overlap.size()},
                      {"overlapIds", res.overlap},
                      {"warnings", res.warnings},
                      {"provenance", res.selection.provenance}});
}

ApiResponse Service::patterns(Session& s, const ApiRequest& r) {
    if (!s.selection)
        return failure(409, "no selection has been made");

    MiningConfig cfg = s.mining;
    cfg.minSupportPct = queryNumber(r, "minSupport", cfg.minSupportPct);
    const double maxLen = queryNumber(r, "maxLength", static_cast<double>(cfg.maxPatternLength));
    if (maxLen < 1 || maxLen != static_cast<double>(static_cast<std::size_t>(maxLen)))
        throw HttpError{422, "maxLength must be a positive integer"};
    cfg.maxPatternLength = static_cast<std::size_t>(maxLen);
    cfg.mode = queryEnum(r, "mode", cfg.mode, parseMiningMode);
    cfg.validate();

    LayoutRequest lr;
    lr.patternLayout = queryEnum(r, "patternLayout", lr.patternLayout, parsePatternLayout);
    lr.unitLayout = queryEnum(r, "unitLayout", lr.unitLayout, parseUnitLayout);
    lr.sortKey = queryEnum(r, "sortKey", lr.sortKey, parseSortKey);
    lr.canvas.width = queryNumber(r, "width", lr.canvas.width);
    lr.canvas.height = queryNumber(r, "height", lr.canvas.height);
    lr.paddingPx = queryNumber(r, "padding", lr.paddingPx);

    if (!s.cache || !(s.cache->config == cfg)) {
        s.miningActive = true;
        std::vector<Pattern> mined;
        try {
            mined = mineSelection(*s.base, *s.selection, cfg);
        } catch (...) {
            s.miningActive = false;
            throw;
        }
        s.miningActive = false;
        s.mining = cfg;
        const auto gen = ++s.generation;
        s.cache = Session::Mined{cfg, gen, std::move(mined)};
        s.patternCount = s.cache->patterns.size();
        snapshot(s);
    }

    const auto& mined = *s.cache;
    std::vector<LayoutItem> items;
    json patternsJson = json::array();
    for (std::size_t i = 0; i < mined.patterns.size(); ++i) {
        const auto& p = mined.patterns[i];
        const auto id = patternId(mined.generation, i);
        items.push_back({id, p.events, orderedUnits(p, *s.selection)});
        patternsJson.push_back(toJson(p, id));
    }
    const LayoutResult layout = computeLayout(items, lr, options_.layout);
    return reply(json{{"generation", mined.generation},
                      {"miningConfig", toJson(mined.config)},
                      {"patterns", std::move(patternsJson)},
                      {"layoutRequest",
                       {{"patternLayout", toString(lr.patternLayout)},
                        {"unitLayout", toString(lr.unitLayout)},
                        {"sortKey", toString(lr.sortKey)},
                        {"width", lr.canvas.width},
                        {"height", lr.canvas.height},
                        {"padding", lr.paddingPx}}},
                      {"layout", toJson(layout)}});
}

ApiResponse Service::sequences(Session& s, const std::string& pid, const ApiRequest& r) {
    if (!s.cache || !s.selection)
        return failure(404, "unknown or stale pattern '" + pid + "'");
    const std::string prefix = "g" + std::to_string(s.cache->generation) + "-p";
    std::size_t index = 0;
    bool ok = pid.rfind(prefix, 0) == 0 && pid.size() > prefix.size();
    if (ok) {
        auto [p, ec] = std::from_chars(pid.data() + prefix.size(), pid.data() + pid.size(), index);
        ok = ec == std::errc() && p == pid.data() + pid.size() && index < s.cache->patterns.size();
    }
    if (!ok)
        return failure(404, "unknown or stale pattern '" + pid + "'");

    const Pattern& p = s.cache->patterns[index];
    AlignmentView view = makeAlignmentView(pid, p.events, orderedUnits(p, *s.selection), *s.base);
    view = alignByEvent(std::move(view), queryParam(r, "alignEvent"));
    return reply(toJson(view));
}

ApiResponse Service::status(const Session& s) const {
    return reply(json{{"sessionId", s.id},
                      {"mining", s.miningActive.load() ? "running" : "idle"},
                      {"generation", s.generation.load()},
                      {"patternCount", s.patternCount.load()}});
}

} // namespace seqcmp
