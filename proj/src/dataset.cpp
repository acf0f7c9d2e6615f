#include "seqcmp/dataset.hpp"

#include "seqcmp/csv.hpp"
#include "seqcmp/error.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>

namespace seqcmp {

std::vector<EventType> Sequence::types() const {
    std::vector<EventType> out;
    out.reserve(events.size());
    for (const auto& e : events)
        out.push_back(e.type);
    return out;
}

Dataset::Dataset(std::vector<Sequence> sequences) : sequences_(std::move(sequences)) {
    index_.reserve(sequences_.size());
    for (std::size_t i = 0; i < sequences_.size(); ++i) {
        const auto& s = sequences_[i];
        if (s.events.empty())
            throw ArgumentError("sequence '" + s.id + "' has no events");
        if (!index_.emplace(s.id, i).second)
            throw ArgumentError("duplicate sequence id '" + s.id + "'");
        bool allTimed = true;
        for (const auto& e : s.events) {
            if (e.type.empty())
                throw ArgumentError("sequence '" + s.id + "' contains an empty event type");
            alphabet_.insert(e.type);
            allTimed = allTimed && e.timestamp.has_value();
        }
        if (allTimed) {
            for (std::size_t k = 1; k < s.events.size(); ++k)
                if (*s.events[k].timestamp < *s.events[k - 1].timestamp)
                    throw ArgumentError("sequence '" + s.id + "' is not ordered by timestamp");
        }
    }
}

std::optional<std::size_t> Dataset::indexOf(std::string_view id) const {
    auto it = index_.find(std::string(id));
    if (it == index_.end())
        return std::nullopt;
    return it->second;
}

const Sequence& Dataset::byId(std::string_view id) const {
    auto i = indexOf(id);
    if (!i)
        throw ArgumentError("unknown sequence id '" + std::string(id) + "'");
    return sequences_[*i];
}

Dataset Dataset::subset(const std::set<SequenceId>& ids) const {
    std::vector<std::size_t> picked;
    picked.reserve(ids.size());
    for (const auto& id : ids) {
        auto i = indexOf(id);
        if (!i)
            throw ArgumentError("unknown sequence id '" + id + "'");
        picked.push_back(*i);
    }
    std::sort(picked.begin(), picked.end());
    std::vector<Sequence> out;
    out.reserve(picked.size());
    for (auto i : picked)
        out.push_back(sequences_[i]);
    return Dataset(std::move(out));
}

void IngestConfig::validate() const {
    if (groupByColumn.empty() || eventTypeColumn.empty())
        throw ConfigError("groupByColumn and eventTypeColumn are required");
    if (groupByColumn == eventTypeColumn)
        throw ConfigError("groupByColumn and eventTypeColumn must differ");
    if (timestampColumn && (*timestampColumn == groupByColumn || *timestampColumn == eventTypeColumn))
        throw ConfigError("timestampColumn must differ from the key columns");
}

namespace {

bool parseInt(std::string_view s, int& out) {
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && p == s.data() + s.size();
}

std::optional<double> parseIso8601(std::string_view s) {
    // YYYY-MM-DD[(T| )HH:MM[:SS[.fff]]][Z]
    if (s.size() < 10 || s[4] != '-' || s[7] != '-')
        return std::nullopt;
    int y = 0, mo = 0, d = 0, h = 0, mi = 0;
    double sec = 0.0;
    if (!parseInt(s.substr(0, 4), y) || !parseInt(s.substr(5, 2), mo) || !parseInt(s.substr(8, 2), d))
        return std::nullopt;
    std::string_view rest = s.substr(10);
    if (!rest.empty() && rest.back() == 'Z')
        rest.remove_suffix(1);
    if (!rest.empty()) {
        if ((rest[0] != 'T' && rest[0] != ' ') || rest.size() < 6 || rest[3] != ':')
            return std::nullopt;
        if (!parseInt(rest.substr(1, 2), h) || !parseInt(rest.substr(4, 2), mi))
            return std::nullopt;
        rest = rest.substr(6);
        if (!rest.empty()) {
            if (rest[0] != ':')
                return std::nullopt;
            rest.remove_prefix(1);
            auto [p, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), sec);
            if (ec != std::errc() || p != rest.data() + rest.size())
                return std::nullopt;
        }
    }
    using namespace std::chrono;
    const year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
    if (!ymd.ok() || h > 23 || mi > 59 || sec < 0 || sec >= 61)
        return std::nullopt;
    const auto days = sys_days{ymd}.time_since_epoch().count();
    return ((static_cast<double>(days) * 24 + h) * 60 + mi) * 60000.0 + sec * 1000.0;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t'))
        s.remove_suffix(1);
    return s;
}

} // namespace

std::optional<double> parseTimestamp(std::string_view text) {
    text = trim(text);
    if (text.empty())
        return std::nullopt;
    double v = 0;
    auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec == std::errc() && p == text.data() + text.size())
        return v;
    if (auto iso = parseIso8601(text))
        return iso;
    throw ArgumentError("unparseable timestamp '" + std::string(text) + "'");
}

Dataset ingest(std::string_view raw, const IngestConfig& config) {
    config.validate();
    auto records = csv::parse(raw, config.delimiter);
    if (records.empty())
        return Dataset{};

    std::vector<std::string> header;
    std::size_t firstData = 0;
    if (config.hasHeader) {
        header = records.front().fields;
        for (auto& h : header)
            h = std::string(trim(h));
        firstData = 1;
    } else {
        for (std::size_t i = 0; i < records.front().fields.size(); ++i)
            header.push_back(std::to_string(i));
    }

    auto column = [&](const std::string& name) -> std::size_t {
        auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end())
            throw ConfigError("unknown column '" + name + "'");
        return static_cast<std::size_t>(it - header.begin());
    };
    const std::size_t groupCol = column(config.groupByColumn);
    const std::size_t typeCol = column(config.eventTypeColumn);
    const bool timed = config.timestampColumn.has_value();
    const std::size_t timeCol = timed ? column(*config.timestampColumn) : header.size();

    std::vector<Sequence> groups;
    std::unordered_map<std::string, std::size_t> groupIndex;
    for (std::size_t r = firstData; r < records.size(); ++r) {
        const auto& rec = records[r];
        if (rec.fields.size() != header.size())
            throw ParseError(rec.number, "expected " + std::to_string(header.size()) + " columns, found " +
                                             std::to_string(rec.fields.size()));
        Event e;
        e.type = std::string(trim(rec.fields[typeCol]));
        if (e.type.empty())
            throw ParseError(rec.number, "empty event type");
        if (timed) {
            try {
                e.timestamp = parseTimestamp(rec.fields[timeCol]);
            } catch (const ArgumentError& err) {
                throw ParseError(rec.number, err.what());
            }
        }
        for (std::size_t c = 0; c < header.size(); ++c)
            if (c != groupCol && c != typeCol && c != timeCol)
                e.attributes.emplace(header[c], rec.fields[c]);

        const std::string gid(trim(rec.fields[groupCol]));
        if (gid.empty())
            throw ParseError(rec.number, "empty group id");
        auto [it, fresh] = groupIndex.emplace(gid, groups.size());
        if (fresh)
            groups.push_back(Sequence{gid, {}});
        groups[it->second].events.push_back(std::move(e));
    }

    for (auto& g : groups) {
        const bool allTimed =
            std::all_of(g.events.begin(), g.events.end(), [](const Event& e) { return e.timestamp.has_value(); });
        if (allTimed)
            std::stable_sort(g.events.begin(), g.events.end(),
                             [](const Event& a, const Event& b) { return *a.timestamp < *b.timestamp; });
    }
    return Dataset(std::move(groups));
}

Dataset filterByLength(const Dataset& d, std::size_t minLen, std::optional<std::size_t> maxLen) {
    if (minLen < 1)
        throw ArgumentError("minLen must be at least 1");
    if (maxLen && *maxLen < minLen)
        throw ArgumentError("maxLen must not be smaller than minLen");
    std::vector<Sequence> kept;
    for (const auto& s : d.sequences())
        if (s.size() >= minLen && (!maxLen || s.size() <= *maxLen))
            kept.push_back(s);
    return Dataset(std::move(kept));
}

DatasetStats stats(const Dataset& d) {
    DatasetStats st;
    st.count = d.size();
    for (const auto& s : d.sequences())
        st.totalEvents += s.size();
    st.avgLength = st.count == 0 ? 0.0 : static_cast<double>(st.totalEvents) / static_cast<double>(st.count);
    return st;
}

} // namespace seqcmp
