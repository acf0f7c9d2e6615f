#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace seqcmp {

using EventType = std::string;
using SequenceId = std::string;

struct Event {
    EventType type;
    std::optional<double> timestamp;
    std::map<std::string, std::string> attributes;

    bool operator==(const Event&) const = default;
};

struct Sequence {
    SequenceId id;
    std::vector<Event> events;

    std::size_t size() const noexcept { return events.size(); }
    const EventType& type(std::size_t i) const { return events[i].type; }
    std::vector<EventType> types() const;
};

/// An immutable collection of sequences with unique ids.
///
/// The alphabet is derived from the events. Lookups by id are O(1).
class Dataset {
public:
    Dataset() = default;

    /// Validates ids, non-empty sequences, non-empty event types and timestamp
    /// ordering. Throws ArgumentError on violation.
    explicit Dataset(std::vector<Sequence> sequences);

    std::span<const Sequence> sequences() const noexcept { return sequences_; }
    const Sequence& operator[](std::size_t i) const { return sequences_[i]; }
    std::size_t size() const noexcept { return sequences_.size(); }
    bool empty() const noexcept { return sequences_.empty(); }

    const std::set<EventType>& alphabet() const noexcept { return alphabet_; }

    std::optional<std::size_t> indexOf(std::string_view id) const;
    const Sequence& byId(std::string_view id) const;

    /// Sequences whose ids are in `ids`, in this dataset's order. Unknown ids
    /// are an ArgumentError.
    Dataset subset(const std::set<SequenceId>& ids) const;

private:
    std::vector<Sequence> sequences_;
    std::set<EventType> alphabet_;
    std::unordered_map<std::string, std::size_t> index_;
};

struct IngestConfig {
    std::string groupByColumn;
    std::string eventTypeColumn;
    std::optional<std::string> timestampColumn;
    char delimiter = ',';
    bool hasHeader = true;

    /// Throws ConfigError when the two key columns coincide or are empty.
    void validate() const;
};

/// Groups delimiter-separated rows into sequences.
///
/// Without a header, column names are zero-based positions ("0", "1", ...).
/// Columns other than the group/type/timestamp columns become event attributes.
/// Timestamps may be plain numbers or ISO-8601 date-times (converted to epoch
/// milliseconds); an empty timestamp cell means "absent". A group is sorted
/// by timestamp only when every event in it carries one; the sort is stable.
Dataset ingest(std::string_view raw, const IngestConfig& config);

inline constexpr std::size_t kDefaultMinLength = 3;

/// Keeps sequences with minLen <= length <= maxLen.
Dataset filterByLength(const Dataset& d, std::size_t minLen = kDefaultMinLength,
                       std::optional<std::size_t> maxLen = std::nullopt);

struct DatasetStats {
    std::size_t count = 0;
    std::size_t totalEvents = 0;
    double avgLength = 0.0;

    bool operator==(const DatasetStats&) const = default;
};

DatasetStats stats(const Dataset& d);

/// Parses a timestamp cell. Returns nullopt for an empty cell, throws
/// ArgumentError when the text is neither numeric nor ISO-8601.
std::optional<double> parseTimestamp(std::string_view text);

} // namespace seqcmp
