#pragma once

#include "seqcmp/affix.hpp"
#include "seqcmp/dataset.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace seqcmp {

enum class MiningMode { Maximal, Frequent };

struct MiningConfig {
    double minSupportPct = 30.0;
    std::size_t maxPatternLength = 8;
    MiningMode mode = MiningMode::Maximal;

    /// Throws ArgumentError unless 0 < minSupportPct <= 100 and maxPatternLength >= 1.
    void validate() const;
    bool operator==(const MiningConfig&) const = default;
};

struct Pattern {
    std::vector<EventType> events;
    std::vector<SequenceId> supportIds; // ascending
    double supportPct = 0.0;
    std::size_t countA = 0;
    std::size_t countB = 0;

    std::size_t supportCount() const noexcept { return supportIds.size(); }
    bool operator==(const Pattern&) const = default;
};

/// Gapped containment: `pattern` occurs in `s` in order, not necessarily contiguously.
bool isSubsequence(std::span<const EventType> pattern, const Sequence& s);
bool isSubsequence(std::span<const EventType> pattern, std::span<const EventType> s);

/// Smallest support count satisfying `pct` over `total` sequences.
std::size_t minSupportCount(std::size_t total, double pct);

/// Result order: more supporting sequences first, then lexicographic events.
void sortPatterns(std::vector<Pattern>& patterns);

/// Depth-first search over sequence extensions using vertical per-event
/// occurrence bitmaps. In maximal mode every frequent pattern without a
/// frequent forward extension is checked against the result set, which
/// drops whatever the newcomer subsumes. countA/countB are left at zero.
std::vector<Pattern> mine(const Dataset& d, const MiningConfig& cfg);

/// Exhaustive reference miner for small inputs (|D| <= 30, sequence length
/// <= 10, alphabet <= 6); throws SizeError beyond that.
std::vector<Pattern> bruteForceMine(const Dataset& d, const MiningConfig& cfg);

/// Fills countA/countB from the selection. Throws ConsistencyError when a
/// supporting id belongs to neither set.
std::vector<Pattern> tagSupport(std::vector<Pattern> patterns, const Selection& selection);

/// Mines the union of both selected sets and tags the result.
std::vector<Pattern> mineSelection(const Dataset& source, const Selection& selection, const MiningConfig& cfg);

std::string toString(MiningMode m);
std::optional<MiningMode> parseMiningMode(std::string_view s);

} // namespace seqcmp
