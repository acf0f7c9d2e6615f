#pragma once

#include "seqcmp/dataset.hpp"
#include "seqcmp/layout.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace seqcmp {

struct AlignmentRow {
    SequenceId sequenceId;
    SetTag set = SetTag::A;
    std::vector<EventType> events;
    std::size_t offset = 0;
};

/// Sequence-level view of one pattern's support set.
struct AlignmentView {
    std::string patternId;
    std::vector<EventType> keyEvents;
    std::optional<EventType> alignedOn;
    std::vector<AlignmentRow> rows;
};

std::optional<std::size_t> firstOccurrence(const std::vector<EventType>& events, const EventType& e);
std::optional<std::size_t> firstOccurrence(const Sequence& s, const EventType& e);

/// Rows for `units` in the given order with zero offsets.
AlignmentView makeAlignmentView(std::string patternId, std::vector<EventType> keyEvents,
                                const std::vector<UnitRef>& units, const Dataset& source);

/// Shifts every row so the first occurrence of `e` lands on a common
/// baseline: offset = M - firstOccurrence, M the largest first occurrence.
/// With no event all offsets are reset to zero. Throws ArgumentError when `e`
/// is not a key event, ConsistencyError when a row does not contain it.
AlignmentView alignByEvent(AlignmentView view, const std::optional<EventType>& e);

/// First occurrence of `e` in every row, for hover highlighting.
std::vector<std::optional<std::size_t>> keyEventHighlight(const AlignmentView& view, const EventType& e);

} // namespace seqcmp
