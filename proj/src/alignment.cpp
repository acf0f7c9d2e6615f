#include "seqcmp/alignment.hpp"

#include "seqcmp/error.hpp"

#include <algorithm>

namespace seqcmp {

std::optional<std::size_t> firstOccurrence(const std::vector<EventType>& events, const EventType& e) {
    auto it = std::find(events.begin(), events.end(), e);
    if (it == events.end())
        return std::nullopt;
    return static_cast<std::size_t>(it - events.begin());
}

std::optional<std::size_t> firstOccurrence(const Sequence& s, const EventType& e) {
    for (std::size_t i = 0; i < s.size(); ++i)
        if (s.type(i) == e)
            return i;
    return std::nullopt;
}

AlignmentView makeAlignmentView(std::string patternId, std::vector<EventType> keyEvents,
                                const std::vector<UnitRef>& units, const Dataset& source) {
    AlignmentView v;
    v.patternId = std::move(patternId);
    v.keyEvents = std::move(keyEvents);
    v.rows.reserve(units.size());
    for (const auto& u : units) {
        auto i = source.indexOf(u.sequenceId);
        if (!i)
            throw ConsistencyError("sequence '" + u.sequenceId + "' is not in the source dataset");
        v.rows.push_back({u.sequenceId, u.set, source[*i].types(), 0});
    }
    return v;
}

AlignmentView alignByEvent(AlignmentView view, const std::optional<EventType>& e) {
    view.alignedOn = e;
    if (!e) {
        for (auto& r : view.rows)
            r.offset = 0;
        return view;
    }
    if (std::find(view.keyEvents.begin(), view.keyEvents.end(), *e) == view.keyEvents.end())
        throw ArgumentError("'" + *e + "' is not a key event of pattern " + view.patternId);

    std::vector<std::size_t> first;
    first.reserve(view.rows.size());
    for (const auto& r : view.rows) {
        auto i = firstOccurrence(r.events, *e);
        if (!i)
            throw ConsistencyError("sequence '" + r.sequenceId + "' does not contain key event '" + *e + "'");
        first.push_back(*i);
    }
    const std::size_t baseline = first.empty() ? 0 : *std::max_element(first.begin(), first.end());
    for (std::size_t k = 0; k < view.rows.size(); ++k)
        view.rows[k].offset = baseline - first[k];
    return view;
}

std::vector<std::optional<std::size_t>> keyEventHighlight(const AlignmentView& view, const EventType& e) {
    std::vector<std::optional<std::size_t>> out;
    out.reserve(view.rows.size());
    for (const auto& r : view.rows)
        out.push_back(firstOccurrence(r.events, e));
    return out;
}

} // namespace seqcmp
