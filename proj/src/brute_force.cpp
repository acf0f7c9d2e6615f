#include "seqcmp/error.hpp"
#include "seqcmp/mining.hpp"

#include <algorithm>
#include <set>

namespace seqcmp {

namespace {

void collectSubsequences(const std::vector<EventType>& s, std::size_t from, std::size_t maxLen,
                         std::vector<EventType>& current, std::set<std::vector<EventType>>& out) {
    if (!current.empty())
        out.insert(current);
    if (current.size() == maxLen)
        return;
    for (std::size_t i = from; i < s.size(); ++i) {
        current.push_back(s[i]);
        collectSubsequences(s, i + 1, maxLen, current, out);
        current.pop_back();
    }
}

} // namespace

std::vector<Pattern> bruteForceMine(const Dataset& d, const MiningConfig& cfg) {
    cfg.validate();
    if (d.empty())
        throw ArgumentError("cannot mine an empty dataset");
    if (d.size() > 30 || d.alphabet().size() > 6)
        throw SizeError("brute-force miner is limited to 30 sequences over at most 6 event types");
    for (const auto& s : d.sequences())
        if (s.size() > 10)
            throw SizeError("brute-force miner is limited to sequences of length 10");

    std::set<std::vector<EventType>> candidates;
    for (const auto& s : d.sequences()) {
        std::vector<EventType> current;
        collectSubsequences(s.types(), 0, cfg.maxPatternLength, current, candidates);
    }

    std::vector<Pattern> frequent;
    for (const auto& c : candidates) {
        Pattern p;
        p.events = c;
        for (const auto& s : d.sequences())
            if (isSubsequence(c, s))
                p.supportIds.push_back(s.id);
        std::sort(p.supportIds.begin(), p.supportIds.end());
        p.supportPct = 100.0 * static_cast<double>(p.supportIds.size()) / static_cast<double>(d.size());
        if (p.supportPct >= cfg.minSupportPct)
            frequent.push_back(std::move(p));
    }

    std::vector<Pattern> result;
    if (cfg.mode == MiningMode::Frequent) {
        result = std::move(frequent);
    } else {
        for (const auto& p : frequent) {
            const bool dominated = std::any_of(frequent.begin(), frequent.end(), [&](const Pattern& q) {
                return q.events != p.events && isSubsequence(p.events, q.events);
            });
            if (!dominated)
                result.push_back(p);
        }
    }
    sortPatterns(result);
    return result;
}

} // namespace seqcmp
