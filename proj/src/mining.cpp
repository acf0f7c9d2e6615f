#include "seqcmp/mining.hpp"

#include "seqcmp/error.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>

namespace seqcmp {

void MiningConfig::validate() const {
    if (!(minSupportPct > 0.0) || minSupportPct > 100.0)
        throw ArgumentError("minSupportPct must be in (0, 100]");
    if (maxPatternLength < 1)
        throw ArgumentError("maxPatternLength must be at least 1");
}

bool isSubsequence(std::span<const EventType> pattern, std::span<const EventType> s) {
    std::size_t j = 0;
    for (std::size_t i = 0; i < s.size() && j < pattern.size(); ++i)
        if (s[i] == pattern[j])
            ++j;
    return j == pattern.size();
}

bool isSubsequence(std::span<const EventType> pattern, const Sequence& s) {
    std::size_t j = 0;
    for (std::size_t i = 0; i < s.size() && j < pattern.size(); ++i)
        if (s.type(i) == pattern[j])
            ++j;
    return j == pattern.size();
}

std::size_t minSupportCount(std::size_t total, double pct) {
    for (std::size_t c = 1; c <= total; ++c)
        if (100.0 * static_cast<double>(c) / static_cast<double>(total) >= pct)
            return c;
    return total + 1;
}

void sortPatterns(std::vector<Pattern>& patterns) {
    std::sort(patterns.begin(), patterns.end(), [](const Pattern& a, const Pattern& b) {
        if (a.supportCount() != b.supportCount())
            return a.supportCount() > b.supportCount();
        return a.events < b.events;
    });
}

namespace {

/// Vertical representation: every sequence owns a word-aligned run of bits,
/// one bit per position.
class BitLayout {
public:
    explicit BitLayout(const Dataset& d) {
        start_.reserve(d.size());
        std::size_t w = 0;
        for (const auto& s : d.sequences()) {
            start_.push_back(w);
            w += (s.size() + 63) / 64;
        }
        start_.push_back(w);
    }

    std::size_t words() const noexcept { return start_.back(); }
    std::size_t sequences() const noexcept { return start_.size() - 1; }
    std::size_t begin(std::size_t seq) const noexcept { return start_[seq]; }
    std::size_t end(std::size_t seq) const noexcept { return start_[seq + 1]; }

private:
    std::vector<std::size_t> start_;
};

using Bitmap = std::vector<std::uint64_t>;

struct Miner {
    const Dataset& data;
    const MiningConfig& cfg;
    BitLayout layout;
    std::vector<EventType> items;     // sorted alphabet
    std::vector<Bitmap> itemBitmaps;  // per item
    std::vector<std::size_t> cmap;    // items x items: sequences where b follows a
    std::size_t minCount = 0;
    std::vector<std::size_t> frequentItems;
    std::vector<Pattern> out;

    Miner(const Dataset& d, const MiningConfig& c) : data(d), cfg(c), layout(d) {
        items.assign(d.alphabet().begin(), d.alphabet().end());
        std::map<EventType, std::size_t> index;
        for (std::size_t i = 0; i < items.size(); ++i)
            index.emplace(items[i], i);

        const std::size_t A = items.size();
        itemBitmaps.assign(A, Bitmap(layout.words(), 0));
        cmap.assign(A * A, 0);
        std::vector<std::uint32_t> pairs;
        std::vector<char> seen(A);
        for (std::size_t s = 0; s < d.size(); ++s) {
            const auto& seq = d[s];
            pairs.clear();
            std::fill(seen.begin(), seen.end(), 0);
            for (std::size_t p = 0; p < seq.size(); ++p) {
                const std::size_t it = index.at(seq.type(p));
                itemBitmaps[it][layout.begin(s) + p / 64] |= std::uint64_t{1} << (p % 64);
                for (std::size_t a = 0; a < A; ++a)
                    if (seen[a])
                        pairs.push_back(static_cast<std::uint32_t>(a * A + it));
                seen[it] = 1;
            }
            std::sort(pairs.begin(), pairs.end());
            pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
            for (auto code : pairs)
                ++cmap[code];
        }
        minCount = minSupportCount(d.size(), cfg.minSupportPct);
    }

    std::size_t support(const Bitmap& bm) const {
        std::size_t n = 0;
        for (std::size_t s = 0; s < layout.sequences(); ++s)
            for (std::size_t w = layout.begin(s); w < layout.end(s); ++w)
                if (bm[w]) {
                    ++n;
                    break;
                }
        return n;
    }

    /// Sequence extension: positions of `item` strictly after the first
    /// position set in `prefix`, per sequence.
    Bitmap sStep(const Bitmap& prefix, const Bitmap& item) const {
        Bitmap next(prefix.size(), 0);
        for (std::size_t s = 0; s < layout.sequences(); ++s) {
            std::size_t w = layout.begin(s);
            const std::size_t e = layout.end(s);
            while (w < e && prefix[w] == 0)
                ++w;
            if (w == e)
                continue;
            const int bit = std::countr_zero(prefix[w]);
            const std::uint64_t after = bit == 63 ? 0 : ~std::uint64_t{0} << (bit + 1);
            next[w] = item[w] & after;
            for (++w; w < e; ++w)
                next[w] = item[w];
        }
        return next;
    }

    std::vector<SequenceId> supportIds(const Bitmap& bm) const {
        std::vector<SequenceId> ids;
        for (std::size_t s = 0; s < layout.sequences(); ++s)
            for (std::size_t w = layout.begin(s); w < layout.end(s); ++w)
                if (bm[w]) {
                    ids.push_back(data[s].id);
                    break;
                }
        std::sort(ids.begin(), ids.end());
        return ids;
    }

    void emit(const std::vector<std::size_t>& pattern, const Bitmap& bm) {
        Pattern p;
        for (auto i : pattern)
            p.events.push_back(items[i]);
        p.supportIds = supportIds(bm);
        p.supportPct = 100.0 * static_cast<double>(p.supportIds.size()) / static_cast<double>(data.size());

        if (cfg.mode == MiningMode::Maximal) {
            for (const auto& r : out)
                if (isSubsequence(p.events, r.events))
                    return;
            std::erase_if(out, [&](const Pattern& r) { return isSubsequence(r.events, p.events); });
        }
        out.push_back(std::move(p));
    }

    void grow(std::vector<std::size_t>& pattern, const Bitmap& bm) {
        bool extended = false;
        if (pattern.size() < cfg.maxPatternLength) {
            const std::size_t last = pattern.back();
            for (std::size_t b : frequentItems) {
                if (cmap[last * items.size() + b] < minCount)
                    continue;
                Bitmap next = sStep(bm, itemBitmaps[b]);
                if (support(next) < minCount)
                    continue;
                extended = true;
                pattern.push_back(b);
                grow(pattern, next);
                pattern.pop_back();
            }
        }
        if (cfg.mode == MiningMode::Frequent || !extended)
            emit(pattern, bm);
    }

    std::vector<Pattern> run() {
        for (std::size_t i = 0; i < items.size(); ++i)
            if (support(itemBitmaps[i]) >= minCount)
                frequentItems.push_back(i);
        std::vector<std::size_t> pattern;
        for (std::size_t i : frequentItems) {
            pattern.assign(1, i);
            grow(pattern, itemBitmaps[i]);
        }
        sortPatterns(out);
        return std::move(out);
    }
};

} // namespace

std::vector<Pattern> mine(const Dataset& d, const MiningConfig& cfg) {
    cfg.validate();
    if (d.empty())
        throw ArgumentError("cannot mine an empty dataset");
    return Miner(d, cfg).run();
}

std::vector<Pattern> tagSupport(std::vector<Pattern> patterns, const Selection& selection) {
    for (auto& p : patterns) {
        p.countA = p.countB = 0;
        for (const auto& id : p.supportIds) {
            const bool inA = selection.setA.contains(id);
            const bool inB = selection.setB.contains(id);
            if (!inA && !inB)
                throw ConsistencyError("sequence '" + id + "' supports a pattern but is in neither set");
            p.countA += inA;
            p.countB += inB;
        }
    }
    return patterns;
}

std::vector<Pattern> mineSelection(const Dataset& source, const Selection& selection, const MiningConfig& cfg) {
    std::set<SequenceId> joined = selection.setA;
    joined.insert(selection.setB.begin(), selection.setB.end());
    return tagSupport(mine(source.subset(joined), cfg), selection);
}

std::string toString(MiningMode m) { return m == MiningMode::Maximal ? "maximal" : "frequent"; }

std::optional<MiningMode> parseMiningMode(std::string_view s) {
    if (s == "maximal")
        return MiningMode::Maximal;
    if (s == "frequent")
        return MiningMode::Frequent;
    return std::nullopt;
}

} // namespace seqcmp
