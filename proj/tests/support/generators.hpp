#pragma once

#include "seqcmp/dataset.hpp"
#include "seqcmp/layout.hpp"

#include <random>
#include <string>
#include <vector>

namespace seqcmp::testing {

inline Sequence seq(std::string id, std::initializer_list<const char*> types) {
    Sequence s{std::move(id), {}};
    for (const char* t : types)
        s.events.push_back(Event{t, std::nullopt, {}});
    return s;
}

inline Sequence seq(std::string id, const std::vector<std::string>& types) {
    Sequence s{std::move(id), {}};
    for (const auto& t : types)
        s.events.push_back(Event{t, std::nullopt, {}});
    return s;
}

/// The four-sequence stand-in used throughout: s1=[a,b,c] s2=[a,b,d] s3=[a,c] s4=[b,c].
inline Dataset standIn() {
    return Dataset({seq("s1", {"a", "b", "c"}), seq("s2", {"a", "b", "d"}), seq("s3", {"a", "c"}),
                    seq("s4", {"b", "c"})});
}

inline Dataset randomDataset(std::mt19937_64& rng, std::size_t maxSequences, std::size_t alphabet,
                             std::size_t maxLength, std::size_t minSequences = 1) {
    std::uniform_int_distribution<std::size_t> count(minSequences, maxSequences);
    std::uniform_int_distribution<std::size_t> length(1, maxLength);
    std::uniform_int_distribution<std::size_t> symbol(0, alphabet - 1);
    std::vector<Sequence> out;
    const std::size_t n = count(rng);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::string> types;
        const std::size_t len = length(rng);
        for (std::size_t k = 0; k < len; ++k)
            types.push_back(std::string(1, static_cast<char>('a' + symbol(rng))));
        out.push_back(seq("s" + std::to_string(i), types));
    }
    return Dataset(std::move(out));
}

/// Pattern-like layout items with random events and unit counts.
inline std::vector<LayoutItem> randomItems(std::mt19937_64& rng, std::size_t maxItems, std::size_t maxUnits) {
    std::uniform_int_distribution<std::size_t> count(1, maxItems);
    std::uniform_int_distribution<std::size_t> units(1, maxUnits);
    std::uniform_int_distribution<std::size_t> len(1, 5);
    std::uniform_int_distribution<int> symbol(0, 4);
    std::bernoulli_distribution inA(0.5);
    std::vector<LayoutItem> items;
    const std::size_t n = count(rng);
    for (std::size_t i = 0; i < n; ++i) {
        LayoutItem it;
        it.id = "p" + std::to_string(i);
        const std::size_t l = len(rng);
        for (std::size_t k = 0; k < l; ++k)
            it.events.push_back(std::string(1, static_cast<char>('a' + symbol(rng))));
        const std::size_t u = units(rng);
        for (std::size_t k = 0; k < u; ++k)
            it.units.push_back({"s" + std::to_string(k), inA(rng) ? SetTag::A : SetTag::B});
        items.push_back(std::move(it));
    }
    return items;
}

} // namespace seqcmp::testing
