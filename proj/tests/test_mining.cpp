#include "seqcmp/error.hpp"
#include "seqcmp/mining.hpp"

#include "support/generators.hpp"

#include <doctest.h>

#include <map>

using namespace seqcmp;
using namespace seqcmp::testing;

namespace {

using Events = std::vector<EventType>;

MiningConfig config(double pct, MiningMode mode = MiningMode::Maximal, std::size_t maxLen = 8) {
    MiningConfig c;
    c.minSupportPct = pct;
    c.mode = mode;
    c.maxPatternLength = maxLen;
    return c;
}

std::vector<Events> eventsOf(const std::vector<Pattern>& ps) {
    std::vector<Events> out;
    for (const auto& p : ps)
        out.push_back(p.events);
    return out;
}

bool contains(const Events& big, const Events& small) { return isSubsequence(small, big); }

} // namespace

TEST_CASE("isSubsequence") {
    const Events s{"a", "x", "b", "y", "c"};
    CHECK(isSubsequence(Events{"a", "b", "c"}, s));
    CHECK_FALSE(isSubsequence(Events{"c", "a"}, s));
    CHECK(isSubsequence(Events{}, s));
    CHECK_FALSE(isSubsequence(Events{"a", "a"}, s));
    CHECK(isSubsequence(Events{"a", "a"}, Events{"a", "b", "a"}));
}

TEST_CASE("minSupportCount rounds up") {
    CHECK(minSupportCount(3, 60) == 2);
    CHECK(minSupportCount(4, 25) == 1);
    CHECK(minSupportCount(4, 50) == 2);
    CHECK(minSupportCount(3, 100) == 3);
    CHECK(minSupportCount(7, 1) == 1);
    // 100*c/n >= pct must not be defeated by binary rounding
    CHECK(minSupportCount(10, 30) == 3);
    CHECK(minSupportCount(3, 100.0 / 3.0) == 1);
}

TEST_CASE("maximal mining on a small dataset") {
    const Dataset d({seq("1", {"a", "b"}), seq("2", {"a", "b"}), seq("3", {"a", "c"})});
    const auto ps = mine(d, config(60));
    REQUIRE(ps.size() == 1);
    CHECK(ps[0].events == Events{"a", "b"});
    CHECK(ps[0].supportPct == doctest::Approx(200.0 / 3.0));
    CHECK(ps[0].supportIds == std::vector<SequenceId>{"1", "2"});
}

TEST_CASE("frequent mining includes sub-patterns") {
    const Dataset d({seq("1", {"a", "b"}), seq("2", {"a", "b"}), seq("3", {"a", "c"})});
    const auto ps = mine(d, config(60, MiningMode::Frequent));
    CHECK(eventsOf(ps) == std::vector<Events>{{"a"}, {"a", "b"}, {"b"}});
}

TEST_CASE("identical single-event sequences") {
    const Dataset d({seq("1", {"x"}), seq("2", {"x"}), seq("3", {"x"})});
    const auto ps = mine(d, config(100));
    REQUIRE(ps.size() == 1);
    CHECK(ps[0].events == Events{"x"});
    CHECK(ps[0].supportPct == 100.0);
}

TEST_CASE("disjoint alphabets at full support give nothing") {
    const Dataset d({seq("1", {"a", "b"}), seq("2", {"c", "d"})});
    CHECK(mine(d, config(100)).empty());
}

TEST_CASE("maxPatternLength caps results") {
    const Dataset d({seq("1", {"a", "b", "c"}), seq("2", {"a", "b", "c"})});
    CHECK(eventsOf(mine(d, config(100, MiningMode::Maximal, 2))) == std::vector<Events>{{"a", "b"}, {"a", "c"}, {"b", "c"}});
    CHECK(eventsOf(bruteForceMine(d, config(100))) == std::vector<Events>{{"a", "b", "c"}});
}

TEST_CASE("repeated events are counted once per sequence") {
    const Dataset d({seq("1", {"a", "a", "a"}), seq("2", {"a"})});
    const auto ps = mine(d, config(50, MiningMode::Frequent));
    REQUIRE(ps.size() == 3);
    CHECK(ps[0].events == Events{"a"});
    CHECK(ps[0].supportCount() == 2);
    CHECK(ps[2].events == Events{"a", "a", "a"});
}

TEST_CASE("argument errors") {
    const Dataset d({seq("1", {"a"})});
    CHECK_THROWS_AS(mine(d, config(0)), ArgumentError);
    CHECK_THROWS_AS(mine(d, config(101)), ArgumentError);
    CHECK_THROWS_AS(mine(d, config(50, MiningMode::Maximal, 0)), ArgumentError);
    CHECK_THROWS_AS(mine(Dataset{}, config(50)), ArgumentError);
}

TEST_CASE("brute-force miner refuses large inputs") {
    std::vector<Sequence> many;
    for (int i = 0; i < 31; ++i)
        many.push_back(seq("s" + std::to_string(i), {"a"}));
    CHECK_THROWS_AS(bruteForceMine(Dataset(many), config(50)), SizeError);
    CHECK_THROWS_AS(bruteForceMine(Dataset({seq("1", {"a", "b", "c", "d", "e", "f", "g"})}), config(50)), SizeError);
    CHECK_THROWS_AS(
        bruteForceMine(Dataset({seq("1", {"a", "b", "a", "b", "a", "b", "a", "b", "a", "b", "a"})}), config(50)),
        SizeError);
}

TEST_CASE("sortPatterns orders by support then events") {
    std::vector<Pattern> ps(3);
    ps[0].events = {"b"};
    ps[0].supportIds = {"1"};
    ps[1].events = {"c"};
    ps[1].supportIds = {"1", "2"};
    ps[2].events = {"a"};
    ps[2].supportIds = {"1"};
    sortPatterns(ps);
    CHECK(eventsOf(ps) == std::vector<Events>{{"c"}, {"a"}, {"b"}});
}

TEST_CASE("mined patterns equal the brute-force enumeration") {
    std::mt19937_64 rng(101);
    for (int trial = 0; trial < 60; ++trial) {
        const auto d = randomDataset(rng, 15, 4, 7);
        for (double pct : {20.0, 50.0})
            for (auto mode : {MiningMode::Maximal, MiningMode::Frequent}) {
                const auto cfg = config(pct, mode);
                CHECK(mine(d, cfg) == bruteForceMine(d, cfg));
            }
    }
}

TEST_CASE("frequent patterns are anti-monotone and exactly supported") {
    std::mt19937_64 rng(102);
    for (int trial = 0; trial < 30; ++trial) {
        const auto d = randomDataset(rng, 20, 4, 8);
        const auto ps = mine(d, config(25, MiningMode::Frequent));
        std::map<Events, std::size_t> support;
        for (const auto& p : ps)
            support[p.events] = p.supportCount();
        for (const auto& p : ps) {
            std::vector<SequenceId> expected;
            for (const auto& s : d.sequences())
                if (isSubsequence(p.events, s))
                    expected.push_back(s.id);
            std::sort(expected.begin(), expected.end());
            CHECK(p.supportIds == expected);
            CHECK(p.supportPct == doctest::Approx(100.0 * static_cast<double>(expected.size()) /
                                                  static_cast<double>(d.size())));
            for (std::size_t drop = 0; p.events.size() > 1 && drop < p.events.size(); ++drop) {
                Events sub = p.events;
                sub.erase(sub.begin() + static_cast<std::ptrdiff_t>(drop));
                REQUIRE(support.contains(sub));
                CHECK(support[sub] >= p.supportCount());
            }
        }
    }
}

TEST_CASE("maximal patterns are the maximal frequent ones") {
    std::mt19937_64 rng(103);
    for (int trial = 0; trial < 30; ++trial) {
        const auto d = randomDataset(rng, 20, 4, 8);
        const auto frequent = mine(d, config(30, MiningMode::Frequent));
        const auto maximal = mine(d, config(30, MiningMode::Maximal));
        for (const auto& m : maximal) {
            CHECK(std::find(frequent.begin(), frequent.end(), m) != frequent.end());
            for (const auto& other : maximal)
                if (other.events != m.events)
                    CHECK_FALSE(contains(other.events, m.events));
        }
        for (const auto& f : frequent)
            CHECK(std::any_of(maximal.begin(), maximal.end(), [&](const Pattern& m) { return contains(m.events, f.events); }));
    }
}

TEST_CASE("lowering the threshold never loses frequent patterns") {
    std::mt19937_64 rng(104);
    for (int trial = 0; trial < 20; ++trial) {
        const auto d = randomDataset(rng, 20, 4, 6);
        const auto high = eventsOf(mine(d, config(50, MiningMode::Frequent)));
        const auto low = eventsOf(mine(d, config(25, MiningMode::Frequent)));
        for (const auto& e : high)
            CHECK(std::find(low.begin(), low.end(), e) != low.end());
    }
}

TEST_CASE("tagSupport counts supporters per set") {
    Pattern p;
    p.events = {"a"};
    p.supportIds = {"1", "2", "3"};
    Selection sel;
    sel.setA = {"1", "2"};
    sel.setB = {"2", "3"};
    const auto tagged = tagSupport({p}, sel);
    CHECK(tagged[0].countA == 2);
    CHECK(tagged[0].countB == 2);

    sel.setB = {"3"};
    sel.setA = {"1"};
    CHECK_THROWS_AS(tagSupport({p}, sel), ConsistencyError);
}

TEST_CASE("mineSelection mines the union of both sets") {
    const Dataset d({seq("1", {"a", "b"}), seq("2", {"a", "b"}), seq("3", {"a", "c"}), seq("4", {"z"})});
    Selection sel;
    sel.setA = {"1", "2"};
    sel.setB = {"3"};
    const auto ps = mineSelection(d, sel, config(60));
    REQUIRE(ps.size() == 1);
    CHECK(ps[0].events == Events{"a", "b"});
    CHECK(ps[0].countA == 2);
    CHECK(ps[0].countB == 0);
}

TEST_CASE("mining mode names") {
    CHECK((parseMiningMode("maximal") == MiningMode::Maximal));
    CHECK((parseMiningMode(toString(MiningMode::Frequent)) == MiningMode::Frequent));
    CHECK_FALSE(parseMiningMode("closed").has_value());
}
