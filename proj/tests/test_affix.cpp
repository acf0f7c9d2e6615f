#include "seqcmp/affix.hpp"
#include "seqcmp/error.hpp"

#include "support/generators.hpp"
#include "support/oracles.hpp"

#include <doctest.h>

#include <numeric>

using namespace seqcmp;
using namespace seqcmp::testing;

namespace {

std::shared_ptr<const Dataset> share(Dataset d) { return std::make_shared<const Dataset>(std::move(d)); }

std::vector<Path> paths(const std::vector<FrontierEntry>& f) {
    std::vector<Path> out;
    for (const auto& e : f)
        out.push_back(e.path);
    return out;
}

std::size_t countOf(const AffixTree& t, const Path& p) { return t.node(*t.find(p)).count(); }

std::vector<SequenceId> ids(const Dataset& d, const MemberSet& m) {
    std::vector<SequenceId> out;
    for (auto i : m)
        out.push_back(d[i].id);
    return out;
}

} // namespace

TEST_CASE("prefix tree groups sequences by their first events") {
    const auto d = share(standIn());
    const auto t = buildPrefixTree(d);
    const auto& root = t.node(t.root());
    CHECK(root.count() == 4);
    REQUIRE(root.children.size() == 2);
    CHECK(t.node(root.children[0]).label == "a");
    CHECK(t.node(root.children[0]).count() == 3);
    CHECK(t.node(root.children[1]).label == "b");
    CHECK(t.node(root.children[1]).count() == 1);
    CHECK(countOf(t, {"a", "b"}) == 2);
    CHECK(t.node(*t.find({"a", "b"})).avgLength == 3.0);
    CHECK(t.node(*t.find({"a"})).avgLength == doctest::Approx(8.0 / 3.0));
    CHECK_FALSE(t.find({"c"}).has_value());
}

TEST_CASE("suffix tree groups sequences by their last events, paths end-aligned") {
    const auto d = share(standIn());
    const auto t = buildSuffixTree(d);
    const auto& root = t.node(t.root());
    REQUIRE(root.children.size() == 2);
    CHECK(t.node(root.children[0]).label == "c");
    CHECK(t.node(root.children[0]).count() == 3);
    CHECK(t.node(root.children[1]).label == "d");
    CHECK(t.node(root.children[1]).count() == 1);
    // [b,c] = sequences ending "...b,c": s1 and s4
    CHECK(countOf(t, {"b", "c"}) == 2);
    CHECK(t.pathOf(*t.find({"a", "b", "c"})) == Path{"a", "b", "c"});
}

TEST_CASE("degenerate trees") {
    const auto single = buildPrefixTree(share(Dataset({seq("only", {"x"})})));
    REQUIRE(single.node(0).children.size() == 1);
    CHECK(single.node(single.node(0).children[0]).label == "x");
    CHECK(single.node(single.node(0).children[0]).count() == 1);

    const auto empty = buildSuffixTree(share(Dataset{}));
    CHECK(empty.nodeCount() == 1);
    CHECK(empty.node(0).count() == 0);
    CHECK(visibleFrontier(empty, {Path{}}).empty());
}

TEST_CASE("maxDepth truncates the tree") {
    const auto t = buildPrefixTree(share(Dataset({seq("1", {"a", "b", "c", "d"})})), 2);
    CHECK(t.find({"a", "b"}).has_value());
    CHECK_FALSE(t.find({"a", "b", "c"}).has_value());
    CHECK(t.node(*t.find({"a", "b"})).isLeaf());
}

TEST_CASE("suffix tree equals prefix tree of reversed sequences") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 30; ++trial) {
        const auto d = randomDataset(rng, 20, 3, 7);
        std::vector<Sequence> reversed(d.sequences().begin(), d.sequences().end());
        for (auto& s : reversed)
            std::reverse(s.events.begin(), s.events.end());
        const auto st = buildSuffixTree(share(d));
        const auto pt = buildPrefixTree(share(Dataset(reversed)));
        REQUIRE(st.nodeCount() == pt.nodeCount());
        for (NodeId id = 0; id < st.nodeCount(); ++id) {
            Path p = st.pathOf(id);
            std::reverse(p.begin(), p.end());
            auto other = pt.find(p);
            REQUIRE(other.has_value());
            CHECK(pt.node(*other).members == st.node(id).members);
        }
    }
}

TEST_CASE("tree invariants: nesting, disjoint children, sub-additive counts") {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 30; ++trial) {
        const auto t = buildPrefixTree(share(randomDataset(rng, 25, 4, 8)), 4);
        for (NodeId id = 0; id < t.nodeCount(); ++id) {
            const auto& n = t.node(id);
            std::size_t childSum = 0;
            MemberSet seen;
            for (NodeId c : n.children) {
                const auto& ch = t.node(c);
                CHECK(ch.depth == n.depth + 1);
                CHECK(std::includes(n.members.begin(), n.members.end(), ch.members.begin(), ch.members.end()));
                MemberSet both;
                std::set_intersection(seen.begin(), seen.end(), ch.members.begin(), ch.members.end(),
                                      std::back_inserter(both));
                CHECK(both.empty());
                seen.insert(seen.end(), ch.members.begin(), ch.members.end());
                std::sort(seen.begin(), seen.end());
                childSum += ch.count();
            }
            CHECK(childSum <= n.count());
            CHECK(t.pathOf(id).size() == n.depth);
        }
    }
}

TEST_CASE("visibleFrontier") {
    const auto d = share(standIn());
    const auto t = buildPrefixTree(d);
    SUBCASE("root only gives level one") { CHECK(paths(visibleFrontier(t, {Path{}})) == std::vector<Path>{{"a"}, {"b"}}); }
    SUBCASE("expanding [a]") {
        CHECK(paths(visibleFrontier(t, {Path{}, Path{"a"}})) == std::vector<Path>{{"a", "b"}, {"a", "c"}, {"b"}});
    }
    SUBCASE("unknown path or non-closed set is a state error") {
        CHECK_THROWS_AS(visibleFrontier(t, {Path{}, Path{"z"}}), StateError);
        CHECK_THROWS_AS(visibleFrontier(t, {Path{}, Path{"a", "b"}}), StateError);
    }
}

TEST_CASE("residual frontier entry for sequences ending at an expanded node") {
    auto base = standIn();
    std::vector<Sequence> all(base.sequences().begin(), base.sequences().end());
    all.push_back(seq("s5", {"a"}));
    const auto d = share(Dataset(all));
    const auto t = buildPrefixTree(d);
    const auto f = visibleFrontier(t, {Path{}, Path{"a"}});
    REQUIRE(f.size() == 4);
    CHECK(f[0].path == Path{"a"});
    CHECK(f[0].residual);
    CHECK(ids(*d, f[0].members) == std::vector<SequenceId>{"s5"});
    const std::size_t total = std::accumulate(f.begin(), f.end(), std::size_t{0},
                                              [](std::size_t acc, const FrontierEntry& e) { return acc + e.count(); });
    CHECK(total == 5);
}

TEST_CASE("materializeMatrix on the stand-in dataset") {
    const auto d = share(standIn());
    const auto g = materializeMatrix(buildPrefixTree(d), buildSuffixTree(d), MatrixState{});
    REQUIRE(g.columns.size() == 2);
    REQUIRE(g.rows.size() == 2);
    CHECK(g.columns[0].path == Path{"a"});
    CHECK(g.rows[0].path == Path{"c"});
    CHECK(ids(*d, g.cells[0][0].members) == std::vector<SequenceId>{"s1", "s3"});
    CHECK(g.cells[1][1].count() == 0); // (d-row, b-col)
    CHECK(g.rowMetrics[0].count == 3);
    CHECK(g.rowMetrics[0].avgLength == doctest::Approx(7.0 / 3.0));
    CHECK(g.columnMetrics[1].count == 1);
    CHECK(g.maxCellCount == 2);
}

TEST_CASE("a single-event sequence sits in the overlapping cell") {
    const auto d = share(Dataset({seq("x", {"a"})}));
    const auto g = materializeMatrix(buildPrefixTree(d), buildSuffixTree(d), MatrixState{});
    REQUIRE(g.cells.size() == 1);
    CHECK(g.cells[0][0].count() == 1);
}

TEST_CASE("expand and collapse transitions") {
    const auto d = share(standIn());
    const auto p = buildPrefixTree(d);
    const auto s = buildSuffixTree(d);
    const MatrixState init;

    SUBCASE("expandCell adds both paths") {
        const auto t = expandCell(init, p, s, {"c"}, {"a"});
        CHECK_FALSE(t.noop);
        CHECK(t.state.expandedPrefix.contains(Path{"a"}));
        CHECK(t.state.expandedSuffix.contains(Path{"c"}));
    }
    SUBCASE("collapse removes descendants") {
        auto st = expandColumn(init, p, {"a"}).state;
        st = expandColumn(st, p, {"a", "b"}).state;
        const auto t = collapseColumn(st, {"a"});
        CHECK(t.state.expandedPrefix == std::set<Path>{Path{}});
    }
    SUBCASE("leaf expansion is a flagged no-op") {
        auto st = expandColumn(init, p, {"a"}).state;
        st = expandColumn(st, p, {"a", "b"}).state;
        const auto t = expandColumn(st, p, {"a", "b", "c"});
        CHECK(t.noop);
        CHECK(t.state == st);
    }
    SUBCASE("missing node or unexpanded parent is a state error") {
        CHECK_THROWS_AS(expandColumn(init, p, {"q"}), StateError);
        CHECK_THROWS_AS(expandColumn(init, p, {"a", "b"}), StateError);
        CHECK_THROWS_AS(expandCell(init, p, s, {"zz"}, {"a"}), StateError);
    }
    SUBCASE("expand then collapse restores the grid") {
        const auto g0 = materializeMatrix(p, s, init);
        const auto st = collapseRow(expandRow(init, s, {"c"}).state, {"c"}).state;
        CHECK(st == init);
        const auto g1 = materializeMatrix(p, s, st);
        CHECK(paths(g1.columns) == paths(g0.columns));
        CHECK(paths(g1.rows) == paths(g0.rows));
    }
    SUBCASE("expandAllNextLevel equals expanding every depth-one node") {
        const auto t = expandAllNextLevel(init, p, s);
        MatrixState manual = init;
        for (NodeId c : p.node(p.root()).children)
            if (!p.node(c).isLeaf())
                manual.expandedPrefix.insert(p.pathOf(c));
        for (NodeId c : s.node(s.root()).children)
            if (!s.node(c).isLeaf())
                manual.expandedSuffix.insert(s.pathOf(c));
        CHECK(t.state == manual);
        CHECK(collapseAll(t.state) == init);
    }
}

TEST_CASE("sortSiblings") {
    SUBCASE("descending count") {
        const auto t = sortSiblings(buildPrefixTree(share(standIn())), Metric::Count, SortOrder::Descending);
        CHECK(t.node(t.node(0).children[0]).label == "a");
        CHECK(t.node(t.node(0).children[1]).label == "b");
    }
    SUBCASE("ties fall back to event type") {
        const auto d = share(Dataset({seq("1", {"y"}), seq("2", {"x"}), seq("3", {"y"}), seq("4", {"x"})}));
        for (auto order : {SortOrder::Ascending, SortOrder::Descending}) {
            const auto t = sortSiblings(buildPrefixTree(d), Metric::Count, order);
            CHECK(t.node(t.node(0).children[0]).label == "x");
        }
        const auto unsorted = buildPrefixTree(d);
        CHECK(unsorted.node(unsorted.node(0).children[0]).label == "y");
        const auto restored = sortSiblings(sortSiblings(unsorted, Metric::Count, SortOrder::Ascending), Metric::Count,
                                           SortOrder::None);
        CHECK(restored.node(restored.node(0).children[0]).label == "y");
    }
    SUBCASE("hierarchy and counts are untouched") {
        std::mt19937_64 rng(8);
        const auto base = buildPrefixTree(share(randomDataset(rng, 30, 4, 6)));
        const auto sorted = sortSiblings(base, Metric::AvgLength, SortOrder::Ascending);
        for (NodeId id = 0; id < base.nodeCount(); ++id) {
            CHECK(sorted.pathOf(id) == base.pathOf(id));
            CHECK(sorted.node(id).members == base.node(id).members);
            auto a = sorted.node(id).children;
            auto b = base.node(id).children;
            std::sort(a.begin(), a.end());
            CHECK(a == b);
            for (std::size_t k = 1; k < sorted.node(id).children.size(); ++k)
                CHECK(sorted.node(sorted.node(id).children[k - 1]).avgLength <=
                      sorted.node(sorted.node(id).children[k]).avgLength);
        }
    }
}

TEST_CASE("selectSets") {
    const auto d = share(standIn());
    const auto g = materializeMatrix(buildPrefixTree(d), buildSuffixTree(d), MatrixState{});
    SUBCASE("cell picks, one of them empty") {
        const Pick a{PickMode::Cell, 0, 0};
        const Pick b{PickMode::Cell, 1, 1};
        const auto r = selectSets(g, std::span(&a, 1), std::span(&b, 1));
        CHECK(r.selection.setA == std::set<SequenceId>{"s1", "s3"});
        CHECK(r.selection.setB.empty());
        CHECK(r.warnings == std::vector<std::string>{"set B is empty"});
    }
    SUBCASE("row pick") {
        const Pick a{PickMode::Row, 0, 0};
        CHECK(resolvePicks(g, std::span(&a, 1)) == std::set<SequenceId>{"s1", "s3", "s4"});
    }
    SUBCASE("column pick") {
        const Pick a{PickMode::Column, 0, 0};
        CHECK(resolvePicks(g, std::span(&a, 1)) == std::set<SequenceId>{"s1", "s2", "s3"});
    }
    SUBCASE("same cell twice flags the overlap") {
        const Pick a{PickMode::Cell, 0, 0};
        const auto r = selectSets(g, std::span(&a, 1), std::span(&a, 1));
        CHECK(r.selection.setA == r.selection.setB);
        CHECK(r.overlap.size() == 2);
        CHECK(r.selection.provenance.find("overlap") != std::string::npos);
    }
    SUBCASE("out-of-range pick") {
        const Pick a{PickMode::Cell, 5, 0};
        CHECK_THROWS_AS(resolvePicks(g, std::span(&a, 1)), ArgumentError);
    }
}

TEST_CASE("random expansion walks conserve counts and match the predicate oracle") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 25; ++trial) {
        const auto d = share(randomDataset(rng, 25, 3, 6));
        const auto p = buildPrefixTree(d);
        const auto s = buildSuffixTree(d);
        MatrixState st;
        for (int step = 0; step < 10; ++step) {
            const auto g = materializeMatrix(p, s, st);
            std::size_t colSum = 0, rowSum = 0;
            for (const auto& c : g.columns)
                colSum += c.count();
            for (const auto& r : g.rows)
                rowSum += r.count();
            CHECK(colSum == d->size());
            CHECK(rowSum == d->size());
            for (std::size_t r = 0; r < g.rows.size(); ++r)
                for (std::size_t c = 0; c < g.columns.size(); ++c) {
                    std::size_t expected = 0;
                    for (const auto& sq : d->sequences())
                        expected += inEntry(sq, g.columns[c], AffixKind::Prefix) &&
                                    inEntry(sq, g.rows[r], AffixKind::Suffix);
                    CHECK(g.cells[r][c].count() == expected);
                }
            std::uniform_int_distribution<std::size_t> pickC(0, g.columns.size() - 1), pickR(0, g.rows.size() - 1);
            const auto& col = g.columns[pickC(rng)];
            const auto& row = g.rows[pickR(rng)];
            switch (rng() % 3) {
            case 0:
                st = expandCell(st, p, s, row.path, col.path).state;
                break;
            case 1:
                st = collapseColumn(st, col.path).state;
                break;
            default:
                st = collapseRow(st, row.path).state;
            }
        }
    }
}
