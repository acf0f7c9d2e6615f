#include "seqcmp/affix.hpp"

#include "seqcmp/error.hpp"

#include <algorithm>
#include <iterator>
#include <sstream>

namespace seqcmp {

namespace {

double meanLength(const Dataset& d, const MemberSet& members) {
    if (members.empty())
        return 0.0;
    std::size_t total = 0;
    for (auto m : members)
        total += d[m].size();
    return static_cast<double>(total) / static_cast<double>(members.size());
}

/// Parent of a display path: drop the element farthest from the anchor end.
Path parentPath(const Path& p, AffixKind kind) {
    if (kind == AffixKind::Prefix)
        return Path(p.begin(), p.end() - 1);
    return Path(p.begin() + 1, p.end());
}

std::string describe(const Path& p) {
    std::string out = "[";
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i)
            out += ",";
        out += p[i];
    }
    return out + "]";
}

} // namespace

AffixTree buildAffixTree(std::shared_ptr<const Dataset> d, AffixKind kind, std::size_t maxDepth) {
    if (!d)
        throw ArgumentError("dataset is null");
    if (maxDepth < 1)
        throw ArgumentError("maxDepth must be at least 1");
    AffixTree t;
    t.kind_ = kind;
    t.maxDepth_ = maxDepth;
    t.dataset_ = std::move(d);
    t.nodes_.emplace_back();

    const Dataset& data = *t.dataset_;
    for (std::uint32_t i = 0; i < data.size(); ++i) {
        const auto& seq = data[i];
        t.nodes_[0].members.push_back(i);
        NodeId cur = 0;
        const std::size_t depth = std::min(seq.size(), maxDepth);
        for (std::size_t k = 0; k < depth; ++k) {
            const auto& label = kind == AffixKind::Prefix ? seq.type(k) : seq.type(seq.size() - 1 - k);
            NodeId next = kNoNode;
            for (NodeId c : t.nodes_[cur].children)
                if (t.nodes_[c].label == label) {
                    next = c;
                    break;
                }
            if (next == kNoNode) {
                next = t.nodes_.size();
                AffixNode n;
                n.label = label;
                n.depth = k + 1;
                n.parent = cur;
                t.nodes_.push_back(std::move(n));
                t.nodes_[cur].children.push_back(next);
            }
            t.nodes_[next].members.push_back(i);
            cur = next;
        }
    }
    for (auto& n : t.nodes_)
        n.avgLength = meanLength(data, n.members);
    return t;
}

AffixTree buildPrefixTree(std::shared_ptr<const Dataset> d, std::size_t maxDepth) {
    return buildAffixTree(std::move(d), AffixKind::Prefix, maxDepth);
}

AffixTree buildSuffixTree(std::shared_ptr<const Dataset> d, std::size_t maxDepth) {
    return buildAffixTree(std::move(d), AffixKind::Suffix, maxDepth);
}

std::optional<NodeId> AffixTree::find(const Path& path) const {
    NodeId cur = root();
    for (std::size_t k = 0; k < path.size(); ++k) {
        const auto& label = kind_ == AffixKind::Prefix ? path[k] : path[path.size() - 1 - k];
        NodeId next = kNoNode;
        for (NodeId c : nodes_[cur].children)
            if (nodes_[c].label == label) {
                next = c;
                break;
            }
        if (next == kNoNode)
            return std::nullopt;
        cur = next;
    }
    return cur;
}

Path AffixTree::pathOf(NodeId id) const {
    Path p;
    for (NodeId cur = id; cur != root(); cur = nodes_[cur].parent)
        p.push_back(nodes_[cur].label);
    if (kind_ == AffixKind::Prefix)
        std::reverse(p.begin(), p.end());
    return p;
}

MemberSet AffixTree::terminating(NodeId id) const {
    const auto& n = nodes_[id];
    MemberSet out;
    if (n.depth == 0)
        return out;
    for (auto m : n.members)
        if ((*dataset_)[m].size() == n.depth)
            out.push_back(m);
    return out;
}

double AffixTree::metric(NodeId id, Metric m) const {
    const auto& n = nodes_[id];
    return m == Metric::Count ? static_cast<double>(n.count()) : n.avgLength;
}

bool AffixTree::covers(const Path& ancestor, const Path& descendant) const {
    if (ancestor.size() > descendant.size())
        return false;
    if (kind_ == AffixKind::Prefix)
        return std::equal(ancestor.begin(), ancestor.end(), descendant.begin());
    return std::equal(ancestor.rbegin(), ancestor.rend(), descendant.rbegin());
}

AffixTree sortSiblings(const AffixTree& tree, Metric metric, SortOrder order) {
    AffixTree out = tree;
    for (auto& n : out.nodes_) {
        auto& ch = n.children;
        if (order == SortOrder::None) {
            // node ids are assigned in first-touch order
            std::sort(ch.begin(), ch.end());
            continue;
        }
        std::stable_sort(ch.begin(), ch.end(), [&](NodeId a, NodeId b) {
            const double va = out.metric(a, metric);
            const double vb = out.metric(b, metric);
            if (va != vb)
                return order == SortOrder::Ascending ? va < vb : va > vb;
            return out.nodes_[a].label < out.nodes_[b].label;
        });
    }
    return out;
}

std::vector<FrontierEntry> visibleFrontier(const AffixTree& tree, const std::set<Path>& expanded) {
    std::set<NodeId> open{tree.root()};
    for (const auto& p : expanded) {
        auto id = tree.find(p);
        if (!id)
            throw StateError("path " + describe(p) + " is not in the tree");
        if (!p.empty() && !expanded.contains(parentPath(p, tree.kind())))
            throw StateError("parent of " + describe(p) + " is not expanded");
        open.insert(*id);
    }

    std::vector<FrontierEntry> out;
    const Dataset& d = tree.dataset();
    auto emit = [&](NodeId id, bool residual, MemberSet members) {
        FrontierEntry e;
        e.node = id;
        e.path = tree.pathOf(id);
        e.residual = residual;
        e.avgLength = meanLength(d, members);
        e.members = std::move(members);
        out.push_back(std::move(e));
    };
    auto visit = [&](auto&& self, NodeId id) -> void {
        const auto& n = tree.node(id);
        if (!open.contains(id) || n.isLeaf()) {
            if (id != tree.root())
                emit(id, false, n.members);
            return;
        }
        if (auto rest = tree.terminating(id); !rest.empty())
            emit(id, true, std::move(rest));
        for (NodeId c : n.children)
            self(self, c);
    };
    visit(visit, tree.root());
    return out;
}

Grid materializeMatrix(const AffixTree& prefix, const AffixTree& suffix, const MatrixState& state) {
    if (prefix.datasetPtr() != suffix.datasetPtr())
        throw ArgumentError("prefix and suffix trees must share a dataset");
    const AffixTree ps = sortSiblings(prefix, state.sortMetric, state.sortOrder);
    const AffixTree ss = sortSiblings(suffix, state.sortMetric, state.sortOrder);

    Grid g;
    g.dataset = prefix.datasetPtr();
    g.barMetric = state.barMetric;
    g.columns = visibleFrontier(ps, state.expandedPrefix);
    g.rows = visibleFrontier(ss, state.expandedSuffix);

    // Each frontier partitions the dataset, so every sequence lands in exactly one cell.
    const std::size_t n = g.dataset->size();
    std::vector<std::size_t> colOf(n), rowOf(n);
    for (std::size_t c = 0; c < g.columns.size(); ++c)
        for (auto m : g.columns[c].members)
            colOf[m] = c;
    for (std::size_t r = 0; r < g.rows.size(); ++r)
        for (auto m : g.rows[r].members)
            rowOf[m] = r;

    g.cells.assign(g.rows.size(), std::vector<GridCell>(g.columns.size()));
    for (std::uint32_t m = 0; m < n; ++m)
        g.cells[rowOf[m]][colOf[m]].members.push_back(m);

    g.rowMetrics.assign(g.rows.size(), {});
    g.columnMetrics.assign(g.columns.size(), {});
    std::vector<std::size_t> rowEvents(g.rows.size()), colEvents(g.columns.size());
    for (std::size_t r = 0; r < g.rows.size(); ++r) {
        for (std::size_t c = 0; c < g.columns.size(); ++c) {
            auto& cell = g.cells[r][c];
            std::size_t events = 0;
            for (auto m : cell.members)
                events += (*g.dataset)[m].size();
            cell.avgLength = cell.members.empty() ? 0.0 : static_cast<double>(events) / cell.count();
            g.maxCellCount = std::max(g.maxCellCount, cell.count());
            g.rowMetrics[r].count += cell.count();
            g.columnMetrics[c].count += cell.count();
            rowEvents[r] += events;
            colEvents[c] += events;
        }
    }
    for (std::size_t r = 0; r < g.rows.size(); ++r)
        if (g.rowMetrics[r].count)
            g.rowMetrics[r].avgLength = static_cast<double>(rowEvents[r]) / g.rowMetrics[r].count;
    for (std::size_t c = 0; c < g.columns.size(); ++c)
        if (g.columnMetrics[c].count)
            g.columnMetrics[c].avgLength = static_cast<double>(colEvents[c]) / g.columnMetrics[c].count;
    return g;
}

namespace {

Transition expandIn(std::set<Path> MatrixState::*field, const MatrixState& s, const AffixTree& tree,
                    const Path& path) {
    auto id = tree.find(path);
    if (!id)
        throw StateError("path " + describe(path) + " is not in the tree");
    const auto& expanded = s.*field;
    if (!path.empty() && !expanded.contains(parentPath(path, tree.kind())))
        throw StateError("parent of " + describe(path) + " is not expanded");
    Transition t{s, false};
    if (tree.node(*id).isLeaf() || expanded.contains(path)) {
        t.noop = true;
        return t;
    }
    (t.state.*field).insert(path);
    return t;
}

Transition collapseIn(std::set<Path> MatrixState::*field, AffixKind kind, const MatrixState& s, const Path& path) {
    Transition t{s, false};
    auto& expanded = t.state.*field;
    if (!expanded.contains(path)) {
        t.noop = true;
        return t;
    }
    std::erase_if(expanded, [&](const Path& p) {
        if (p.size() < path.size())
            return false;
        return kind == AffixKind::Prefix ? std::equal(path.begin(), path.end(), p.begin())
                                         : std::equal(path.rbegin(), path.rend(), p.rbegin());
    });
    expanded.insert(Path{});
    t.noop = (t.state == s);
    return t;
}

} // namespace

Transition expandColumn(const MatrixState& s, const AffixTree& prefix, const Path& path) {
    return expandIn(&MatrixState::expandedPrefix, s, prefix, path);
}

Transition expandRow(const MatrixState& s, const AffixTree& suffix, const Path& path) {
    return expandIn(&MatrixState::expandedSuffix, s, suffix, path);
}

Transition expandCell(const MatrixState& s, const AffixTree& prefix, const AffixTree& suffix, const Path& rowPath,
                      const Path& columnPath) {
    // Validate both before mutating either, so a bad row path leaves the state untouched.
    auto col = expandColumn(s, prefix, columnPath);
    auto row = expandRow(col.state, suffix, rowPath);
    return {row.state, col.noop && row.noop};
}

Transition collapseColumn(const MatrixState& s, const Path& path) {
    return collapseIn(&MatrixState::expandedPrefix, AffixKind::Prefix, s, path);
}

Transition collapseRow(const MatrixState& s, const Path& path) {
    return collapseIn(&MatrixState::expandedSuffix, AffixKind::Suffix, s, path);
}

Transition expandAllNextLevel(const MatrixState& s, const AffixTree& prefix, const AffixTree& suffix) {
    Transition t{s, false};
    for (const auto& e : visibleFrontier(prefix, s.expandedPrefix))
        if (!e.residual && !prefix.node(e.node).isLeaf())
            t.state.expandedPrefix.insert(e.path);
    for (const auto& e : visibleFrontier(suffix, s.expandedSuffix))
        if (!e.residual && !suffix.node(e.node).isLeaf())
            t.state.expandedSuffix.insert(e.path);
    t.noop = (t.state == s);
    return t;
}

MatrixState collapseAll(const MatrixState& s) {
    MatrixState out = s;
    out.expandedPrefix = {Path{}};
    out.expandedSuffix = {Path{}};
    return out;
}

std::set<SequenceId> resolvePicks(const Grid& grid, std::span<const Pick> picks) {
    std::set<SequenceId> ids;
    auto addMembers = [&](const MemberSet& ms) {
        for (auto m : ms)
            ids.insert((*grid.dataset)[m].id);
    };
    for (const auto& p : picks) {
        const bool needRow = p.mode != PickMode::Column;
        const bool needCol = p.mode != PickMode::Row;
        if ((needRow && p.row >= grid.rows.size()) || (needCol && p.column >= grid.columns.size()))
            throw ArgumentError("pick coordinates outside the grid");
        switch (p.mode) {
        case PickMode::Cell:
            addMembers(grid.cells[p.row][p.column].members);
            break;
        case PickMode::Row:
            addMembers(grid.rows[p.row].members);
            break;
        case PickMode::Column:
            addMembers(grid.columns[p.column].members);
            break;
        }
    }
    return ids;
}

namespace {

std::string describePicks(const Grid& grid, std::span<const Pick> picks) {
    std::ostringstream os;
    for (std::size_t i = 0; i < picks.size(); ++i) {
        const auto& p = picks[i];
        if (i)
            os << " + ";
        os << toString(p.mode) << '(';
        if (p.mode != PickMode::Column)
            os << "row " << describe(grid.rows[p.row].path) << (grid.rows[p.row].residual ? "*" : "");
        if (p.mode == PickMode::Cell)
            os << ", ";
        if (p.mode != PickMode::Row)
            os << "column " << describe(grid.columns[p.column].path) << (grid.columns[p.column].residual ? "*" : "");
        os << ')';
    }
    return os.str();
}

} // namespace

SelectionResult selectSets(const Grid& grid, std::span<const Pick> picksA, std::span<const Pick> picksB) {
    SelectionResult r;
    r.selection.setA = resolvePicks(grid, picksA);
    r.selection.setB = resolvePicks(grid, picksB);
    std::set_intersection(r.selection.setA.begin(), r.selection.setA.end(), r.selection.setB.begin(),
                          r.selection.setB.end(), std::back_inserter(r.overlap));
    if (r.selection.setA.empty())
        r.warnings.push_back("set A is empty");
    if (r.selection.setB.empty())
        r.warnings.push_back("set B is empty");
    std::string prov = "A: " + describePicks(grid, picksA) + "; B: " + describePicks(grid, picksB);
    if (!r.overlap.empty())
        prov += "; overlap: " + std::to_string(r.overlap.size()) + " shared";
    r.selection.provenance = std::move(prov);
    return r;
}

std::string toString(Metric m) { return m == Metric::Count ? "count" : "avgLength"; }

std::string toString(SortOrder o) {
    switch (o) {
    case SortOrder::Ascending:
        return "ascending";
    case SortOrder::Descending:
        return "descending";
    default:
        return "none";
    }
}

std::string toString(PickMode m) {
    switch (m) {
    case PickMode::Row:
        return "row";
    case PickMode::Column:
        return "column";
    default:
        return "cell";
    }
}

std::optional<Metric> parseMetric(std::string_view s) {
    if (s == "count")
        return Metric::Count;
    if (s == "avgLength")
        return Metric::AvgLength;
    return std::nullopt;
}

std::optional<SortOrder> parseSortOrder(std::string_view s) {
    if (s == "none")
        return SortOrder::None;
    if (s == "ascending" || s == "asc")
        return SortOrder::Ascending;
    if (s == "descending" || s == "desc")
        return SortOrder::Descending;
    return std::nullopt;
}

std::optional<PickMode> parsePickMode(std::string_view s) {
    if (s == "cell")
        return PickMode::Cell;
    if (s == "row")
        return PickMode::Row;
    if (s == "column")
        return PickMode::Column;
    return std::nullopt;
}

} // namespace seqcmp
