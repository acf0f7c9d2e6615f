#pragma once

#include "seqcmp/dataset.hpp"

#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

namespace seqcmp {

enum class AffixKind { Prefix, Suffix };

/// Event types identifying a tree node. Prefix paths read from the first
/// event; suffix paths are end-aligned, so their last element is the final
/// event of the member sequences. The root is the empty path.
using Path = std::vector<EventType>;

/// Sorted, duplicate-free indices into the tree's dataset.
using MemberSet = std::vector<std::uint32_t>;

using NodeId = std::size_t;
inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

inline constexpr std::size_t kDefaultMaxDepth = 10;

enum class Metric { Count, AvgLength };
enum class SortOrder { None, Ascending, Descending };

struct AffixNode {
    EventType label; // empty for the root
    std::size_t depth = 0;
    NodeId parent = kNoNode;
    std::vector<NodeId> children;
    MemberSet members;
    double avgLength = 0.0;

    std::size_t count() const noexcept { return members.size(); }
    bool isLeaf() const noexcept { return children.empty(); }
};

/// A trie grouping sequences by their first (prefix) or last (suffix) k
/// events. Immutable once built; sorting returns a reordered copy.
class AffixTree {
public:
    AffixKind kind() const noexcept { return kind_; }
    std::size_t maxDepth() const noexcept { return maxDepth_; }
    const Dataset& dataset() const noexcept { return *dataset_; }
    std::shared_ptr<const Dataset> datasetPtr() const noexcept { return dataset_; }

    NodeId root() const noexcept { return 0; }
    const AffixNode& node(NodeId id) const { return nodes_[id]; }
    std::size_t nodeCount() const noexcept { return nodes_.size(); }

    std::optional<NodeId> find(const Path& path) const;
    Path pathOf(NodeId id) const;

    /// Members whose sequence ends exactly at this node's depth.
    MemberSet terminating(NodeId id) const;

    double metric(NodeId id, Metric m) const;

    /// True when `descendant` lies at or below `ancestor` (both display paths).
    bool covers(const Path& ancestor, const Path& descendant) const;

    friend AffixTree buildAffixTree(std::shared_ptr<const Dataset> d, AffixKind kind, std::size_t maxDepth);
    friend AffixTree sortSiblings(const AffixTree& tree, Metric metric, SortOrder order);

private:
    AffixKind kind_ = AffixKind::Prefix;
    std::size_t maxDepth_ = kDefaultMaxDepth;
    std::shared_ptr<const Dataset> dataset_;
    std::vector<AffixNode> nodes_;
};

AffixTree buildAffixTree(std::shared_ptr<const Dataset> d, AffixKind kind, std::size_t maxDepth = kDefaultMaxDepth);
AffixTree buildPrefixTree(std::shared_ptr<const Dataset> d, std::size_t maxDepth = kDefaultMaxDepth);
AffixTree buildSuffixTree(std::shared_ptr<const Dataset> d, std::size_t maxDepth = kDefaultMaxDepth);

/// Reorders every sibling list by `metric`; ties fall back to the event type
/// in lexicographic order. SortOrder::None restores first-touch order.
AffixTree sortSiblings(const AffixTree& tree, Metric metric, SortOrder order);

struct LengthFilter {
    std::size_t minLen = kDefaultMinLength;
    std::optional<std::size_t> maxLen;

    bool operator==(const LengthFilter&) const = default;
};

/// Interaction state of the matrix. Both expansion sets always contain the
/// root path and are closed under ancestors.
struct MatrixState {
    std::set<Path> expandedPrefix{Path{}};
    std::set<Path> expandedSuffix{Path{}};
    Metric sortMetric = Metric::Count;
    SortOrder sortOrder = SortOrder::None;
    LengthFilter lengthFilter;
    Metric barMetric = Metric::Count;

    bool operator==(const MatrixState&) const = default;
};

/// One visible row or column. A residual entry stands for the members of an
/// expanded node that terminate at its depth.
struct FrontierEntry {
    NodeId node = kNoNode;
    Path path;
    bool residual = false;
    MemberSet members;
    double avgLength = 0.0;

    std::size_t count() const noexcept { return members.size(); }
};

/// Depth-first over the expanded region, siblings in tree order. Throws
/// StateError when a path is unknown or its parent is not expanded.
std::vector<FrontierEntry> visibleFrontier(const AffixTree& tree, const std::set<Path>& expanded);

struct GridCell {
    MemberSet members;
    double avgLength = 0.0;

    std::size_t count() const noexcept { return members.size(); }
};

struct AxisMetrics {
    std::size_t count = 0;
    double avgLength = 0.0;
};

struct Grid {
    std::vector<FrontierEntry> columns; // prefix frontier
    std::vector<FrontierEntry> rows;    // suffix frontier
    std::vector<std::vector<GridCell>> cells; // [row][column]
    std::vector<AxisMetrics> columnMetrics;
    std::vector<AxisMetrics> rowMetrics;
    std::size_t maxCellCount = 0;
    Metric barMetric = Metric::Count;
    std::shared_ptr<const Dataset> dataset;
};

/// Sorts both trees per `state`, then crosses the two frontiers.
Grid materializeMatrix(const AffixTree& prefix, const AffixTree& suffix, const MatrixState& state);

struct Transition {
    MatrixState state;
    bool noop = false;
};

Transition expandColumn(const MatrixState& s, const AffixTree& prefix, const Path& path);
Transition expandRow(const MatrixState& s, const AffixTree& suffix, const Path& path);
Transition expandCell(const MatrixState& s, const AffixTree& prefix, const AffixTree& suffix, const Path& rowPath,
                      const Path& columnPath);
/// Removes the path and every expanded descendant. Collapsing the root folds the whole axis.
Transition collapseColumn(const MatrixState& s, const Path& path);
Transition collapseRow(const MatrixState& s, const Path& path);
/// Expands every visible, non-residual node that has children, on both axes.
Transition expandAllNextLevel(const MatrixState& s, const AffixTree& prefix, const AffixTree& suffix);
MatrixState collapseAll(const MatrixState& s);

enum class PickMode { Cell, Row, Column };

struct Pick {
    PickMode mode = PickMode::Cell;
    std::size_t row = 0;
    std::size_t column = 0;
};

struct Selection {
    std::set<SequenceId> setA;
    std::set<SequenceId> setB;
    std::string provenance;

    bool operator==(const Selection&) const = default;
};

struct SelectionResult {
    Selection selection;
    std::vector<SequenceId> overlap;
    std::vector<std::string> warnings;
};

/// Ids covered by the union of the picked regions. Throws ArgumentError for
/// coordinates outside the grid.
std::set<SequenceId> resolvePicks(const Grid& grid, std::span<const Pick> picks);

SelectionResult selectSets(const Grid& grid, std::span<const Pick> picksA, std::span<const Pick> picksB);

std::string toString(Metric m);
std::string toString(SortOrder o);
std::string toString(PickMode m);
std::optional<Metric> parseMetric(std::string_view s);
std::optional<SortOrder> parseSortOrder(std::string_view s);
std::optional<PickMode> parsePickMode(std::string_view s);

} // namespace seqcmp
