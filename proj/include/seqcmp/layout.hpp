#pragma once

#include "seqcmp/affix.hpp"
#include "seqcmp/mining.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace seqcmp {

/// Canvas coordinates: origin top-left, y grows downwards.
struct Rect {
    double x = 0.0;
    double y = 0.0;
    double width = 0.0;
    double height = 0.0;

    double area() const noexcept { return width * height; }
    double right() const noexcept { return x + width; }
    double bottom() const noexcept { return y + height; }
    double centerX() const noexcept { return x + width / 2; }
    double centerY() const noexcept { return y + height / 2; }

    /// Shrinks by `pad` on every side, capped so the result keeps half its extent.
    Rect inset(double pad) const noexcept;
    bool contains(const Rect& r, double eps = 1e-9) const noexcept;
    /// Interior overlap; rectangles that merely share an edge do not overlap.
    bool overlaps(const Rect& r, double eps = 1e-9) const noexcept;

    bool operator==(const Rect&) const = default;
};

enum class PatternLayout { Map2D, FillX, FillY, MaxFill, Pack };
enum class UnitLayout { FillX, FillY, MaxFill, Pack };
enum class SortKey { SupportCount, PatternLength, None };
enum class SetTag { A, B };
enum class Axis { X, Y };

struct LayoutRequest {
    Rect canvas{0, 0, 960, 640};
    PatternLayout patternLayout = PatternLayout::Map2D;
    UnitLayout unitLayout = UnitLayout::MaxFill;
    SortKey sortKey = SortKey::SupportCount;
    double paddingPx = 2.0;
};

struct LayoutOptions {
    double fillRatio = 0.45; // share of the canvas covered by Map2D / Pack containers
    double maxUnitSize = 24.0;
    double minUnitSize = 1.0;
    int separationIterations = 200;
};

struct UnitRef {
    SequenceId sequenceId;
    SetTag set = SetTag::A;

    bool operator==(const UnitRef&) const = default;
};

/// One pattern as the layout sees it: the units are its support set, with a
/// sequence that sits in both selected sets appearing once per set.
struct LayoutItem {
    std::string id;
    std::vector<EventType> events;
    std::vector<UnitRef> units;

    std::size_t weight() const noexcept { return units.size(); }
};

/// Set-A units first, then set-B, each in ascending sequence id.
std::vector<UnitRef> orderedUnits(const Pattern& p, const Selection& selection);

struct PlacedContainer {
    std::string patternId;
    Rect rect;
};

struct PlacedUnit {
    std::string patternId;
    SequenceId sequenceId;
    SetTag set = SetTag::A;
    Rect rect;
};

struct LayoutResult {
    std::vector<PlacedContainer> containers; // item order
    std::vector<PlacedUnit> units;
    double unitSize = 0.0;
    std::vector<std::string> overflow; // pattern ids whose units do not fit
};

/// Pattern containers, one per item and in item order.
std::vector<Rect> layoutPatternsMap2D(std::span<const LayoutItem> items, const Rect& canvas, double padding,
                                      const LayoutOptions& options = {});
std::vector<Rect> layoutPatternsFill(std::span<const LayoutItem> items, const Rect& canvas, Axis axis,
                                     SortKey sortKey, double padding);
std::vector<Rect> layoutPatternsTreemap(std::span<const LayoutItem> items, const Rect& canvas);
std::vector<Rect> layoutPatternsPack(std::span<const LayoutItem> items, const Rect& canvas, double padding,
                                     const LayoutOptions& options = {});

/// Squarified treemap of `weights` (taken in the given order); rects come back in the same order.
std::vector<Rect> squarify(std::span<const double> weights, const Rect& canvas);

/// How many units of edge `unit` fit in `container` under `layout`.
std::size_t unitCapacity(const Rect& container, UnitLayout layout, double unit, double padding);

struct UnitSizing {
    double size = 0.0;
    std::vector<bool> overflow; // per container
};

/// Largest shared unit edge that lets every container hold its units,
/// clamped to [minUnitSize, maxUnitSize].
UnitSizing sharedUnitSize(std::span<const Rect> containers, std::span<const std::size_t> unitCounts,
                          UnitLayout layout, double padding, const LayoutOptions& options = {});

struct UnitPlacement {
    std::vector<Rect> rects;
    bool overflow = false;
};

UnitPlacement layoutUnits(const Rect& container, std::size_t count, UnitLayout layout, double unit, double padding);

/// Both levels: containers by `request.patternLayout`, units by `request.unitLayout`.
/// Throws ArgumentError for a canvas without area.
LayoutResult computeLayout(std::span<const LayoutItem> items, const LayoutRequest& request,
                           const LayoutOptions& options = {});

std::string toString(PatternLayout l);
std::string toString(UnitLayout l);
std::string toString(SortKey k);
std::string toString(SetTag t);
std::optional<PatternLayout> parsePatternLayout(std::string_view s);
std::optional<UnitLayout> parseUnitLayout(std::string_view s);
std::optional<SortKey> parseSortKey(std::string_view s);

} // namespace seqcmp
