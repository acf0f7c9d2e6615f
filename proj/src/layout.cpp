#include "seqcmp/layout.hpp"

#include "seqcmp/error.hpp"
#include "seqcmp/mds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace seqcmp {

Rect Rect::inset(double pad) const noexcept {
    const double p = std::clamp(pad, 0.0, 0.25 * std::min(width, height));
    return {x + p, y + p, width - 2 * p, height - 2 * p};
}

bool Rect::contains(const Rect& r, double eps) const noexcept {
    return r.x >= x - eps && r.y >= y - eps && r.right() <= right() + eps && r.bottom() <= bottom() + eps;
}

bool Rect::overlaps(const Rect& r, double eps) const noexcept {
    return r.x < right() - eps && x < r.right() - eps && r.y < bottom() - eps && y < r.bottom() - eps;
}

std::vector<UnitRef> orderedUnits(const Pattern& p, const Selection& selection) {
    std::vector<UnitRef> units;
    // supportIds are ascending, so each pass yields ascending ids
    for (const auto& id : p.supportIds)
        if (selection.setA.contains(id))
            units.push_back({id, SetTag::A});
    for (const auto& id : p.supportIds)
        if (selection.setB.contains(id))
            units.push_back({id, SetTag::B});
    return units;
}

namespace {

void requireCanvas(const Rect& canvas) {
    if (!(canvas.width > 0) || !(canvas.height > 0) || !std::isfinite(canvas.area()))
        throw ArgumentError("canvas must have a positive area");
}

double totalWeight(std::span<const LayoutItem> items) {
    double sum = 0;
    for (const auto& it : items)
        sum += static_cast<double>(it.weight());
    return sum;
}

/// Item indices ordered by `key` descending, ties by events ascending.
std::vector<std::size_t> orderBy(std::span<const LayoutItem> items, SortKey key) {
    std::vector<std::size_t> idx(items.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    if (key == SortKey::None)
        return idx;
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        const auto& ia = items[a];
        const auto& ib = items[b];
        const std::size_t va = key == SortKey::SupportCount ? ia.weight() : ia.events.size();
        const std::size_t vb = key == SortKey::SupportCount ? ib.weight() : ib.events.size();
        if (va != vb)
            return va > vb;
        return ia.events < ib.events;
    });
    return idx;
}

/// Edge lengths of squares whose areas are proportional to item weights and
/// sum to `fillRatio` of the canvas, none wider than the canvas allows.
std::vector<double> proportionalSides(std::span<const LayoutItem> items, const Rect& canvas, double fillRatio) {
    const double total = totalWeight(items);
    std::vector<double> sides(items.size(), 0.0);
    if (total <= 0)
        return sides;
    double k = fillRatio * canvas.area() / total;
    double maxW = 0;
    for (const auto& it : items)
        maxW = std::max(maxW, static_cast<double>(it.weight()));
    const double limit = std::min(canvas.width, canvas.height);
    if (std::sqrt(k * maxW) > limit)
        k = limit * limit / maxW;
    for (std::size_t i = 0; i < items.size(); ++i)
        sides[i] = std::sqrt(k * static_cast<double>(items[i].weight()));
    return sides;
}

bool squaresOverlap(const Point2& a, double sa, const Point2& b, double sb, double gap) {
    const double reach = (sa + sb) / 2 + gap;
    const double tight = reach * (1 - 1e-12);
    return std::abs(a.x - b.x) < tight && std::abs(a.y - b.y) < tight;
}

Rect squareAt(const Point2& c, double side) { return {c.x - side / 2, c.y - side / 2, side, side}; }

/// Pairwise separation along centre lines, clamped to the canvas. Returns
/// true once no pair overlaps.
bool separate(std::vector<Point2>& centers, const std::vector<double>& sides, const Rect& canvas, double gap,
              int iterations) {
    const std::size_t n = centers.size();
    auto clampInto = [&](std::size_t i) {
        const double h = sides[i] / 2;
        centers[i].x = std::clamp(centers[i].x, canvas.x + h, canvas.right() - h);
        centers[i].y = std::clamp(centers[i].y, canvas.y + h, canvas.bottom() - h);
    };
    for (int iter = 0; iter < iterations; ++iter) {
        bool moved = false;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) {
                if (!squaresOverlap(centers[i], sides[i], centers[j], sides[j], gap))
                    continue;
                moved = true;
                double dx = centers[j].x - centers[i].x;
                double dy = centers[j].y - centers[i].y;
                double dist = std::hypot(dx, dy);
                double ux = 0, uy = 0;
                if (dist < 1e-12) {
                    const double theta = 2.399963229728653 * static_cast<double>(i + j + 1); // golden angle
                    ux = std::cos(theta);
                    uy = std::sin(theta);
                    dist = 0;
                } else {
                    ux = dx / dist;
                    uy = dy / dist;
                }
                const double reach = (sides[i] + sides[j]) / 2 + gap;
                const double needed = reach / std::max(std::abs(ux), std::abs(uy));
                const double delta = (needed - dist) / 2 + 1e-9 * reach;
                centers[i].x -= ux * delta;
                centers[i].y -= uy * delta;
                centers[j].x += ux * delta;
                centers[j].y += uy * delta;
                clampInto(i);
                clampInto(j);
            }
        if (!moved)
            return true;
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (squaresOverlap(centers[i], sides[i], centers[j], sides[j], gap))
                return false;
    return true;
}

} // namespace

std::vector<Rect> layoutPatternsMap2D(std::span<const LayoutItem> items, const Rect& canvas, double padding,
                                      const LayoutOptions& options) {
    requireCanvas(canvas);
    const std::size_t n = items.size();
    if (n == 0)
        return {};

    DistanceMatrix dist(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            dist[i][j] = dist[j][i] = patternDistance(items[i].events, items[j].events);
    const std::vector<Point2> points = mds2d(dist);

    double minX = std::numeric_limits<double>::max(), maxX = -minX, minY = minX, maxY = -minX;
    for (const auto& p : points) {
        minX = std::min(minX, p.x);
        maxX = std::max(maxX, p.x);
        minY = std::min(minY, p.y);
        maxY = std::max(maxY, p.y);
    }
    const double spanX = maxX - minX;
    const double spanY = maxY - minY;

    const std::vector<double> baseSides = proportionalSides(items, canvas, options.fillRatio);
    for (int round = 0; round < 400; ++round) {
        const double shrink = std::pow(0.9, round);
        std::vector<double> sides(baseSides);
        for (auto& s : sides)
            s *= shrink;
        const double gap = padding * shrink;
        const double margin = std::min(*std::max_element(sides.begin(), sides.end()) / 2 + gap,
                                       std::min(canvas.width, canvas.height) / 2);
        const double availW = canvas.width - 2 * margin;
        const double availH = canvas.height - 2 * margin;
        double scale = std::numeric_limits<double>::infinity();
        if (spanX > 1e-12)
            scale = std::min(scale, availW / spanX);
        if (spanY > 1e-12)
            scale = std::min(scale, availH / spanY);
        if (!std::isfinite(scale))
            scale = 0;

        std::vector<Point2> centers(n);
        for (std::size_t i = 0; i < n; ++i) {
            centers[i].x = canvas.centerX() + (points[i].x - (minX + maxX) / 2) * scale;
            centers[i].y = canvas.centerY() + (points[i].y - (minY + maxY) / 2) * scale;
        }
        if (separate(centers, sides, canvas, gap, options.separationIterations)) {
            std::vector<Rect> out(n);
            for (std::size_t i = 0; i < n; ++i)
                out[i] = squareAt(centers[i], sides[i]);
            return out;
        }
    }
    throw std::logic_error("map2d overlap removal did not converge");
}

std::vector<Rect> layoutPatternsFill(std::span<const LayoutItem> items, const Rect& canvas, Axis axis,
                                     SortKey sortKey, double padding) {
    requireCanvas(canvas);
    const std::size_t n = items.size();
    std::vector<Rect> out(n);
    if (n == 0)
        return out;
    const double extent = axis == Axis::X ? canvas.width : canvas.height;
    // keep at least half of the extent for the strips themselves
    const double gap = n > 1 ? std::clamp(padding, 0.0, extent / (2.0 * static_cast<double>(n - 1))) : 0.0;
    const double usable = extent - gap * static_cast<double>(n - 1);
    const double total = totalWeight(items);

    double cursor = axis == Axis::X ? canvas.x : canvas.y;
    for (std::size_t idx : orderBy(items, sortKey)) {
        const double share = total > 0 ? usable * static_cast<double>(items[idx].weight()) / total : usable / n;
        if (axis == Axis::X)
            out[idx] = {cursor, canvas.y, share, canvas.height};
        else
            out[idx] = {canvas.x, cursor, canvas.width, share};
        cursor += share + gap;
    }
    return out;
}

std::vector<Rect> squarify(std::span<const double> weights, const Rect& canvas) {
    const std::size_t n = weights.size();
    std::vector<Rect> out(n);
    const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
    if (n == 0 || total <= 0)
        return out;
    std::vector<double> areas(n);
    for (std::size_t i = 0; i < n; ++i)
        areas[i] = weights[i] / total * canvas.area();

    Rect free = canvas;
    auto worst = [](double sum, double minA, double maxA, double side) {
        const double s2 = side * side;
        return std::max(s2 * maxA / (sum * sum), sum * sum / (s2 * minA));
    };
    auto placeRow = [&](std::size_t first, std::size_t last, double sum, bool final) {
        if (free.width >= free.height) {
            // column along the left edge
            const double w = final ? free.width : sum / free.height;
            double y = free.y;
            for (std::size_t i = first; i < last; ++i) {
                const double h = i + 1 == last ? free.bottom() - y : areas[i] / w;
                out[i] = {free.x, y, w, h};
                y += h;
            }
            free.x += w;
            free.width -= w;
        } else {
            const double h = final ? free.height : sum / free.width;
            double x = free.x;
            for (std::size_t i = first; i < last; ++i) {
                const double w = i + 1 == last ? free.right() - x : areas[i] / h;
                out[i] = {x, free.y, w, h};
                x += w;
            }
            free.y += h;
            free.height -= h;
        }
    };

    std::size_t rowStart = 0;
    double sum = 0, minA = 0, maxA = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double side = std::min(free.width, free.height);
        if (i == rowStart) {
            sum = minA = maxA = areas[i];
            continue;
        }
        const double nSum = sum + areas[i];
        const double nMin = std::min(minA, areas[i]);
        const double nMax = std::max(maxA, areas[i]);
        if (worst(nSum, nMin, nMax, side) <= worst(sum, minA, maxA, side)) {
            sum = nSum;
            minA = nMin;
            maxA = nMax;
        } else {
            placeRow(rowStart, i, sum, false);
            rowStart = i;
            sum = minA = maxA = areas[i];
        }
    }
    placeRow(rowStart, n, sum, true);
    return out;
}

std::vector<Rect> layoutPatternsTreemap(std::span<const LayoutItem> items, const Rect& canvas) {
    requireCanvas(canvas);
    const auto order = orderBy(items, SortKey::SupportCount);
    std::vector<double> weights;
    weights.reserve(order.size());
    for (auto i : order)
        weights.push_back(static_cast<double>(items[i].weight()));
    const auto placed = squarify(weights, canvas);
    std::vector<Rect> out(items.size());
    for (std::size_t k = 0; k < order.size(); ++k)
        out[order[k]] = placed[k];
    return out;
}

std::vector<Rect> layoutPatternsPack(std::span<const LayoutItem> items, const Rect& canvas, double padding,
                                     const LayoutOptions& options) {
    requireCanvas(canvas);
    const std::size_t n = items.size();
    std::vector<Rect> out(n);
    if (n == 0)
        return out;
    const std::vector<double> sides = proportionalSides(items, canvas, options.fillRatio);
    const auto order = orderBy(items, SortKey::SupportCount);

    // Greedy placement around the origin along an Archimedean spiral r = a*theta.
    std::vector<Point2> centers(n);
    std::vector<std::size_t> placed;
    for (std::size_t idx : order) {
        const double side = sides[idx];
        const double a = side / (4 * std::numbers::pi); // half an edge between turns
        const double step = side / 4;
        double theta = 0;
        Point2 c{0, 0};
        for (;;) {
            const double r = a * theta;
            c = {r * std::cos(theta), r * std::sin(theta)};
            const bool clash = std::any_of(placed.begin(), placed.end(), [&](std::size_t o) {
                return squaresOverlap(c, side, centers[o], sides[o], padding);
            });
            if (!clash)
                break;
            theta += step / std::max(r, step);
        }
        centers[idx] = c;
        placed.push_back(idx);
    }

    double minX = std::numeric_limits<double>::max(), maxX = -minX, minY = minX, maxY = -minX;
    for (std::size_t i = 0; i < n; ++i) {
        minX = std::min(minX, centers[i].x - sides[i] / 2);
        maxX = std::max(maxX, centers[i].x + sides[i] / 2);
        minY = std::min(minY, centers[i].y - sides[i] / 2);
        maxY = std::max(maxY, centers[i].y + sides[i] / 2);
    }
    const double f = std::min({1.0, canvas.width / (maxX - minX), canvas.height / (maxY - minY)});
    const double midX = (minX + maxX) / 2;
    const double midY = (minY + maxY) / 2;
    for (std::size_t i = 0; i < n; ++i) {
        const Point2 c{canvas.centerX() + (centers[i].x - midX) * f, canvas.centerY() + (centers[i].y - midY) * f};
        Rect r = squareAt(c, sides[i] * f);
        // rounding can leave an edge a hair outside the canvas
        r.x = std::clamp(r.x, canvas.x, canvas.right() - r.width);
        r.y = std::clamp(r.y, canvas.y, canvas.bottom() - r.height);
        out[i] = r;
    }
    return out;
}

namespace {

constexpr double kFitEps = 1e-9;

std::size_t fitting(double extent, double unit) {
    if (unit <= 0)
        return 0;
    return static_cast<std::size_t>(std::floor(extent / unit + kFitEps));
}

/// Largest edge at which `count` units fit in `inner`.
double largestUnit(const Rect& inner, std::size_t count, UnitLayout layout) {
    if (count == 0)
        return std::numeric_limits<double>::infinity();
    const double n = static_cast<double>(count);
    switch (layout) {
    case UnitLayout::FillX:
        return std::min(inner.width / n, inner.height);
    case UnitLayout::FillY:
        return std::min(inner.height / n, inner.width);
    case UnitLayout::MaxFill:
    case UnitLayout::Pack:
        break;
    }
    double best = 0;
    for (std::size_t cols = 1; cols <= count; ++cols) {
        const std::size_t rows = (count + cols - 1) / cols;
        best = std::max(best, std::min(inner.width / static_cast<double>(cols),
                                       inner.height / static_cast<double>(rows)));
    }
    return best;
}

} // namespace

std::size_t unitCapacity(const Rect& container, UnitLayout layout, double unit, double padding) {
    const Rect inner = container.inset(padding);
    switch (layout) {
    case UnitLayout::FillX:
        return unit <= inner.height * (1 + kFitEps) ? fitting(inner.width, unit) : 0;
    case UnitLayout::FillY:
        return unit <= inner.width * (1 + kFitEps) ? fitting(inner.height, unit) : 0;
    case UnitLayout::MaxFill:
    case UnitLayout::Pack:
        break;
    }
    return fitting(inner.width, unit) * fitting(inner.height, unit);
}

UnitSizing sharedUnitSize(std::span<const Rect> containers, std::span<const std::size_t> unitCounts,
                          UnitLayout layout, double padding, const LayoutOptions& options) {
    if (containers.size() != unitCounts.size())
        throw ArgumentError("one unit count per container is required");
    UnitSizing s;
    s.overflow.assign(containers.size(), false);
    double u = options.maxUnitSize;
    for (std::size_t i = 0; i < containers.size(); ++i)
        u = std::min(u, largestUnit(containers[i].inset(padding), unitCounts[i], layout));
    if (u < options.minUnitSize) {
        u = options.minUnitSize;
        for (std::size_t i = 0; i < containers.size(); ++i)
            s.overflow[i] = unitCapacity(containers[i], layout, u, padding) < unitCounts[i];
    }
    s.size = u;
    return s;
}

UnitPlacement layoutUnits(const Rect& container, std::size_t count, UnitLayout layout, double unit, double padding) {
    UnitPlacement p;
    if (count == 0)
        return p;
    const Rect inner = container.inset(padding);
    p.rects.reserve(count);
    switch (layout) {
    case UnitLayout::FillX:
        for (std::size_t i = 0; i < count; ++i)
            p.rects.push_back({inner.x + static_cast<double>(i) * unit, inner.y, unit, unit});
        break;
    case UnitLayout::FillY:
        for (std::size_t i = 0; i < count; ++i)
            p.rects.push_back({inner.x, inner.y + static_cast<double>(i) * unit, unit, unit});
        break;
    case UnitLayout::MaxFill:
    case UnitLayout::Pack: {
        const std::size_t cols = std::max<std::size_t>(1, fitting(inner.width, unit));
        for (std::size_t i = 0; i < count; ++i) {
            const std::size_t row = i / cols;
            const std::size_t col = i % cols;
            double offset = 0;
            if (layout == UnitLayout::Pack) {
                const std::size_t inRow = std::min(cols, count - row * cols);
                offset = std::max(0.0, (inner.width - static_cast<double>(inRow) * unit) / 2);
            }
            p.rects.push_back({inner.x + offset + static_cast<double>(col) * unit,
                               inner.y + static_cast<double>(row) * unit, unit, unit});
        }
        break;
    }
    }
    p.overflow = unitCapacity(container, layout, unit, padding) < count;
    return p;
}

LayoutResult computeLayout(std::span<const LayoutItem> items, const LayoutRequest& request,
                           const LayoutOptions& options) {
    requireCanvas(request.canvas);
    if (request.paddingPx < 0 || !std::isfinite(request.paddingPx))
        throw ArgumentError("padding must be non-negative");
    std::vector<Rect> containers;
    switch (request.patternLayout) {
    case PatternLayout::Map2D:
        containers = layoutPatternsMap2D(items, request.canvas, request.paddingPx, options);
        break;
    case PatternLayout::FillX:
        containers = layoutPatternsFill(items, request.canvas, Axis::X, request.sortKey, request.paddingPx);
        break;
    case PatternLayout::FillY:
        containers = layoutPatternsFill(items, request.canvas, Axis::Y, request.sortKey, request.paddingPx);
        break;
    case PatternLayout::MaxFill:
        containers = layoutPatternsTreemap(items, request.canvas);
        break;
    case PatternLayout::Pack:
        containers = layoutPatternsPack(items, request.canvas, request.paddingPx, options);
        break;
    }

    std::vector<std::size_t> counts;
    counts.reserve(items.size());
    for (const auto& it : items)
        counts.push_back(it.weight());
    const UnitSizing sizing = sharedUnitSize(containers, counts, request.unitLayout, request.paddingPx, options);

    LayoutResult result;
    result.unitSize = sizing.size;
    for (std::size_t i = 0; i < items.size(); ++i) {
        result.containers.push_back({items[i].id, containers[i]});
        auto placement = layoutUnits(containers[i], counts[i], request.unitLayout, sizing.size, request.paddingPx);
        for (std::size_t k = 0; k < placement.rects.size(); ++k)
            result.units.push_back(
                {items[i].id, items[i].units[k].sequenceId, items[i].units[k].set, placement.rects[k]});
        if (placement.overflow || sizing.overflow[i])
            result.overflow.push_back(items[i].id);
    }
    return result;
}

std::string toString(PatternLayout l) {
    switch (l) {
    case PatternLayout::Map2D:
        return "map2d";
    case PatternLayout::FillX:
        return "fillx";
    case PatternLayout::FillY:
        return "filly";
    case PatternLayout::MaxFill:
        return "maxfill";
    case PatternLayout::Pack:
        return "pack";
    }
    return "map2d";
}

std::string toString(UnitLayout l) {
    switch (l) {
    case UnitLayout::FillX:
        return "fillx";
    case UnitLayout::FillY:
        return "filly";
    case UnitLayout::MaxFill:
        return "maxfill";
    case UnitLayout::Pack:
        return "pack";
    }
    return "maxfill";
}

std::string toString(SortKey k) {
    switch (k) {
    case SortKey::SupportCount:
        return "supportCount";
    case SortKey::PatternLength:
        return "patternLength";
    case SortKey::None:
        return "none";
    }
    return "none";
}

std::string toString(SetTag t) { return t == SetTag::A ? "A" : "B"; }

std::optional<PatternLayout> parsePatternLayout(std::string_view s) {
    if (s == "map2d")
        return PatternLayout::Map2D;
    if (s == "fillx")
        return PatternLayout::FillX;
    if (s == "filly")
        return PatternLayout::FillY;
    if (s == "maxfill")
        return PatternLayout::MaxFill;
    if (s == "pack")
        return PatternLayout::Pack;
    return std::nullopt;
}

std::optional<UnitLayout> parseUnitLayout(std::string_view s) {
    if (s == "fillx")
        return UnitLayout::FillX;
    if (s == "filly")
        return UnitLayout::FillY;
    if (s == "maxfill")
        return UnitLayout::MaxFill;
    if (s == "pack")
        return UnitLayout::Pack;
    return std::nullopt;
}

std::optional<SortKey> parseSortKey(std::string_view s) {
    if (s == "supportCount")
        return SortKey::SupportCount;
    if (s == "patternLength")
        return SortKey::PatternLength;
    if (s == "none")
        return SortKey::None;
    return std::nullopt;
}

} // namespace seqcmp
