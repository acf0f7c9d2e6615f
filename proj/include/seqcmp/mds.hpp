#pragma once

#include "seqcmp/dataset.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace seqcmp {

struct Point2 {
    double x = 0.0;
    double y = 0.0;

    bool operator==(const Point2&) const = default;
};

/// Unit-cost edit distance over event tokens.
std::size_t levenshtein(std::span<const EventType> a, std::span<const EventType> b);

/// Edit distance divided by the longer length; 0 for two empty lists.
double patternDistance(std::span<const EventType> a, std::span<const EventType> b);

using DistanceMatrix = std::vector<std::vector<double>>;

/// Classical (Torgerson) MDS into two dimensions.
///
/// The squared distances are double-centred and the two largest eigenpairs
/// give the axes, scaled by sqrt(eigenvalue). Each axis is signed so that its
/// first non-negligible coordinate is positive; an axis whose eigenvalue is not
/// positive collapses to zero. Throws ArgumentError for non-square,
/// asymmetric, negative or non-zero-diagonal input.
std::vector<Point2> mds2d(const DistanceMatrix& distances);

} // namespace seqcmp
