#pragma once

// Reference implementations used only by tests. They follow the textbook
// definitions directly and share no code with the library paths they check.

#include "seqcmp/affix.hpp"
#include "seqcmp/dataset.hpp"
#include "seqcmp/mds.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

namespace seqcmp::testing {

inline bool startsWith(const Sequence& s, const Path& p) {
    if (p.size() > s.size())
        return false;
    for (std::size_t i = 0; i < p.size(); ++i)
        if (s.type(i) != p[i])
            return false;
    return true;
}

inline bool endsWith(const Sequence& s, const Path& p) {
    if (p.size() > s.size())
        return false;
    const std::size_t off = s.size() - p.size();
    for (std::size_t i = 0; i < p.size(); ++i)
        if (s.type(off + i) != p[i])
            return false;
    return true;
}

/// Members of a frontier entry by predicate: a residual entry holds the
/// sequences equal to its path, any other entry those carrying the affix.
inline bool inEntry(const Sequence& s, const FrontierEntry& e, AffixKind kind) {
    const bool has = kind == AffixKind::Prefix ? startsWith(s, e.path) : endsWith(s, e.path);
    return has && (!e.residual || s.size() == e.path.size());
}

/// Full-table edit distance.
inline std::size_t referenceLevenshtein(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    std::vector<std::vector<std::size_t>> t(a.size() + 1, std::vector<std::size_t>(b.size() + 1));
    for (std::size_t i = 0; i <= a.size(); ++i)
        t[i][0] = i;
    for (std::size_t j = 0; j <= b.size(); ++j)
        t[0][j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i)
        for (std::size_t j = 1; j <= b.size(); ++j) {
            const std::size_t sub = t[i - 1][j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
            t[i][j] = std::min({t[i - 1][j] + 1, t[i][j - 1] + 1, sub});
        }
    return t[a.size()][b.size()];
}

/// Largest coordinate error after the best rotation/reflection + translation
/// of `found` onto `truth` (orthogonal Procrustes).
inline double procrustesError(const std::vector<Point2>& truth, const std::vector<Point2>& found) {
    const auto n = static_cast<Eigen::Index>(truth.size());
    Eigen::MatrixXd x(n, 2), y(n, 2);
    for (Eigen::Index i = 0; i < n; ++i) {
        x(i, 0) = truth[i].x;
        x(i, 1) = truth[i].y;
        y(i, 0) = found[i].x;
        y(i, 1) = found[i].y;
    }
    const Eigen::RowVector2d mx = x.colwise().mean();
    const Eigen::RowVector2d my = y.colwise().mean();
    x.rowwise() -= mx;
    y.rowwise() -= my;
    Eigen::JacobiSVD<Eigen::Matrix2d> svd(y.transpose() * x, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Eigen::Matrix2d r = svd.matrixU() * svd.matrixV().transpose();
    const Eigen::MatrixXd aligned = y * r;
    return (aligned - x).cwiseAbs().maxCoeff();
}

inline DistanceMatrix euclidean(const std::vector<Point2>& pts) {
    DistanceMatrix d(pts.size(), std::vector<double>(pts.size(), 0.0));
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = 0; j < pts.size(); ++j)
            d[i][j] = std::hypot(pts[i].x - pts[j].x, pts[i].y - pts[j].y);
    return d;
}

} // namespace seqcmp::testing
