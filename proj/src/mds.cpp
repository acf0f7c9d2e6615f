#include "seqcmp/mds.hpp"

#include "seqcmp/error.hpp"

#include <Eigen/Dense>

#include <cmath>

namespace seqcmp {

std::vector<Point2> mds2d(const DistanceMatrix& distances) {
    const auto n = static_cast<Eigen::Index>(distances.size());
    double scale = 0.0;
    for (const auto& row : distances) {
        if (static_cast<Eigen::Index>(row.size()) != n)
            throw ArgumentError("distance matrix must be square");
        for (double v : row) {
            if (!std::isfinite(v) || v < 0.0)
                throw ArgumentError("distances must be finite and non-negative");
            scale = std::max(scale, v);
        }
    }
    const double tol = 1e-12 * std::max(scale, 1.0);
    for (Eigen::Index i = 0; i < n; ++i) {
        if (std::abs(distances[i][i]) > tol)
            throw ArgumentError("distance matrix must have a zero diagonal");
        for (Eigen::Index j = i + 1; j < n; ++j)
            if (std::abs(distances[i][j] - distances[j][i]) > tol)
                throw ArgumentError("distance matrix must be symmetric");
    }

    std::vector<Point2> out(static_cast<std::size_t>(n));
    if (n < 2)
        return out;

    Eigen::MatrixXd sq(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) {
            const double d = 0.5 * (distances[i][j] + distances[j][i]);
            sq(i, j) = d * d;
        }
    // B = -1/2 J D^2 J with J = I - 11'/n
    const Eigen::VectorXd rowMean = sq.rowwise().mean();
    const double grandMean = rowMean.mean();
    Eigen::MatrixXd b(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            b(i, j) = -0.5 * (sq(i, j) - rowMean(i) - rowMean(j) + grandMean);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(b);
    if (solver.info() != Eigen::Success)
        throw ArgumentError("eigendecomposition failed");
    const Eigen::VectorXd& values = solver.eigenvalues(); // ascending
    const double lambdaTol = 1e-12 * std::max(std::abs(values(n - 1)), std::abs(values(0)));

    for (int axis = 0; axis < 2; ++axis) {
        const Eigen::Index k = n - 1 - axis;
        const double lambda = values(k);
        if (!(lambda > lambdaTol))
            continue;
        Eigen::VectorXd v = solver.eigenvectors().col(k);
        for (Eigen::Index i = 0; i < n; ++i)
            if (std::abs(v(i)) > 1e-9) {
                if (v(i) < 0)
                    v = -v;
                break;
            }
        const double s = std::sqrt(lambda);
        for (Eigen::Index i = 0; i < n; ++i)
            (axis == 0 ? out[i].x : out[i].y) = v(i) * s;
    }
    return out;
}

} // namespace seqcmp
