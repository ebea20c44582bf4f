#pragma once

#include <Eigen/Dense>

#include <limits>
#include <vector>

namespace khull {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using PointList = std::vector<Vec>;

/// Single tolerance for geometric equality and containment tests.
inline constexpr double kGeoTol = 1e-9;

/// Sentinel for support values in directions outside the barrier cone.
inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

inline Vec make_vec(std::initializer_list<double> values) {
    Vec v(static_cast<Eigen::Index>(values.size()));
    Eigen::Index i = 0;
    for (double x : values) v(i++) = x;
    return v;
}

}  // namespace khull
