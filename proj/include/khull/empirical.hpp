#pragma once

#include "khull/convex_core.hpp"
#include "khull/rng.hpp"
#include "khull/zero_cell.hpp"

#include <cstdint>

namespace khull {

/// n i.i.d. uniform points of K.
struct SampleBatch {
    ConvexBody body;
    PointList points;
    std::uint64_t seed = 0;
    int n() const { return static_cast<int>(points.size()); }
};

/// Exact uniform sampling: bounding-box rejection (polytope), Gaussian
/// direction with radius U^{1/d} (ball), ball-box rejection (half-ball).
SampleBatch uniform_sample(const ConvexBody& K, int n, Rng& rng);
SampleBatch uniform_sample(const ConvexBody& K, int n, std::uint64_t seed, std::uint64_t stream = 0);
Vec uniform_point(const ConvexBody& K, Rng& rng);

/// exp(C) by scaling and squaring with a degree-18 Taylor kernel; exact
/// rotation for 2 x 2 skew matrices.
Mat matrix_exponential(const Mat& C);

/// p in n X_n, where X_n = {(x, C) : Xi_n in exp(C)(K + x)}:
/// exp(-C/n) xi - x/n in K for every sample point.
bool xn_membership(const TangentPoint& p, const SampleBatch& batch, int n);
bool xn_membership(const Vec& p, const SampleBatch& batch, int n);

struct EmpiricalExtent {
    double extent = 0.0;
    bool censored = false;
};

/// First exit of s -> s dir from n X_n: scan at s_max / 1024, then bisect
/// the bracketing cell to 1e-6. Censored at s_max when no exit is seen.
EmpiricalExtent directional_extent_empirical(const SampleBatch& batch, int n, const Vec& direction, double s_max = 50.0);

}  // namespace khull
