#pragma once

#include "khull/convex_core.hpp"
#include "khull/rng.hpp"

#include <cmath>
#include <numbers>

namespace khull::test {

inline Vec random_in_box(Rng& rng, int d, double half) {
    Vec v(d);
    for (int i = 0; i < d; ++i) v(i) = half * (2.0 * uniform01(rng) - 1.0);
    return v;
}

inline Vec random_unit(Rng& rng, int d) {
    std::normal_distribution<double> n(0.0, 1.0);
    Vec v(d);
    for (int i = 0; i < d; ++i) v(i) = n(rng);
    return v.normalized();
}

/// Same point sets up to order, within tol.
inline bool same_points(const PointList& a, const PointList& b, double tol = 1e-9) {
    if (a.size() != b.size()) return false;
    for (const Vec& p : a) {
        bool found = false;
        for (const Vec& q : b) found = found || (p - q).norm() <= tol;
        if (!found) return false;
    }
    return true;
}

/// Jarvis march; an independent planar hull used as an oracle.
inline PointList gift_wrap(const PointList& pts) {
    std::size_t start = 0;
    for (std::size_t i = 1; i < pts.size(); ++i)
        if (pts[i](0) < pts[start](0) || (pts[i](0) == pts[start](0) && pts[i](1) < pts[start](1))) start = i;
    PointList hull;
    std::size_t p = start;
    do {
        hull.push_back(pts[p]);
        std::size_t q = (p + 1) % pts.size();
        for (std::size_t r = 0; r < pts.size(); ++r) {
            const Vec a = pts[q] - pts[p];
            const Vec b = pts[r] - pts[p];
            const double cross = a(0) * b(1) - a(1) * b(0);
            // Prefer the farthest point among collinear candidates.
            if (cross < -1e-12 || (std::abs(cross) <= 1e-12 && b.norm() > a.norm())) q = r;
        }
        p = q;
    } while (p != start && hull.size() <= pts.size());
    return hull;
}

}  // namespace khull::test
