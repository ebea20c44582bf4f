#include "khull/hull_engine.hpp"

#include "khull/lp.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>

namespace khull {
namespace {

void require_points(const PointList& A, const char* op) {
    if (A.empty()) throw std::invalid_argument(std::string(op) + ": empty point set");
    for (const Vec& a : A)
        if (a.size() != A.front().size()) throw std::invalid_argument(std::string(op) + ": mixed dimensions");
}

void require_dim(const ConvexBody& K, const PointList& A, const char* op) {
    require_points(A, op);
    if (A.front().size() != K.dim()) throw std::invalid_argument(std::string(op) + ": dimension mismatch");
}

PointList direction_grid(int d, double delta, double& cos_bound) {
    PointList grid;
    if (d == 1) {
        grid = {make_vec({1.0}), make_vec({-1.0})};
        cos_bound = 1.0;
    } else if (d == 2) {
        const int n = std::max(8, static_cast<int>(std::ceil(std::numbers::pi / delta)));
        for (int k = 0; k < n; ++k) {
            const double a = 2.0 * std::numbers::pi * k / n;
            grid.push_back(make_vec({std::cos(a), std::sin(a)}));
        }
        cos_bound = std::cos(std::numbers::pi / n);
    } else if (d == 3) {
        // Cell centers of an m x m grid on each cube face, projected to the
        // sphere. Any direction is within angle sqrt(2)/m of some center.
        const int m = std::max(4, static_cast<int>(std::ceil(std::sqrt(2.0) / delta)));
        for (int axis = 0; axis < 3; ++axis)
            for (int sign = -1; sign <= 1; sign += 2)
                for (int i = 0; i < m; ++i)
                    for (int j = 0; j < m; ++j) {
                        Vec p(3);
                        p(axis) = sign;
                        p((axis + 1) % 3) = -1.0 + (2.0 * i + 1.0) / m;
                        p((axis + 2) % 3) = -1.0 + (2.0 * j + 1.0) / m;
                        grid.push_back(p.normalized());
                    }
        cos_bound = std::cos(std::sqrt(2.0) / m);
    } else {
        throw std::invalid_argument("direction grid: dimension must be 1, 2 or 3");
    }
    return grid;
}

// Points of the sphere S(a, r) n S(b, r) n S(c, r) in R^3.
PointList triple_sphere_points(const Vec& a_in, const Vec& b_in, const Vec& c_in, double r) {
    const Eigen::Vector3d a = a_in, b = b_in, c = c_in;
    // Points equidistant from a, b, c form the line p0 + s n.
    const Eigen::Vector3d e1 = b - a;
    const Eigen::Vector3d e2 = c - a;
    const Eigen::Vector3d n = e1.cross(e2);
    const double nn = n.squaredNorm();
    if (nn < 1e-24) return {};
    const Eigen::Vector3d p0 = a + (e1.squaredNorm() * e2.cross(n) + e2.squaredNorm() * n.cross(e1)) / (2.0 * nn);
    const double rho2 = r * r - (p0 - a).squaredNorm();
    if (rho2 < 0.0) return {};
    const double s = std::sqrt(rho2 / nn);
    return {Vec(p0 + s * n), Vec(p0 - s * n)};
}

}  // namespace

HullFamily HullFamily::from_name(const std::string& name) {
    if (name == "k-hull") return k_hull();
    if (name == "translations-scalings") return translations_scalings();
    if (name == "full-affine") return full_affine();
    if (name == "linear") return linear_group();
    if (name == "rotations") return rotations();
    if (name == "similarities") return {Translations::Full, Linear::ScalingsAndRotations, {}};
    if (name == "diagonal") return {Translations::Zero, Linear::DiagonalPositive, {}};
    throw std::invalid_argument("unknown family '" + name + "'");
}

std::string HullFamily::name() const {
    const bool full = translations == Translations::Full;
    const bool zero = translations == Translations::Zero;
    if (full && linear == Linear::Identity) return "k-hull";
    if (full && linear == Linear::PositiveScalings) return "translations-scalings";
    if (full && linear == Linear::GeneralLinear) return "full-affine";
    if (full && linear == Linear::ScalingsAndRotations) return "similarities";
    if (zero && linear == Linear::GeneralLinear) return "linear";
    if (zero && linear == Linear::SpecialOrthogonal) return "rotations";
    if (zero && linear == Linear::DiagonalPositive) return "diagonal";
    return "custom";
}

int HullFamily::parameter_count(int d) const {
    int n = 0;
    if (translations == Translations::Full) n += d;
    if (translations == Translations::Subspace) n += static_cast<int>(translation_basis.cols());
    const int rot = d * (d - 1) / 2;
    switch (linear) {
        case Linear::Identity: break;
        case Linear::PositiveScalings: n += 1; break;
        case Linear::ScalingsAndRotations: n += 1 + rot; break;
        case Linear::SpecialOrthogonal: n += rot; break;
        case Linear::GeneralLinear: n += d * d; break;
        case Linear::DiagonalPositive: n += d; break;
    }
    return n;
}

// ---------------------------------------------------------------------------
// BallHull

BallHull::BallHull(PointList points, double radius, double accuracy)
    : points_(std::move(points)), radius_(radius), accuracy_(accuracy) {
    require_points(points_, "BallHull");
    if (!(radius_ > 0.0)) throw std::invalid_argument("BallHull: radius must be positive");
    const int d = dim();
    const double delta = std::acos(radius_ / (radius_ + accuracy_));
    grid_ = direction_grid(d, delta, grid_cos_);

    const std::size_t m = points_.size();
    if (d == 2) {
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i + 1; j < m; ++j) {
                const Vec mid = 0.5 * (points_[i] + points_[j]);
                const Vec diff = points_[j] - points_[i];
                const double half = 0.5 * diff.norm();
                if (half < 1e-14 || half > radius_) continue;
                const Vec perp = make_vec({-diff(1), diff(0)}) / diff.norm();
                const double h = std::sqrt(radius_ * radius_ - half * half);
                for (double s : {-1.0, 1.0})
                    if (in_X(mid + s * h * perp, 1e-9)) vertices_.push_back(mid + s * h * perp);
            }
    } else if (d == 3) {
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i + 1; j < m; ++j)
                for (std::size_t k = j + 1; k < m; ++k)
                    for (const Vec& p : triple_sphere_points(points_[i], points_[j], points_[k], radius_))
                        if (in_X(p, 1e-9)) vertices_.push_back(p);
    }
    Vec e = Vec::Zero(d);
    e(0) = 1.0;
    empty_ = !std::isfinite(support_X(e));
}

bool BallHull::in_X(const Vec& x, double tol) const {
    for (const Vec& a : points_)
        if ((x - a).norm() > radius_ + tol) return false;
    return true;
}

double BallHull::support_X(const Vec& u_in) const {
    const Vec u = u_in.normalized();
    const int d = dim();
    double best = -kInfinity;
    auto consider = [&](const Vec& p) {
        const double v = p.dot(u);
        if (v > best && in_X(p, 1e-9)) best = v;
    };
    // The maximizer lies on the boundary of one ball, on the intersection of
    // two spheres, or (d = 3) at a point common to three spheres.
    for (const Vec& a : points_) consider(a + radius_ * u);
    for (const Vec& v : vertices_) best = std::max(best, v.dot(u));
    if (d == 3) {
        for (std::size_t i = 0; i < points_.size(); ++i)
            for (std::size_t j = i + 1; j < points_.size(); ++j) {
                const Vec diff = points_[j] - points_[i];
                const double len = diff.norm();
                if (len < 1e-14 || 0.5 * len > radius_) continue;
                const Vec n = diff / len;
                const double rho = std::sqrt(radius_ * radius_ - 0.25 * len * len);
                Vec w = u - u.dot(n) * n;
                if (w.norm() < 1e-12) continue;  // then the optimum is also attained at a triple point
                consider(0.5 * (points_[i] + points_[j]) + rho * w.normalized());
            }
    }
    return best;
}

std::pair<double, double> BallHull::farthest_bounds(const Vec& y) const {
    if (empty_) return {kInfinity, kInfinity};
    double grid_max = -kInfinity;
    for (const Vec& u : grid_) grid_max = std::max(grid_max, support_X(u) - y.dot(u));
    double lower = std::max(grid_max, 0.0);
    for (const Vec& v : vertices_) lower = std::max(lower, (v - y).norm());
    return {lower, std::max(grid_max, 0.0) / grid_cos_};
}

bool BallHull::contains(const Vec& y, double tol) const {
    if (empty_) return true;
    const auto [lower, upper] = farthest_bounds(y);
    if (upper <= radius_ + tol) return true;
    if (lower > radius_ + tol) return false;
    // Within the certified band of width `accuracy_`: report the grid estimate.
    return lower <= radius_ + tol;
}

// ---------------------------------------------------------------------------
// Closed-form hulls

bool HullResult::contains(const Vec& y, double tol) const {
    return std::visit(
        [&](const auto& r) -> bool {
            using T = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<T, Polytope>) return khull::contains(ConvexBody(r), y, tol);
            else if constexpr (std::is_same_v<T, PolyhedralCone>) return khull::contains(ConvexBody(r), y, tol);
            else if constexpr (std::is_same_v<T, BallHull>) return r.contains(y, tol);
            else if constexpr (std::is_same_v<T, ConeBall>)
                return y.norm() <= r.radius + tol && khull::contains(ConvexBody(r.cone), y, tol);
            else if constexpr (std::is_same_v<T, MembershipOracle>) return r.contains(y);
            else return true;
        },
        rep);
}

HullResult k_hull_translations(const ConvexBody& K, const PointList& A) {
    require_dim(K, A, "k_hull_translations");
    const int d = K.dim();
    if (const auto* poly = K.get_if<Polytope>()) {
        // X = {x : a - x in K for all a}.
        std::vector<Facet> xs;
        for (const Facet& f : poly->facets()) {
            double m = -kInfinity;
            for (const Vec& a : A) m = std::max(m, f.normal.dot(a));
            xs.push_back({-f.normal, f.offset - m});
        }
        const Polytope X = Polytope::from_halfspaces(d, xs);
        if (X.is_empty()) return {WholeSpace{d}};
        std::vector<Facet> hull;
        for (const Facet& f : poly->facets()) {
            double m = kInfinity;
            for (const Vec& x : X.vertices()) m = std::min(m, f.normal.dot(x));
            hull.push_back({f.normal, f.offset + m});
        }
        return {Polytope::from_halfspaces(d, hull)};
    }
    if (const auto* ball = K.get_if<Ball>()) {
        // Only the radius matters: translates of B(c, r) are all balls of radius r.
        BallHull h(A, ball->radius);
        if (h.feasible_empty()) return {WholeSpace{d}};
        const double err = h.accuracy();
        return {std::move(h), false, err};
    }
    throw std::invalid_argument("k_hull_translations: body must be a polytope or a ball");
}

HullResult hull_translations_scalings(const ConvexBody& K, const PointList& A) {
    require_dim(K, A, "hull_translations_scalings");
    const int d = K.dim();
    if (K.kind() == BodyKind::Ball) return hull_full_affine(A);
    const auto* poly = K.get_if<Polytope>();
    if (!poly) throw std::invalid_argument("hull_translations_scalings: body must be a polytope or a ball");
    if (poly->affine_dim() < d) throw std::invalid_argument("hull_translations_scalings: polytope must be full-dimensional");

    // Face catalogue: each face is identified by its set of active facets.
    // The translates of S(K, v_F) containing A intersect to
    // {y : <y, u_i> <= max_a <a, u_i>, i active on F}.
    const auto& facets = poly->facets();
    std::vector<std::vector<int>> vertex_active;
    for (const Vec& v : poly->vertices()) {
        std::vector<int> act;
        for (int i = 0; i < static_cast<int>(facets.size()); ++i)
            if (std::abs(facets[i].normal.dot(v) - facets[i].offset) <= 1e-9) act.push_back(i);
        vertex_active.push_back(act);
    }
    std::set<std::vector<int>> faces(vertex_active.begin(), vertex_active.end());
    for (std::size_t i = 0; i < vertex_active.size(); ++i)
        for (std::size_t j = i + 1; j < vertex_active.size(); ++j) {
            std::vector<int> common;
            std::set_intersection(vertex_active[i].begin(), vertex_active[i].end(), vertex_active[j].begin(),
                                  vertex_active[j].end(), std::back_inserter(common));
            if (static_cast<int>(common.size()) >= d - 1 && !common.empty()) faces.insert(common);
        }
    for (int i = 0; i < static_cast<int>(facets.size()); ++i) faces.insert({i});

    std::set<int> used;
    for (const auto& face : faces) used.insert(face.begin(), face.end());
    std::vector<Facet> hull;
    for (int i : used) {
        double m = -kInfinity;
        for (const Vec& a : A) m = std::max(m, facets[i].normal.dot(a));
        hull.push_back({facets[i].normal, m});
    }
    return {Polytope::from_halfspaces(d, hull)};
}

HullResult hull_full_affine(const PointList& A) {
    require_points(A, "hull_full_affine");
    return {Polytope::from_vertices(A)};
}

HullResult hull_linear_ball(const PointList& A) {
    require_points(A, "hull_linear_ball");
    PointList sym = A;
    for (const Vec& a : A) sym.push_back(-a);
    return {Polytope::from_vertices(sym)};
}

HullResult positive_hull(const PointList& A) {
    require_points(A, "positive_hull");
    const int d = static_cast<int>(A.front().size());
    PointList dirs;
    for (const Vec& a : A) {
        if (a.norm() <= kGeoTol) continue;
        const Vec u = a.normalized();
        bool dup = false;
        for (const Vec& w : dirs) dup = dup || (w - u).norm() <= 1e-12;
        if (!dup) dirs.push_back(u);
    }
    // Drop generators lying in the cone of the remaining ones.
    for (std::size_t i = 0; i < dirs.size();) {
        Mat others(d, static_cast<Eigen::Index>(dirs.size() - 1));
        for (std::size_t j = 0, c = 0; j < dirs.size(); ++j)
            if (j != i) others.col(static_cast<Eigen::Index>(c++)) = dirs[j];
        if (dirs.size() > 1 && lp::in_conic_hull(others, dirs[i], 1e-10)) dirs.erase(dirs.begin() + static_cast<long>(i));
        else ++i;
    }
    return {PolyhedralCone{d, dirs, std::nullopt}};
}

HullResult spherical_hull_halfball(const PointList& A) {
    require_points(A, "spherical_hull_halfball");
    for (std::size_t i = 0; i < A.size(); ++i)
        if (A[i].norm() > 1.0 + kGeoTol || A[i](0) < -kGeoTol)
            throw std::invalid_argument("spherical_hull_halfball: point " + std::to_string(i) + " not in the upper half-ball");
    return {ConeBall{std::get<PolyhedralCone>(positive_hull(A).rep), 1.0}};
}

SphericalPolytope spherical_part(const PointList& A) {
    SphericalPolytope s;
    s.rays = *std::get<PolyhedralCone>(positive_hull(A).rep).generators;
    if (s.rays.empty()) return s;
    if (A.front().size() != 2) return s;
    std::vector<double> ang;
    for (const Vec& r : s.rays) ang.push_back(std::atan2(r(1), r(0)));
    std::sort(ang.begin(), ang.end());
    // The arc is the complement of the largest angular gap between rays.
    double gap = 2.0 * std::numbers::pi - (ang.back() - ang.front());
    std::size_t after = 0;
    for (std::size_t i = 1; i < ang.size(); ++i)
        if (ang[i] - ang[i - 1] > gap) {
            gap = ang[i] - ang[i - 1];
            after = i;
        }
    if (gap < std::numbers::pi - 1e-12) {
        s.whole_sphere = true;
        return s;
    }
    s.angle_lo = ang[after];
    s.angle_hi = after == 0 ? ang.back() : ang[after - 1] + 2.0 * std::numbers::pi;
    return s;
}

// ---------------------------------------------------------------------------
// Feasible sets

namespace detail {

FeasibleSet feasible_set_translations(const ConvexBody& K, const PointList& A) {
    const int d = K.dim();
    FeasibleSet fs;
    if (const auto* poly = K.get_if<Polytope>()) {
        std::vector<Facet> xs;
        for (const Facet& f : poly->facets()) {
            double m = -kInfinity;
            for (const Vec& a : A) m = std::max(m, f.normal.dot(a));
            xs.push_back({-f.normal, f.offset - m});
        }
        Polytope X = Polytope::from_halfspaces(d, xs);
        fs.empty = X.is_empty();
        fs.rep = std::move(X);
        return fs;
    }
    if (const auto* ball = K.get_if<Ball>()) {
        FeasibleSet::BallIntersection bi;
        for (const Vec& a : A) bi.centers.push_back(a - ball->center);
        bi.radius = ball->radius;
        fs.empty = BallHull(bi.centers, bi.radius).feasible_empty();
        fs.rep = std::move(bi);
        return fs;
    }
    throw std::invalid_argument("feasible_set: translations-only sets need a polytope or a ball");
}

}  // namespace detail

}  // namespace khull
