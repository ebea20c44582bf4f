#pragma once

#include "khull/convex_core.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <variant>

namespace khull {

/// H = T x G. Every family contains (0, I).
struct HullFamily {
    enum class Translations { Full, Zero, Subspace };
    enum class Linear { Identity, PositiveScalings, ScalingsAndRotations, SpecialOrthogonal, GeneralLinear, DiagonalPositive };

    Translations translations = Translations::Full;
    Linear linear = Linear::Identity;
    /// Columns span T when translations == Subspace.
    Mat translation_basis;

    static HullFamily k_hull() { return {Translations::Full, Linear::Identity, {}}; }
    static HullFamily translations_scalings() { return {Translations::Full, Linear::PositiveScalings, {}}; }
    static HullFamily full_affine() { return {Translations::Full, Linear::GeneralLinear, {}}; }
    static HullFamily linear_group() { return {Translations::Zero, Linear::GeneralLinear, {}}; }
    static HullFamily rotations() { return {Translations::Zero, Linear::SpecialOrthogonal, {}}; }

    /// Names accepted on the command line: k-hull, translations-scalings,
    /// full-affine, linear, rotations, similarities, diagonal.
    static HullFamily from_name(const std::string& name);
    std::string name() const;

    /// Number of free parameters of the search parameterization in R^d.
    int parameter_count(int d) const;
};

/// Sentinel for conv_{K,H}(A) when no image of K contains A.
struct WholeSpace {
    int dim = 0;
};

/// Intersection of the balls B(x, r) over all centers x in the feasible set
/// X = intersection of B(a, r), a in A. Membership of y reduces to
/// max_{x in X} |x - y| <= r, certified on a direction grid.
class BallHull {
public:
    BallHull(PointList points, double radius, double accuracy = 1e-4);

    int dim() const { return static_cast<int>(points_.front().size()); }
    double radius() const { return radius_; }
    const PointList& points() const { return points_; }
    bool feasible_empty() const { return empty_; }

    /// Exact support function of X.
    double support_X(const Vec& u) const;
    /// Certified bounds lower <= max_{x in X} |x - y| <= upper.
    std::pair<double, double> farthest_bounds(const Vec& y) const;
    bool contains(const Vec& y, double tol = kGeoTol) const;
    double accuracy() const { return accuracy_; }

private:
    bool in_X(const Vec& x, double tol) const;

    PointList points_;
    double radius_;
    double accuracy_;
    bool empty_ = false;
    PointList grid_;
    double grid_cos_ = 1.0;
    PointList vertices_;  // pairwise (d = 2) or triple (d = 3) sphere intersections lying in X
};

/// pos(G) intersected with the closed ball of given radius.
struct ConeBall {
    PolyhedralCone cone;
    double radius = 1.0;
};

struct MembershipOracle {
    int dim = 0;
    std::function<bool(const Vec&)> contains;
};

struct HullResult {
    using Rep = std::variant<Polytope, PolyhedralCone, BallHull, ConeBall, MembershipOracle, WholeSpace>;

    Rep rep;
    bool exact = true;
    /// Absolute accuracy of membership answers when not exact.
    double error = 0.0;

    bool is_whole_space() const { return std::holds_alternative<WholeSpace>(rep); }
    bool contains(const Vec& y, double tol = kGeoTol) const;
};

/// Translations only. Exact polytope for polytopal K; BallHull for balls.
HullResult k_hull_translations(const ConvexBody& K, const PointList& A);

/// Translations and positive scalings, by intersecting translated
/// supporting cones over the face catalogue of a polytope; conv(A) for a ball.
HullResult hull_translations_scalings(const ConvexBody& K, const PointList& A);

/// Convex hull (translations with scalings and rotations or more).
HullResult hull_full_affine(const PointList& A);

/// K = unit ball, T = {0}, G = GL_d: conv(A u -A).
HullResult hull_linear_ball(const PointList& A);

/// K = half-space with the origin on its boundary, G = SO_d: cl pos(A).
HullResult positive_hull(const PointList& A);

/// K = upper unit half-ball, G = SO_d: cl pos(A) n B_1.
HullResult spherical_hull_halfball(const PointList& A);

/// Spherical part cl pos(A) n S^{d-1}, described by its extreme unit rays.
/// In the plane, `angles` holds the arc [lo, hi] with lo in (-pi, pi].
struct SphericalPolytope {
    PointList rays;
    bool whole_sphere = false;
    double angle_lo = 0.0;
    double angle_hi = 0.0;
};
SphericalPolytope spherical_part(const PointList& A);

/// Transformation (x, g) acting as y -> g(y + x).
struct Transform {
    Vec x;
    Mat g;
};

/// True when every a in A lies in g(K + x) within tol.
bool image_contains(const ConvexBody& K, const Transform& t, const Vec& p, double tol = kGeoTol);

struct SearchBudget {
    int starts = 64;
    int evaluations_per_start = 4000;
    std::uint64_t seed = 1;
};

struct MembershipAnswer {
    enum class Verdict { Inside, Outside, Unknown };
    Verdict verdict = Verdict::Unknown;
    /// Set for Outside: A in g(K + x) and z not in g(K + x), verified exactly.
    std::optional<Transform> witness;
};

/// Searches for a member of H whose image of K contains A but not z.
/// Inside means no witness and every start either converged or stalled at a
/// separation margin below -1e-3 times the problem length. Unknown otherwise.
MembershipAnswer generic_hull_membership(const ConvexBody& K, const HullFamily& H, const PointList& A,
                                         const Vec& z, const SearchBudget& budget = {});

/// K minus_{K,H} A = {(x, g) in H : A subset g(K + x)}.
struct FeasibleSet {
    struct BallIntersection {
        PointList centers;
        double radius = 0.0;
    };
    std::variant<Polytope, BallIntersection, std::vector<Transform>> rep;
    bool empty = false;
};

/// Exact for translations only (X = intersection of a - K); otherwise a cloud
/// of up to `samples` verified transforms found by randomized search.
FeasibleSet feasible_set(const ConvexBody& K, const HullFamily& H, const PointList& A, int samples = 100,
                         std::uint64_t seed = 1);

namespace detail {
FeasibleSet feasible_set_translations(const ConvexBody& K, const PointList& A);
}

}  // namespace khull
