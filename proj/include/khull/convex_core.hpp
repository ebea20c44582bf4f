#pragma once

#include "khull/common.hpp"

#include <optional>
#include <string>
#include <variant>

namespace khull {

/// Unit vector; normalized on construction.
class Direction {
public:
    explicit Direction(const Vec& v);
    const Vec& vec() const { return u_; }
    Eigen::Index dim() const { return u_.size(); }

private:
    Vec u_;
};

/// Outer facet inequality <x, normal> <= offset, normal of unit length.
struct Facet {
    Vec normal;
    double offset = 0.0;
};

/// Convex polytope carrying both its vertex and facet description.
///
/// Lower-dimensional polytopes are allowed; their H-representation then
/// includes opposite pairs of normals pinning the affine hull. An empty
/// vertex list denotes the empty set.
class Polytope {
public:
    Polytope() = default;
    Polytope(int dim, PointList vertices, std::vector<Facet> facets);

    /// Convex hull of a finite point set (d <= 3).
    static Polytope from_vertices(const PointList& points);
    /// Bounded intersection of half-spaces (d <= 3); may be empty.
    static Polytope from_halfspaces(int dim, const std::vector<Facet>& halfspaces);
    static Polytope empty(int dim);
    static Polytope box(const Vec& lower, const Vec& upper);

    int dim() const { return dim_; }
    bool is_empty() const { return vertices_.empty(); }
    const PointList& vertices() const { return vertices_; }
    const std::vector<Facet>& facets() const { return facets_; }

    /// Dimension of the affine hull of the vertices (-1 for empty).
    int affine_dim() const;
    /// Vertices lying on facet i, ordered cyclically for d = 3.
    PointList facet_vertices(std::size_t i) const;
    double facet_area(std::size_t i) const;

    /// Checks V/H consistency: every vertex satisfies all facets and is
    /// tight on at least d of them; vertex support equals facet offsets.
    bool is_consistent(double tol = kGeoTol) const;

private:
    int dim_ = 0;
    PointList vertices_;
    std::vector<Facet> facets_;
};

/// Ball of given radius; centered at the origin unless stated otherwise.
struct Ball {
    double radius = 1.0;
    Vec center;
};

/// {x : |x| <= radius, <x, axis> >= 0}.
struct HalfBall {
    double radius = 1.0;
    Vec axis;
};

/// {x : <x, normal> <= offset}, normal of unit length.
struct HalfSpace {
    Vec normal;
    double offset = 0.0;
};

/// Closed convex cone with apex at the origin. At least one description is
/// present: `generators` means pos(generators) ({0} when the list is empty),
/// `normals` means {x : <x, n> <= 0 for all n} (R^d when the list is empty).
struct PolyhedralCone {
    int dim = 0;
    std::optional<PointList> generators;
    std::optional<PointList> normals;
};

enum class BodyKind { Polytope, Ball, HalfBall, HalfSpace, PolyhedralCone };

std::string to_string(BodyKind kind);

class ConvexBody {
public:
    using Rep = std::variant<Polytope, Ball, HalfBall, HalfSpace, PolyhedralCone>;

    ConvexBody(Polytope p) : rep_(std::move(p)) {}
    ConvexBody(Ball b);
    ConvexBody(HalfBall b);
    ConvexBody(HalfSpace h);
    ConvexBody(PolyhedralCone c);

    static ConvexBody ball(int dim, double radius);
    static ConvexBody half_ball(int dim, double radius = 1.0);
    static ConvexBody cube(int dim, double half_width = 1.0);
    static ConvexBody whole_space(int dim);

    BodyKind kind() const { return static_cast<BodyKind>(rep_.index()); }
    int dim() const;
    bool is_bounded() const;

    const Rep& rep() const { return rep_; }
    template <class T> const T& as() const { return std::get<T>(rep_); }
    template <class T> const T* get_if() const { return std::get_if<T>(&rep_); }

private:
    Rep rep_;
};

/// h(K, u) for any (not necessarily unit) u; +inf outside the barrier cone.
double support(const ConvexBody& body, const Vec& u);
double support_function(const ConvexBody& body, const Direction& u);

bool contains(const ConvexBody& body, const Vec& p, double tol = kGeoTol);

/// Polar set {y : h(K, y) <= 1}. Requires the origin in K and a result
/// expressible as a ConvexBody.
ConvexBody polar(const ConvexBody& body);

/// cl(union of lambda (K - v), lambda > 0).
ConvexBody supporting_cone(const ConvexBody& body, const Vec& v);

/// Cone of outer normals at a boundary point (polar of the supporting cone).
ConvexBody normal_cone(const ConvexBody& body, const Vec& v);

/// {x : A + x subset of K}.
ConvexBody minkowski_difference(const ConvexBody& body, const PointList& points);
ConvexBody minkowski_difference(const ConvexBody& body, const ConvexBody& other);

double volume(const ConvexBody& body);
double surface_area(const ConvexBody& body);
/// max |x| over x in K (finite bodies only).
double max_norm(const ConvexBody& body);

}  // namespace khull
