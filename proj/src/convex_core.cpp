#include "khull/convex_core.hpp"
#include "khull/lp.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace khull {
namespace {

Mat columns(const PointList& pts, Eigen::Index dim) {
    Mat m(dim, static_cast<Eigen::Index>(pts.size()));
    for (std::size_t i = 0; i < pts.size(); ++i) m.col(static_cast<Eigen::Index>(i)) = pts[i];
    return m;
}

double unit_ball_volume(int d) {
    return std::pow(std::numbers::pi, d / 2.0) / std::tgamma(d / 2.0 + 1.0);
}

Vec unit(const Vec& v) {
    const double n = v.norm();
    if (n == 0.0) throw std::invalid_argument("zero vector where a direction is required");
    return v / n;
}

// Cone description by normals, computing them from generators when needed
// is out of scope; callers pass cones carrying the description they need.
const PointList& cone_normals(const PolyhedralCone& c) {
    if (!c.normals) throw std::invalid_argument("cone has no facet description");
    return *c.normals;
}

}  // namespace

Direction::Direction(const Vec& v) : u_(unit(v)) {}

std::string to_string(BodyKind kind) {
    switch (kind) {
        case BodyKind::Polytope: return "polytope";
        case BodyKind::Ball: return "ball";
        case BodyKind::HalfBall: return "half_ball";
        case BodyKind::HalfSpace: return "half_space";
        case BodyKind::PolyhedralCone: return "cone";
    }
    return "unknown";
}

ConvexBody::ConvexBody(Ball b) {
    if (!(b.radius > 0.0)) throw std::invalid_argument("ball radius must be positive");
    if (b.center.size() == 0) throw std::invalid_argument("ball center must have a dimension");
    rep_ = std::move(b);
}

ConvexBody::ConvexBody(HalfBall b) {
    if (!(b.radius > 0.0)) throw std::invalid_argument("half-ball radius must be positive");
    b.axis = unit(b.axis);
    rep_ = std::move(b);
}

ConvexBody::ConvexBody(HalfSpace h) {
    const double n = h.normal.norm();
    if (n == 0.0) throw std::invalid_argument("half-space normal must be nonzero");
    h.normal /= n;
    h.offset /= n;
    rep_ = std::move(h);
}

ConvexBody::ConvexBody(PolyhedralCone c) {
    if (!c.generators && !c.normals) throw std::invalid_argument("cone needs generators or normals");
    rep_ = std::move(c);
}

ConvexBody ConvexBody::ball(int dim, double radius) { return Ball{radius, Vec::Zero(dim)}; }

ConvexBody ConvexBody::half_ball(int dim, double radius) {
    Vec axis = Vec::Zero(dim);
    axis(0) = 1.0;
    return HalfBall{radius, axis};
}

ConvexBody ConvexBody::cube(int dim, double half_width) {
    return Polytope::box(Vec::Constant(dim, -half_width), Vec::Constant(dim, half_width));
}

ConvexBody ConvexBody::whole_space(int dim) { return PolyhedralCone{dim, std::nullopt, PointList{}}; }

int ConvexBody::dim() const {
    return std::visit(
        [](const auto& b) -> int {
            using T = std::decay_t<decltype(b)>;
            if constexpr (std::is_same_v<T, Polytope>) return b.dim();
            else if constexpr (std::is_same_v<T, Ball>) return static_cast<int>(b.center.size());
            else if constexpr (std::is_same_v<T, HalfBall>) return static_cast<int>(b.axis.size());
            else if constexpr (std::is_same_v<T, HalfSpace>) return static_cast<int>(b.normal.size());
            else return b.dim;
        },
        rep_);
}

bool ConvexBody::is_bounded() const {
    switch (kind()) {
        case BodyKind::Polytope:
        case BodyKind::Ball:
        case BodyKind::HalfBall: return true;
        case BodyKind::HalfSpace: return false;
        case BodyKind::PolyhedralCone: {
            const auto& c = as<PolyhedralCone>();
            return c.generators && c.generators->empty();
        }
    }
    return false;
}

double support(const ConvexBody& body, const Vec& u) {
    switch (body.kind()) {
        case BodyKind::Polytope: {
            const auto& p = body.as<Polytope>();
            double h = -kInfinity;
            for (const Vec& v : p.vertices()) h = std::max(h, v.dot(u));
            return h;
        }
        case BodyKind::Ball: {
            const auto& b = body.as<Ball>();
            return b.center.dot(u) + b.radius * u.norm();
        }
        case BodyKind::HalfBall: {
            const auto& b = body.as<HalfBall>();
            const double along = u.dot(b.axis);
            if (along >= 0.0) return b.radius * u.norm();
            return b.radius * (u - along * b.axis).norm();
        }
        case BodyKind::HalfSpace: {
            const auto& h = body.as<HalfSpace>();
            const double along = u.dot(h.normal);
            if ((u - along * h.normal).norm() > kGeoTol * std::max(1.0, u.norm()) || along < 0.0) {
                return u.norm() == 0.0 ? 0.0 : kInfinity;
            }
            return along * h.offset;
        }
        case BodyKind::PolyhedralCone: {
            const auto& c = body.as<PolyhedralCone>();
            if (c.generators) {
                for (const Vec& g : *c.generators)
                    if (g.dot(u) > kGeoTol) return kInfinity;
                return 0.0;
            }
            return lp::in_conic_hull(columns(*c.normals, c.dim), u) ? 0.0 : kInfinity;
        }
    }
    return kInfinity;
}

double support_function(const ConvexBody& body, const Direction& u) { return support(body, u.vec()); }

bool contains(const ConvexBody& body, const Vec& p, double tol) {
    switch (body.kind()) {
        case BodyKind::Polytope: {
            const auto& poly = body.as<Polytope>();
            if (poly.is_empty()) return false;
            for (const Facet& f : poly.facets())
                if (f.normal.dot(p) > f.offset + tol) return false;
            return true;
        }
        case BodyKind::Ball: {
            const auto& b = body.as<Ball>();
            return (p - b.center).norm() <= b.radius + tol;
        }
        case BodyKind::HalfBall: {
            const auto& b = body.as<HalfBall>();
            return p.norm() <= b.radius + tol && p.dot(b.axis) >= -tol;
        }
        case BodyKind::HalfSpace: {
            const auto& h = body.as<HalfSpace>();
            return h.normal.dot(p) <= h.offset + tol;
        }
        case BodyKind::PolyhedralCone: {
            const auto& c = body.as<PolyhedralCone>();
            if (c.normals) {
                for (const Vec& n : *c.normals)
                    if (n.dot(p) > tol * std::max(1.0, n.norm())) return false;
                return true;
            }
            return lp::in_conic_hull(columns(*c.generators, c.dim), p, tol);
        }
    }
    return false;
}

ConvexBody polar(const ConvexBody& body) {
    const int d = body.dim();
    switch (body.kind()) {
        case BodyKind::Polytope: {
            const auto& poly = body.as<Polytope>();
            if (poly.is_empty()) throw std::invalid_argument("polar: empty polytope");
            const Vec origin = Vec::Zero(d);
            if (!contains(body, origin)) throw std::invalid_argument("polar: origin not in the body");
            bool interior = poly.affine_dim() == d;
            for (const Facet& f : poly.facets()) interior = interior && f.offset > kGeoTol;
            if (interior) {
                PointList vertices;
                for (const Facet& f : poly.facets()) vertices.push_back(f.normal / f.offset);
                std::vector<Facet> facets;
                for (const Vec& v : poly.vertices()) facets.push_back({v / v.norm(), 1.0 / v.norm()});
                return Polytope(d, std::move(vertices), std::move(facets));
            }
            PointList nonzero;
            for (const Vec& v : poly.vertices())
                if (v.norm() > kGeoTol) nonzero.push_back(v);
            if (nonzero.empty()) return ConvexBody::whole_space(d);
            if (nonzero.size() == 1 && poly.vertices().size() == 2) {
                const Vec& p = nonzero.front();
                return HalfSpace{p / p.norm(), 1.0 / p.norm()};
            }
            throw std::invalid_argument("polar: unbounded polar of a polytope with the origin on its boundary");
        }
        case BodyKind::Ball: {
            const auto& b = body.as<Ball>();
            if (b.center.norm() > kGeoTol) throw std::invalid_argument("polar: ball must be centered at the origin");
            return ConvexBody::ball(d, 1.0 / b.radius);
        }
        case BodyKind::HalfSpace: {
            const auto& h = body.as<HalfSpace>();
            if (h.offset < -kGeoTol) throw std::invalid_argument("polar: origin not in the half-space");
            if (h.offset <= kGeoTol) return PolyhedralCone{d, PointList{h.normal}, std::nullopt};
            return Polytope::from_vertices({Vec::Zero(d), h.normal / h.offset});
        }
        case BodyKind::PolyhedralCone: {
            const auto& c = body.as<PolyhedralCone>();
            return PolyhedralCone{d, c.normals, c.generators};
        }
        case BodyKind::HalfBall: break;
    }
    throw std::invalid_argument("polar: unsupported body kind " + to_string(body.kind()));
}

ConvexBody supporting_cone(const ConvexBody& body, const Vec& v) {
    const int d = body.dim();
    if (!contains(body, v)) throw std::invalid_argument("supporting_cone: point not in the body");
    switch (body.kind()) {
        case BodyKind::Polytope: {
            const auto& poly = body.as<Polytope>();
            PointList normals;
            for (const Facet& f : poly.facets())
                if (std::abs(f.normal.dot(v) - f.offset) <= kGeoTol) normals.push_back(f.normal);
            if (normals.empty()) return ConvexBody::whole_space(d);
            PointList gens;
            for (const Vec& w : poly.vertices())
                if ((w - v).norm() > kGeoTol) gens.push_back(w - v);
            return PolyhedralCone{d, gens, normals};
        }
        case BodyKind::Ball: {
            const auto& b = body.as<Ball>();
            const Vec r = v - b.center;
            if (r.norm() < b.radius - kGeoTol) return ConvexBody::whole_space(d);
            return HalfSpace{r / r.norm(), 0.0};
        }
        case BodyKind::HalfBall: {
            const auto& b = body.as<HalfBall>();
            PointList normals;
            if (v.norm() >= b.radius - kGeoTol) normals.push_back(v / v.norm());
            if (std::abs(v.dot(b.axis)) <= kGeoTol) normals.push_back(-b.axis);
            if (normals.empty()) return ConvexBody::whole_space(d);
            if (normals.size() == 1) return HalfSpace{normals.front(), 0.0};
            return PolyhedralCone{d, std::nullopt, normals};
        }
        case BodyKind::HalfSpace: {
            const auto& h = body.as<HalfSpace>();
            if (h.normal.dot(v) < h.offset - kGeoTol) return ConvexBody::whole_space(d);
            return HalfSpace{h.normal, 0.0};
        }
        case BodyKind::PolyhedralCone: {
            const auto& c = body.as<PolyhedralCone>();
            if (v.norm() <= kGeoTol) return body;
            PointList active;
            for (const Vec& n : cone_normals(c))
                if (std::abs(n.dot(v)) <= kGeoTol * std::max(1.0, n.norm())) active.push_back(n);
            return PolyhedralCone{d, std::nullopt, active};
        }
    }
    throw std::invalid_argument("supporting_cone: unsupported body");
}

ConvexBody normal_cone(const ConvexBody& body, const Vec& v) {
    const int d = body.dim();
    ConvexBody s = supporting_cone(body, v);
    if (auto* c = s.get_if<PolyhedralCone>(); c && c->normals && c->normals->empty())
        throw std::invalid_argument("normal_cone: point is not on the boundary");
    if (auto* h = s.get_if<HalfSpace>()) return PolyhedralCone{d, PointList{h->normal}, std::nullopt};
    const auto& c = s.as<PolyhedralCone>();
    // N(K, v) = S(K, v)^o: generated by the active normals, cut out by the
    // generators of the supporting cone.
    PolyhedralCone n{d, c.normals, std::nullopt};
    if (c.generators) n.normals = c.generators;
    return n;
}

ConvexBody minkowski_difference(const ConvexBody& body, const PointList& points) {
    const int d = body.dim();
    if (points.empty()) throw std::invalid_argument("minkowski_difference: empty point set");
    switch (body.kind()) {
        case BodyKind::Polytope: {
            const auto& poly = body.as<Polytope>();
            std::vector<Facet> facets;
            for (const Facet& f : poly.facets()) {
                double m = -kInfinity;
                for (const Vec& a : points) m = std::max(m, f.normal.dot(a));
                facets.push_back({f.normal, f.offset - m});
            }
            return Polytope::from_halfspaces(d, facets);
        }
        case BodyKind::Ball: {
            const auto& b = body.as<Ball>();
            if (points.size() == 1) return Ball{b.radius, b.center - points.front()};
            break;
        }
        case BodyKind::HalfSpace: {
            const auto& h = body.as<HalfSpace>();
            double m = -kInfinity;
            for (const Vec& a : points) m = std::max(m, h.normal.dot(a));
            return HalfSpace{h.normal, h.offset - m};
        }
        default: break;
    }
    throw std::invalid_argument("minkowski_difference: unsupported combination");
}

ConvexBody minkowski_difference(const ConvexBody& body, const ConvexBody& other) {
    const int d = body.dim();
    if (auto* p = other.get_if<Polytope>()) return minkowski_difference(body, p->vertices());
    if (auto* ball = other.get_if<Ball>()) {
        if (auto* poly = body.get_if<Polytope>()) {
            std::vector<Facet> facets;
            for (const Facet& f : poly->facets())
                facets.push_back({f.normal, f.offset - ball->radius - f.normal.dot(ball->center)});
            return Polytope::from_halfspaces(d, facets);
        }
        if (auto* outer = body.get_if<Ball>()) {
            if (outer->radius < ball->radius - kGeoTol) return Polytope::empty(d);
            if (outer->radius <= ball->radius + kGeoTol)
                return Polytope::from_vertices({outer->center - ball->center});
            return Ball{outer->radius - ball->radius, outer->center - ball->center};
        }
    }
    throw std::invalid_argument("minkowski_difference: unsupported combination");
}

double volume(const ConvexBody& body) {
    const int d = body.dim();
    switch (body.kind()) {
        case BodyKind::Polytope: {
            const auto& p = body.as<Polytope>();
            if (p.affine_dim() < d) return 0.0;
            double v = 0.0;
            for (std::size_t i = 0; i < p.facets().size(); ++i) v += p.facets()[i].offset * p.facet_area(i);
            return v / d;
        }
        case BodyKind::Ball: return unit_ball_volume(d) * std::pow(body.as<Ball>().radius, d);
        case BodyKind::HalfBall: return 0.5 * unit_ball_volume(d) * std::pow(body.as<HalfBall>().radius, d);
        default: return kInfinity;
    }
}

double surface_area(const ConvexBody& body) {
    const int d = body.dim();
    switch (body.kind()) {
        case BodyKind::Polytope: {
            const auto& p = body.as<Polytope>();
            double s = 0.0;
            for (std::size_t i = 0; i < p.facets().size(); ++i) s += p.facet_area(i);
            return s;
        }
        case BodyKind::Ball: {
            const double r = body.as<Ball>().radius;
            return d * unit_ball_volume(d) * std::pow(r, d - 1);
        }
        case BodyKind::HalfBall: {
            const double r = body.as<HalfBall>().radius;
            return 0.5 * d * unit_ball_volume(d) * std::pow(r, d - 1) + unit_ball_volume(d - 1) * std::pow(r, d - 1);
        }
        default: return kInfinity;
    }
}

double max_norm(const ConvexBody& body) {
    switch (body.kind()) {
        case BodyKind::Polytope: {
            double m = 0.0;
            for (const Vec& v : body.as<Polytope>().vertices()) m = std::max(m, v.norm());
            return m;
        }
        case BodyKind::Ball: return body.as<Ball>().center.norm() + body.as<Ball>().radius;
        case BodyKind::HalfBall: return body.as<HalfBall>().radius;
        default: return kInfinity;
    }
}

}  // namespace khull
