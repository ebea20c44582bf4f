#include "khull/convex_core.hpp"
#include "khull/lp.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace khull {
namespace {

struct AffineFrame {
    Vec origin;
    Mat basis;  // d x k, orthonormal columns
};

AffineFrame affine_frame(const PointList& points) {
    const Eigen::Index d = points.front().size();
    AffineFrame frame{points.front(), Mat(d, 0)};
    if (points.size() < 2) return frame;
    Mat diffs(d, static_cast<Eigen::Index>(points.size()) - 1);
    double scale = 0.0;
    for (std::size_t i = 1; i < points.size(); ++i) {
        diffs.col(static_cast<Eigen::Index>(i) - 1) = points[i] - frame.origin;
        scale = std::max(scale, diffs.col(static_cast<Eigen::Index>(i) - 1).norm());
    }
    if (scale == 0.0) return frame;
    Eigen::JacobiSVD<Mat> svd(diffs, Eigen::ComputeFullU);
    const Vec& s = svd.singularValues();
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > kGeoTol * std::max(1.0, scale)) ++rank;
    frame.basis = svd.matrixU().leftCols(rank);
    return frame;
}

PointList dedupe(const PointList& points, double tol) {
    PointList out;
    for (const Vec& p : points) {
        bool seen = false;
        for (const Vec& q : out) {
            if ((p - q).lpNorm<Eigen::Infinity>() <= tol) {
                seen = true;
                break;
            }
        }
        if (!seen) out.push_back(p);
    }
    return out;
}

double cross2(const Vec& o, const Vec& a, const Vec& b) {
    return (a(0) - o(0)) * (b(1) - o(1)) - (a(1) - o(1)) * (b(0) - o(0));
}

// Andrew's monotone chain; returns counter-clockwise hull without collinear points.
PointList monotone_chain(PointList pts) {
    std::sort(pts.begin(), pts.end(), [](const Vec& a, const Vec& b) {
        return a(0) < b(0) || (a(0) == b(0) && a(1) < b(1));
    });
    if (pts.size() < 3) return pts;
    PointList hull(2 * pts.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        while (k >= 2 && cross2(hull[k - 2], hull[k - 1], pts[i]) <= 1e-14) --k;
        hull[k++] = pts[i];
    }
    for (std::size_t i = pts.size() - 1, t = k + 1; i > 0; --i) {
        while (k >= t && cross2(hull[k - 2], hull[k - 1], pts[i - 1]) <= 1e-14) --k;
        hull[k++] = pts[i - 1];
    }
    hull.resize(k - 1);
    return hull;
}

// Full-dimensional hull in R^k, k in {1, 2, 3}.
void full_dim_hull(const PointList& pts, PointList& vertices, std::vector<Facet>& facets) {
    const Eigen::Index k = pts.front().size();
    vertices.clear();
    facets.clear();
    if (k == 1) {
        auto [lo, hi] = std::minmax_element(pts.begin(), pts.end(),
                                            [](const Vec& a, const Vec& b) { return a(0) < b(0); });
        vertices = {*lo, *hi};
        facets = {{make_vec({1.0}), (*hi)(0)}, {make_vec({-1.0}), -(*lo)(0)}};
        return;
    }
    if (k == 2) {
        vertices = monotone_chain(pts);
        for (std::size_t i = 0; i < vertices.size(); ++i) {
            const Vec& a = vertices[i];
            const Vec& b = vertices[(i + 1) % vertices.size()];
            Vec n = make_vec({b(1) - a(1), a(0) - b(0)});
            n.normalize();
            facets.push_back({n, n.dot(a)});
        }
        return;
    }
    if (k != 3) throw std::invalid_argument("convex hull supports dimension <= 3");

    double scale = 0.0;
    for (const Vec& p : pts) scale = std::max(scale, p.norm());
    const double tol = kGeoTol * std::max(1.0, scale);
    const std::size_t n = pts.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            for (std::size_t l = j + 1; l < n; ++l) {
                Eigen::Vector3d a = pts[i], b = pts[j], c = pts[l];
                Eigen::Vector3d nrm = (b - a).cross(c - a);
                const double len = nrm.norm();
                if (len <= tol * std::max(1.0, scale)) continue;
                nrm /= len;
                const double off = nrm.dot(a);
                bool above = false, below = false;
                for (const Vec& p : pts) {
                    const double s = nrm.dot(Eigen::Vector3d(p)) - off;
                    if (s > tol) above = true;
                    if (s < -tol) below = true;
                    if (above && below) break;
                }
                if (above && below) continue;
                Vec normal = above ? Vec(-nrm) : Vec(nrm);
                const double offset = above ? -off : off;
                bool duplicate = false;
                for (const Facet& f : facets) {
                    if ((f.normal - normal).norm() <= 1e-9 && std::abs(f.offset - offset) <= tol) {
                        duplicate = true;
                        break;
                    }
                }
                if (!duplicate) facets.push_back({normal, offset});
            }
        }
    }
    for (const Vec& p : pts) {
        Mat incident(3, 0);
        for (const Facet& f : facets) {
            if (std::abs(f.normal.dot(p) - f.offset) <= tol) {
                incident.conservativeResize(3, incident.cols() + 1);
                incident.col(incident.cols() - 1) = f.normal;
            }
        }
        if (incident.cols() >= 3 && Eigen::FullPivLU<Mat>(incident).rank() == 3) vertices.push_back(p);
    }
}

}  // namespace

Polytope::Polytope(int dim, PointList vertices, std::vector<Facet> facets)
    : dim_(dim), vertices_(std::move(vertices)), facets_(std::move(facets)) {}

Polytope Polytope::empty(int dim) {
    // 0 <= -1 keeps membership tests consistent with the empty vertex list.
    Vec n = Vec::Zero(dim);
    n(0) = 1.0;
    return Polytope(dim, {}, {{n, -1.0}, {-n, -1.0}});
}

Polytope Polytope::box(const Vec& lower, const Vec& upper) {
    const int d = static_cast<int>(lower.size());
    std::vector<Facet> facets;
    for (int i = 0; i < d; ++i) {
        Vec e = Vec::Zero(d);
        e(i) = 1.0;
        facets.push_back({e, upper(i)});
        facets.push_back({-e, -lower(i)});
    }
    return from_halfspaces(d, facets);
}

Polytope Polytope::from_vertices(const PointList& points) {
    if (points.empty()) throw std::invalid_argument("from_vertices: empty point set");
    const int d = static_cast<int>(points.front().size());
    if (d > 3) throw std::invalid_argument("from_vertices: dimension must be <= 3");
    PointList pts = dedupe(points, 1e-12);
    AffineFrame frame = affine_frame(pts);
    const Eigen::Index k = frame.basis.cols();

    PointList vertices;
    std::vector<Facet> facets;
    if (k > 0) {
        PointList local;
        local.reserve(pts.size());
        for (const Vec& p : pts) local.push_back(frame.basis.transpose() * (p - frame.origin));
        PointList local_vertices;
        std::vector<Facet> local_facets;
        full_dim_hull(local, local_vertices, local_facets);
        for (const Vec& v : local_vertices) vertices.push_back(frame.origin + frame.basis * v);
        for (const Facet& f : local_facets) {
            Vec n = frame.basis * f.normal;
            facets.push_back({n, f.offset + n.dot(frame.origin)});
        }
    } else {
        vertices.push_back(frame.origin);
    }
    if (k < d) {
        // Pin the affine hull with opposite normals spanning its complement.
        Mat proj = Mat::Identity(d, d) - frame.basis * frame.basis.transpose();
        Eigen::JacobiSVD<Mat> svd(proj, Eigen::ComputeFullU);
        for (Eigen::Index i = 0; i < d - k; ++i) {
            Vec w = svd.matrixU().col(i);
            facets.push_back({w, w.dot(frame.origin)});
            facets.push_back({-w, -w.dot(frame.origin)});
        }
    }
    return Polytope(d, std::move(vertices), std::move(facets));
}

Polytope Polytope::from_halfspaces(int dim, const std::vector<Facet>& halfspaces) {
    if (dim > 3 || dim < 1) throw std::invalid_argument("from_halfspaces: dimension must be in [1, 3]");
    std::vector<Facet> hs;
    for (const Facet& f : halfspaces) {
        const double len = f.normal.norm();
        if (len == 0.0) {
            if (f.offset < -kGeoTol) return empty(dim);
            continue;
        }
        hs.push_back({f.normal / len, f.offset / len});
    }
    const std::size_t m = hs.size();
    const Eigen::Index d = dim;

    // Boundedness (and feasibility) via coordinate LPs.
    Mat A(static_cast<Eigen::Index>(m), d);
    Vec b(static_cast<Eigen::Index>(m));
    for (std::size_t i = 0; i < m; ++i) {
        A.row(static_cast<Eigen::Index>(i)) = hs[i].normal.transpose();
        b(static_cast<Eigen::Index>(i)) = hs[i].offset;
    }
    for (Eigen::Index j = 0; j < d; ++j) {
        for (double s : {1.0, -1.0}) {
            Vec c = Vec::Zero(d);
            c(j) = s;
            lp::Result r = lp::maximize(c, A, b);
            if (r.status == lp::Status::Infeasible) return empty(dim);
            if (r.status == lp::Status::Unbounded)
                throw std::invalid_argument("from_halfspaces: intersection is unbounded");
        }
    }

    PointList candidates;
    std::vector<std::size_t> idx(static_cast<std::size_t>(d));
    std::function<void(std::size_t, std::size_t)> choose = [&](std::size_t start, std::size_t depth) {
        if (depth == idx.size()) {
            Mat M(d, d);
            Vec rhs(d);
            for (Eigen::Index r = 0; r < d; ++r) {
                M.row(r) = hs[idx[static_cast<std::size_t>(r)]].normal.transpose();
                rhs(r) = hs[idx[static_cast<std::size_t>(r)]].offset;
            }
            Eigen::FullPivLU<Mat> lu(M);
            if (lu.rank() < d) return;
            Vec x = lu.solve(rhs);
            for (const Facet& f : hs)
                if (f.normal.dot(x) > f.offset + kGeoTol) return;
            candidates.push_back(x);
            return;
        }
        for (std::size_t i = start; i < m; ++i) {
            idx[depth] = i;
            choose(i + 1, depth + 1);
        }
    };
    choose(0, 0);
    PointList vertices = dedupe(candidates, 1e-9);
    if (vertices.empty()) return empty(dim);

    AffineFrame frame = affine_frame(vertices);
    if (frame.basis.cols() < d) return from_vertices(vertices);

    std::vector<Facet> facets;
    for (const Facet& f : hs) {
        PointList tight;
        for (const Vec& v : vertices)
            if (std::abs(f.normal.dot(v) - f.offset) <= 1e-8) tight.push_back(v);
        if (static_cast<Eigen::Index>(tight.size()) < d) continue;
        if (affine_frame(tight).basis.cols() != d - 1) continue;
        bool duplicate = false;
        for (const Facet& g : facets)
            if ((g.normal - f.normal).norm() <= 1e-9) duplicate = true;
        if (!duplicate) facets.push_back(f);
    }
    return Polytope(dim, std::move(vertices), std::move(facets));
}

int Polytope::affine_dim() const {
    if (vertices_.empty()) return -1;
    return static_cast<int>(affine_frame(vertices_).basis.cols());
}

PointList Polytope::facet_vertices(std::size_t i) const {
    const Facet& f = facets_.at(i);
    PointList out;
    for (const Vec& v : vertices_)
        if (std::abs(f.normal.dot(v) - f.offset) <= 1e-8) out.push_back(v);
    if (dim_ == 3 && out.size() > 2) {
        Vec c = Vec::Zero(3);
        for (const Vec& v : out) c += v;
        c /= static_cast<double>(out.size());
        Eigen::Vector3d n = f.normal;
        Eigen::Vector3d e1 = Eigen::Vector3d(out.front() - c).normalized();
        Eigen::Vector3d e2 = n.cross(e1);
        std::sort(out.begin(), out.end(), [&](const Vec& a, const Vec& b) {
            Eigen::Vector3d pa = a - c, pb = b - c;
            return std::atan2(pa.dot(e2), pa.dot(e1)) < std::atan2(pb.dot(e2), pb.dot(e1));
        });
    }
    return out;
}

double Polytope::facet_area(std::size_t i) const {
    PointList fv = facet_vertices(i);
    if (dim_ == 1) return 1.0;
    if (dim_ == 2) return fv.size() == 2 ? (fv[0] - fv[1]).norm() : 0.0;
    double area = 0.0;
    for (std::size_t j = 1; j + 1 < fv.size(); ++j) {
        Eigen::Vector3d a = fv[j] - fv[0], b = fv[j + 1] - fv[0];
        area += 0.5 * a.cross(b).norm();
    }
    return area;
}

bool Polytope::is_consistent(double tol) const {
    for (const Vec& v : vertices_) {
        int tight = 0;
        for (const Facet& f : facets_) {
            const double s = f.normal.dot(v) - f.offset;
            if (s > tol) return false;
            if (std::abs(s) <= tol) ++tight;
        }
        if (tight < dim_) return false;
    }
    if (affine_dim() == dim_) {
        for (const Facet& f : facets_) {
            double h = -kInfinity;
            for (const Vec& v : vertices_) h = std::max(h, f.normal.dot(v));
            if (std::abs(h - f.offset) > tol) return false;
        }
    }
    return true;
}

}  // namespace khull
