#include "khull/zero_cell.hpp"

#include "khull/lp.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

namespace khull {
namespace {

Vec ball_center(const Ball& b, int d) { return b.center.size() == d ? b.center : Vec::Zero(d); }

Vec normal_of(const Vec& eta, const Vec& u) { return TangentPoint{u, u * eta.transpose()}.flatten(); }

PointList unit_grid(int d) {
    PointList out;
    if (d == 1) return {Vec::Constant(1, 1.0), Vec::Constant(1, -1.0)};
    if (d == 2) {
        const int n = 64;
        for (int k = 0; k < n; ++k) {
            const double a = 2.0 * M_PI * k / n;
            out.push_back((Vec(2) << std::cos(a), std::sin(a)).finished());
        }
        return out;
    }
    const int m = 6;
    for (int axis = 0; axis < 3; ++axis)
        for (double sign : {-1.0, 1.0})
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j) {
                    Vec v(3);
                    v(axis) = sign;
                    v((axis + 1) % 3) = -1.0 + (2.0 * i + 1.0) / m;
                    v((axis + 2) % 3) = -1.0 + (2.0 * j + 1.0) / m;
                    out.push_back(v.normalized());
                }
    return out;
}

struct SphereMax {
    double value;
    Vec y;
};

// max over |y| = 1 of y^T A y + g^T y, A symmetric. Secular equation
// |(lambda I - A)^{-1} g / 2| = 1 with lambda >= lambda_max, hard case included.
SphereMax sphere_quadratic_max(const Mat& A, const Vec& g) {
    const Eigen::Index d = A.rows();
    Eigen::SelfAdjointEigenSolver<Mat> es(A);
    const Vec lam = es.eigenvalues();
    const Mat Q = es.eigenvectors();
    const Vec gp = Q.transpose() * g;
    const double lmax = lam(d - 1);
    const double scale = std::max({1.0, lam.cwiseAbs().maxCoeff(), g.norm()});
    const double eig_tol = 1e-12 * scale;

    double top_weight = 0.0;
    for (Eigen::Index i = 0; i < d; ++i)
        if (lmax - lam(i) <= eig_tol) top_weight += gp(i) * gp(i);

    auto y_at = [&](double l) {
        Vec c(d);
        for (Eigen::Index i = 0; i < d; ++i) c(i) = (l - lam(i) > 0.0) ? gp(i) / (2.0 * (l - lam(i))) : 0.0;
        return c;
    };
    Vec c;
    if (std::sqrt(top_weight) <= 1e-13 * scale) {
        // Hard case candidate: lambda = lambda_max, fill the top eigenspace.
        Vec base = Vec::Zero(d);
        for (Eigen::Index i = 0; i < d; ++i)
            if (lmax - lam(i) > eig_tol) base(i) = gp(i) / (2.0 * (lmax - lam(i)));
        if (base.squaredNorm() <= 1.0) {
            base(d - 1) = std::sqrt(1.0 - base.squaredNorm());
            c = base;
        }
    }
    if (c.size() == 0) {
        double lo = lmax, hi = lmax + 0.5 * g.norm() + eig_tol;
        for (int it = 0; it < 200 && hi - lo > 1e-15 * scale; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (y_at(mid).squaredNorm() > 1.0) lo = mid;
            else hi = mid;
        }
        c = y_at(hi);
        c /= c.norm();
    }
    Vec y = Q * c;
    return {y.dot(A * y) + g.dot(y), y};
}

}  // namespace

RecessionConeTK::RecessionConeTK(const ConvexBody& K) : body_(K) {
    const int d = K.dim();
    if (const auto* p = K.get_if<Polytope>()) {
        if (p->is_empty()) throw std::invalid_argument("recession cone: empty polytope");
        for (const Facet& f : p->facets())
            for (const Vec& v : p->vertices())
                if (std::abs(v.dot(f.normal) - f.offset) <= 1e-9 * std::max(1.0, std::abs(f.offset)))
                    normals_.push_back(normal_of(v, f.normal));
    } else if (const auto* b = K.get_if<Ball>()) {
        finite_ = false;
        const Vec c = ball_center(*b, d);
        for (const Vec& u : unit_grid(d)) normals_.push_back(normal_of(c + b->radius * u, u));
    } else {
        throw std::invalid_argument("recession cone: only polytopes and balls are supported");
    }
}

double RecessionConeTK::max_violation(const Vec& p, NormalBundleMark* where) const {
    const int d = body_.dim();
    if (p.size() != tangent_dim(d)) throw std::invalid_argument("max_violation: dimension mismatch");
    const TangentPoint t = TangentPoint::unflatten(p, d);
    if (const auto* b = body_.get_if<Ball>()) {
        // -<C (c + r y) + x, y> = y^T (-r S) y - (C c + x)^T y.
        const Vec c = ball_center(*b, d);
        const Mat S = 0.5 * (t.C + t.C.transpose());
        const SphereMax m = sphere_quadratic_max(-b->radius * S, -(t.C * c + t.x));
        if (where) *where = {0.0, c + b->radius * m.y, m.y};
        return m.value;
    }
    const auto& poly = body_.as<Polytope>();
    double worst = -kInfinity;
    for (const Facet& f : poly.facets())
        for (const Vec& v : poly.vertices()) {
            if (std::abs(v.dot(f.normal) - f.offset) > 1e-9 * std::max(1.0, std::abs(f.offset))) continue;
            const double val = -(t.C * v + t.x).dot(f.normal);
            if (val > worst) {
                worst = val;
                if (where) *where = {0.0, v, f.normal};
            }
        }
    return worst;
}

bool RecessionConeTK::contains(const Vec& p, double tol) const {
    return max_violation(p) <= tol * std::max(1.0, p.norm());
}

RecessionConeTK recession_cone_TK(const ConvexBody& K) { return RecessionConeTK(K); }

namespace {

// Maximizes +-c_i over {N c <= 0, |c_j| <= 1}; returns the first coordinate
// LP whose value is positive, i.e. a nonzero point of the cone.
std::optional<Vec> nonzero_point(const std::vector<Vec>& rows, int k) {
    const Eigen::Index m = static_cast<Eigen::Index>(rows.size());
    Mat A(m + 2 * k, k);
    Vec b = Vec::Zero(m + 2 * k);
    for (Eigen::Index r = 0; r < m; ++r) A.row(r) = rows[static_cast<std::size_t>(r)].transpose();
    A.block(m, 0, k, k) = Mat::Identity(k, k);
    A.block(m + k, 0, k, k) = -Mat::Identity(k, k);
    b.tail(2 * k).setOnes();
    for (int i = 0; i < k; ++i)
        for (double sign : {1.0, -1.0}) {
            Vec c = Vec::Zero(k);
            c(i) = sign;
            const lp::Result r = lp::maximize(c, A, b);
            if (r.status == lp::Status::Optimal && r.value > 1e-7) return r.x;
        }
    return std::nullopt;
}

}  // namespace

BoundednessCertificate is_bounded(const ConvexBody& K, const ConeSpec& cone) {
    if (cone.d != K.dim()) throw std::invalid_argument("is_bounded: cone dimension mismatch");
    const RecessionConeTK T(K);
    const int k = cone.size();
    BoundednessCertificate cert;
    if (k == 0) {
        cert.bounded = true;
        cert.exact = !T.finite() ? true : false;
        return cert;
    }
    // Reflected cone: <n, p> <= 0 for the normals n of T_K.
    std::vector<Vec> rows;
    for (const Vec& s : cone.signs) rows.push_back(cone.to_coords(s));
    for (const Vec& n : T.normals()) {
        const Vec r = cone.to_coords(n);
        if (r.norm() > 1e-14) rows.push_back(r);
    }

    if (T.finite()) {
        // Exact for the cone of a polytope, only necessary for the zero cell.
        cert.exact = false;
        const auto c = nonzero_point(rows, k);
        cert.bounded = !c.has_value();
        if (c) cert.direction = cone.from_coords(*c);
        return cert;
    }

    // Interior direction of the reflected cone inside the subspace, used to
    // repair near-feasible candidates: violation is sublinear, so adding
    // mu r with mu = viol(p) / -viol(r) lands in the cone exactly.
    Vec repair = Vec::Zero(cone.basis.rows());
    {
        TangentPoint neg = TangentPoint::zero(K.dim());
        neg.C = -Mat::Identity(K.dim(), K.dim());
        repair = cone.from_coords(cone.to_coords(neg.flatten()));
    }
    const double repair_viol = repair.norm() > 1e-12 && cone.contains(repair, 1e-12) ? T.max_violation(-repair) : 0.0;

    const double tol = 1e-9;
    for (int iter = 0; iter < 2000; ++iter) {
        const auto c = nonzero_point(rows, k);
        if (!c) {
            cert.bounded = true;
            return cert;
        }
        const Vec p = cone.from_coords(*c);
        NormalBundleMark where;
        const double viol = T.max_violation(-p, &where);
        if (viol <= tol) {
            cert.direction = p;
            return cert;
        }
        if (repair_viol < -tol) {
            const Vec q = p + (viol / -repair_viol) * repair;
            if (q.norm() > 1e-9 && T.max_violation(-q) <= tol && cone.contains(q, 1e-9)) {
                cert.direction = q;
                return cert;
            }
        }
        rows.push_back(cone.to_coords(normal_of(where.eta, where.u)));
        ++cert.cuts;
    }
    // Cut budget exhausted: the last outer approximation was still unbounded.
    cert.exact = false;
    return cert;
}

BoundednessCertificate is_bounded(const HalfSpaceSystem& S, const ConeSpec& cone) {
    const HalfSpaceSystem R = S.cone ? S : restrict_to_cone(S, cone);
    if (R.cone && *R.cone != cone.name) throw std::invalid_argument("is_bounded: system restricted to another cone");
    std::vector<Vec> rows;
    for (const Constraint& c : R.constraints) rows.push_back(c.normal);
    for (const Constraint& c : R.homogeneous) rows.push_back(c.normal);
    BoundednessCertificate cert;
    if (R.dim == 0) {
        cert.bounded = true;
        return cert;
    }
    const auto c = nonzero_point(rows, R.dim);
    cert.bounded = !c.has_value();
    if (c) cert.direction = cone.from_coords(*c);
    return cert;
}

}  // namespace khull
