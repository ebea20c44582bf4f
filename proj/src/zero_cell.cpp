#include "khull/zero_cell.hpp"

#include "khull/lp.hpp"

#include <cmath>
#include <stdexcept>

namespace khull {
namespace {

Vec matrix_unit(int d, int i, int j) {
    Vec v = Vec::Zero(tangent_dim(d));
    v(d + i * d + j) = 1.0;
    return v;
}

// Gram-Schmidt in the given order, so the first vectors keep their direction.
Mat orthonormalize(const std::vector<Vec>& vs, Eigen::Index D) {
    std::vector<Vec> out;
    for (Vec v : vs) {
        for (int pass = 0; pass < 2; ++pass)
            for (const Vec& q : out) v -= q.dot(v) * q;
        if (v.norm() > 1e-10) out.push_back(v.normalized());
    }
    Mat B(D, static_cast<Eigen::Index>(out.size()));
    for (std::size_t k = 0; k < out.size(); ++k) B.col(static_cast<Eigen::Index>(k)) = out[k];
    return B;
}

void require_ambient(const HalfSpaceSystem& S, const char* op) {
    if (S.cone) throw std::invalid_argument(std::string(op) + ": system must be in ambient coordinates");
}

}  // namespace

TangentPoint TangentPoint::unflatten(const Vec& p, int d) {
    if (p.size() != tangent_dim(d)) throw std::invalid_argument("TangentPoint::unflatten: wrong length");
    TangentPoint t{p.head(d), Mat(d, d)};
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) t.C(i, j) = p(d + i * d + j);
    return t;
}

Vec TangentPoint::flatten() const {
    const int d = dim();
    Vec p(tangent_dim(d));
    p.head(d) = x;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) p(d + i * d + j) = C(i, j);
    return p;
}

// ---------------------------------------------------------------------------
// ConeSpec

std::vector<std::string> ConeSpec::preset_names() {
    return {"translations", "skew", "rigid", "traceless", "sym-traceless", "diagonal", "nonpositive-diagonal",
            "scalar", "scalings", "full"};
}

ConeSpec ConeSpec::preset(const std::string& name, int d) {
    if (d < 1 || d > 3) throw std::invalid_argument("ConeSpec: dimension must be 1, 2 or 3");
    const Eigen::Index D = tangent_dim(d);
    std::vector<Vec> translations, skew, offdiag, sym, diag, diff;
    for (int i = 0; i < d; ++i) {
        Vec e = Vec::Zero(D);
        e(i) = 1.0;
        translations.push_back(e);
        diag.push_back(matrix_unit(d, i, i));
        if (i > 0) diff.push_back(matrix_unit(d, 0, 0) - matrix_unit(d, i, i));
        for (int j = 0; j < d; ++j)
            if (i != j) offdiag.push_back(matrix_unit(d, i, j));
    }
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) {
            skew.push_back((matrix_unit(d, i, j) - matrix_unit(d, j, i)) / std::sqrt(2.0));
            sym.push_back((matrix_unit(d, i, j) + matrix_unit(d, j, i)) / std::sqrt(2.0));
        }
    Vec identity = Vec::Zero(D);
    for (int i = 0; i < d; ++i) identity(d + i * d + i) = 1.0;
    auto join = [](std::initializer_list<std::vector<Vec>> parts) {
        std::vector<Vec> all;
        for (const auto& p : parts) all.insert(all.end(), p.begin(), p.end());
        return all;
    };

    ConeSpec c;
    c.name = name;
    c.d = d;
    std::vector<Vec> span;
    if (name == "translations") span = translations;
    else if (name == "skew") span = skew;
    else if (name == "rigid") span = join({translations, skew});
    else if (name == "traceless") span = join({skew, sym, diff});
    else if (name == "sym-traceless") span = join({sym, diff});
    else if (name == "diagonal") span = diag;
    else if (name == "nonpositive-diagonal") {
        span = diag;
        c.signs = diag;
    } else if (name == "scalar") span = {identity};
    else if (name == "scalings") span = join({translations, {identity}});
    else if (name == "full") span = join({translations, diag, offdiag});
    else throw std::invalid_argument("unknown cone preset '" + name + "'");
    c.basis = orthonormalize(span, D);
    return c;
}

bool ConeSpec::contains(const Vec& p, double tol) const {
    const double scale = std::max(1.0, p.norm());
    if ((p - basis * (basis.transpose() * p)).norm() > tol * scale) return false;
    for (const Vec& s : signs)
        if (s.dot(p) > tol * scale) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Construction and queries

Constraint halfspace_from_mark(const NormalBundleMark& m, int mark_index) {
    // N_ij = u_i eta_j, so that <(x, C), (u, N)> = <C eta + x, u>.
    const TangentPoint n{m.u, m.u * m.eta.transpose()};
    return {n.flatten(), m.t, mark_index};
}

double window_t_max(const ConvexBody& K, double window_radius) {
    if (window_radius < 0.0) throw std::invalid_argument("window radius must be nonnegative");
    return window_radius * (1.0 + max_norm(K));
}

HalfSpaceSystem zero_cell_from_sample(const PoissonSample& sample, int d, std::optional<double> window) {
    HalfSpaceSystem S;
    S.d = d;
    S.dim = tangent_dim(d);
    S.t_max = sample.t_max;
    S.window = window;
    S.marks = sample.marks;
    for (std::size_t k = 0; k < sample.marks.size(); ++k)
        S.constraints.push_back(halfspace_from_mark(sample.marks[k], static_cast<int>(k)));
    return S;
}

HalfSpaceSystem build_zero_cell(const ConvexBody& K, double window_radius, std::uint64_t seed, std::uint64_t stream) {
    const double t_max = window_t_max(K, window_radius);
    if (t_max <= 0.0) {
        HalfSpaceSystem S;
        S.d = K.dim();
        S.dim = tangent_dim(S.d);
        S.window = window_radius;
        return S;
    }
    return zero_cell_from_sample(sample_PK(K, t_max, seed, stream), K.dim(), window_radius);
}

bool membership(const HalfSpaceSystem& S, const Vec& p, double tol) {
    if (p.size() != S.dim) throw std::invalid_argument("membership: dimension mismatch");
    for (const Constraint& c : S.constraints)
        if (c.normal.dot(p) > c.offset + tol) return false;
    for (const Constraint& c : S.homogeneous)
        if (c.normal.dot(p) > tol) return false;
    return true;
}

double support_extent(const HalfSpaceSystem& S, const Vec& direction) {
    if (direction.size() != S.dim) throw std::invalid_argument("support_extent: dimension mismatch");
    for (const Constraint& c : S.homogeneous)
        if (c.normal.dot(direction) > kGeoTol) return 0.0;
    double s = kInfinity;
    for (const Constraint& c : S.constraints) {
        const double a = c.normal.dot(direction);
        if (a > 0.0) s = std::min(s, c.offset / a);
    }
    return s;
}

double support_extent(const HalfSpaceSystem& S, const Vec& direction, const ConeSpec& cone) {
    require_ambient(S, "support_extent");
    if ((direction - cone.from_coords(cone.to_coords(direction))).norm() > 1e-9 * std::max(1.0, direction.norm()))
        throw std::invalid_argument("support_extent: direction outside the cone's subspace");
    for (const Vec& s : cone.signs)
        if (s.dot(direction) > kGeoTol) return 0.0;
    return support_extent(S, direction);
}

HalfSpaceSystem restrict_to_cone(const HalfSpaceSystem& S, const ConeSpec& cone) {
    require_ambient(S, "restrict_to_cone");
    if (cone.d != S.d) throw std::invalid_argument("restrict_to_cone: cone dimension mismatch");
    HalfSpaceSystem R;
    R.d = S.d;
    R.dim = cone.size();
    R.marks = S.marks;
    R.window = S.window;
    R.t_max = S.t_max;
    R.cone = cone.name;
    for (const Constraint& c : S.constraints) {
        const Vec n = cone.to_coords(c.normal);
        if (n.norm() > 1e-14) R.constraints.push_back({n, c.offset, c.mark});
    }
    for (const Constraint& c : S.homogeneous) {
        const Vec n = cone.to_coords(c.normal);
        if (n.norm() > 1e-14) R.homogeneous.push_back({n, 0.0, c.mark});
    }
    for (const Vec& s : cone.signs) {
        const Vec n = cone.to_coords(s);
        if (n.norm() > 1e-14) R.homogeneous.push_back({n, 0.0, -1});
    }
    return R;
}

HalfSpaceSystem reflect(const HalfSpaceSystem& S) {
    HalfSpaceSystem R = S;
    for (Constraint& c : R.constraints) c.normal = -c.normal;
    for (Constraint& c : R.homogeneous) c.normal = -c.normal;
    return R;
}

HalfSpaceSystem transform_translation_of_K(const HalfSpaceSystem& S, const Vec& v) {
    require_ambient(S, "transform_translation_of_K");
    if (v.size() != S.d) throw std::invalid_argument("transform_translation_of_K: dimension mismatch");
    // <(x + C v, C), (u, N)> = <(x, C), (u, N + u v^T)>.
    HalfSpaceSystem R = S;
    for (Constraint& c : R.constraints) {
        TangentPoint n = TangentPoint::unflatten(c.normal, S.d);
        n.C += n.x * v.transpose();
        c.normal = n.flatten();
    }
    for (NormalBundleMark& m : R.marks) m.eta += v;
    return R;
}

Vec rotate_tangent(const Vec& p, const Mat& A, int d) {
    TangentPoint t = TangentPoint::unflatten(p, d);
    return TangentPoint{A * t.x, A * t.C * A.transpose()}.flatten();
}

HalfSpaceSystem transform_rotation_of_K(const HalfSpaceSystem& S, const Mat& A) {
    require_ambient(S, "transform_rotation_of_K");
    if (A.rows() != S.d || A.cols() != S.d) throw std::invalid_argument("transform_rotation_of_K: dimension mismatch");
    if ((A.transpose() * A - Mat::Identity(S.d, S.d)).norm() > 1e-9)
        throw std::invalid_argument("transform_rotation_of_K: matrix is not orthogonal");
    HalfSpaceSystem R = S;
    for (Constraint& c : R.constraints) c.normal = rotate_tangent(c.normal, A, S.d);
    for (NormalBundleMark& m : R.marks) {
        m.eta = A * m.eta;
        m.u = A * m.u;
    }
    return R;
}

// ---------------------------------------------------------------------------
// Polar

ZeroCellPolar::ZeroCellPolar(const HalfSpaceSystem& S) : dim_(S.dim), d_(S.d) {
    if (!S.homogeneous.empty()) throw std::invalid_argument("polar_of_zero_cell: homogeneous constraints are not supported");
    for (const Constraint& c : S.constraints) points_.push_back(c.normal / c.offset);
}

double ZeroCellPolar::support(const Vec& p) const {
    double h = 0.0;
    for (const Vec& q : points_) h = std::max(h, q.dot(p));
    return h;
}

bool ZeroCellPolar::contains(const Vec& q, double tol) const {
    if (points_.empty()) return q.norm() <= tol;
    Mat G(dim_, static_cast<Eigen::Index>(points_.size()));
    for (std::size_t k = 0; k < points_.size(); ++k) G.col(static_cast<Eigen::Index>(k)) = points_[k];
    return lp::in_hull_with_origin(G, q, tol);
}

PointList ZeroCellPolar::translation_projection() const {
    PointList out;
    for (const Vec& q : points_) out.push_back(q.head(d_));
    return out;
}

ZeroCellPolar polar_of_zero_cell(const HalfSpaceSystem& S) { return ZeroCellPolar(S); }

io::json to_json(const HalfSpaceSystem& S) {
    io::json j;
    j["d"] = S.d;
    j["dim"] = S.dim;
    j["cone"] = S.cone ? io::json(*S.cone) : io::json(nullptr);
    j["window"] = S.window ? io::json(*S.window) : io::json(nullptr);
    j["t_max"] = S.t_max;
    auto list = [](const std::vector<Constraint>& cs) {
        io::json a = io::json::array();
        for (const Constraint& c : cs) a.push_back({{"normal", io::to_json(c.normal)}, {"offset", c.offset}, {"mark", c.mark}});
        return a;
    };
    j["constraints"] = list(S.constraints);
    j["homogeneous"] = list(S.homogeneous);
    io::json marks = io::json::array();
    for (const NormalBundleMark& m : S.marks)
        marks.push_back({{"t", m.t}, {"eta", io::to_json(m.eta)}, {"u", io::to_json(m.u)}});
    j["marks"] = marks;
    return j;
}

}  // namespace khull
