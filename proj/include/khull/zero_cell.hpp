#pragma once

#include "khull/body_io.hpp"
#include "khull/poisson.hpp"

#include <optional>
#include <string>
#include <vector>

namespace khull {

/// (x, C) in R^d x M_d. Flattened as x followed by C row-major:
/// C(i, j) sits at index d + i d + j. The Euclidean product of flattened
/// vectors is <x, y> + Tr(C1 C2^T).
struct TangentPoint {
    Vec x;
    Mat C;

    static TangentPoint zero(int d) { return {Vec::Zero(d), Mat::Zero(d, d)}; }
    static TangentPoint unflatten(const Vec& p, int d);
    Vec flatten() const;
    int dim() const { return static_cast<int>(x.size()); }
};

inline int tangent_dim(int d) { return d + d * d; }

/// <n, p> <= offset. `mark` indexes the generating mark, -1 if none.
struct Constraint {
    Vec normal;
    double offset = 0.0;
    int mark = -1;
};

/// Linear subspace with orthonormal basis (columns of `basis`, ambient
/// R^{d + d^2}) and optional sign constraints <s, p> <= 0.
struct ConeSpec {
    std::string name;
    int d = 0;
    Mat basis;
    std::vector<Vec> signs;

    /// Presets: translations, skew, rigid, traceless, sym-traceless,
    /// diagonal, nonpositive-diagonal, scalar, scalings, full.
    static ConeSpec preset(const std::string& name, int d);
    static std::vector<std::string> preset_names();

    int size() const { return static_cast<int>(basis.cols()); }
    Vec to_coords(const Vec& p) const { return basis.transpose() * p; }
    Vec from_coords(const Vec& c) const { return basis * c; }
    bool contains(const Vec& p, double tol = kGeoTol) const;
};

/// Finite half-space intersection. Coordinates are ambient (R^{d + d^2})
/// unless `cone` names the subspace they are expressed in.
struct HalfSpaceSystem {
    int d = 0;
    int dim = 0;
    std::vector<Constraint> constraints;  // offsets > 0
    std::vector<Constraint> homogeneous;  // <n, p> <= 0
    std::vector<NormalBundleMark> marks;
    std::optional<double> window;
    double t_max = 0.0;
    std::optional<std::string> cone;
};

Constraint halfspace_from_mark(const NormalBundleMark& m, int mark_index = -1);

/// R (1 + max |eta|): no mark with larger t can cut the ball of radius R.
double window_t_max(const ConvexBody& K, double window_radius);

/// The zero cell from all marks with t <= window_t_max; exact inside the window.
HalfSpaceSystem build_zero_cell(const ConvexBody& K, double window_radius, std::uint64_t seed, std::uint64_t stream = 0);
HalfSpaceSystem zero_cell_from_sample(const PoissonSample& sample, int d, std::optional<double> window = std::nullopt);

bool membership(const HalfSpaceSystem& S, const Vec& p, double tol = kGeoTol);
inline bool membership(const HalfSpaceSystem& S, const TangentPoint& p, double tol = kGeoTol) {
    return membership(S, p.flatten(), tol);
}

/// sup{s >= 0 : s dir in S n cone}; +inf when the ray never leaves.
double support_extent(const HalfSpaceSystem& S, const Vec& direction);
double support_extent(const HalfSpaceSystem& S, const Vec& direction, const ConeSpec& cone);

/// Same set in the cone's coordinates; zero projected normals are dropped.
HalfSpaceSystem restrict_to_cone(const HalfSpaceSystem& S, const ConeSpec& cone);

/// T_K = {(x, C) : <C y + x, u> >= 0 for (y, u) in Nor(K)}.
class RecessionConeTK {
public:
    explicit RecessionConeTK(const ConvexBody& K);

    /// Exact test for balls and polytopes.
    bool contains(const Vec& p, double tol = kGeoTol) const;
    /// Reflection: p in T_K-check iff -p in T_K.
    bool reflected_contains(const Vec& p, double tol = kGeoTol) const { return contains(-p, tol); }
    /// Largest violation max over Nor(K) of -<C y + x, u>, with its maximizer.
    double max_violation(const Vec& p, NormalBundleMark* where = nullptr) const;
    /// Outer normals n with T_K subset {<n, p> >= 0}: all of them for
    /// polytopes, a direction grid for balls.
    const std::vector<Vec>& normals() const { return normals_; }
    bool finite() const { return finite_; }
    const ConvexBody& body() const { return body_; }

private:
    ConvexBody body_;
    std::vector<Vec> normals_;
    bool finite_ = true;
};

RecessionConeTK recession_cone_TK(const ConvexBody& K);

struct BoundednessCertificate {
    bool bounded = false;
    /// Nonzero recession direction (ambient coordinates) when unbounded.
    std::optional<Vec> direction;
    /// False when the answer rests on a sufficient condition only.
    bool exact = true;
    int cuts = 0;
};

/// Decides whether T_K-check n cone = {0}. Exact for balls (cutting planes
/// with an exact separation oracle) and for the T_K of polytopes; for
/// polytopes this is necessary but not sufficient for boundedness of the
/// zero cell, so `exact` is false there.
BoundednessCertificate is_bounded(const ConvexBody& K, const ConeSpec& cone);

/// Boundedness of the finite system itself restricted to the cone.
BoundednessCertificate is_bounded(const HalfSpaceSystem& S, const ConeSpec& cone);

/// membership(reflect(S), p) == membership(S, -p).
HalfSpaceSystem reflect(const HalfSpaceSystem& S);

/// System of K + v from the same marks: (x, C) -> (x - C v, C).
HalfSpaceSystem transform_translation_of_K(const HalfSpaceSystem& S, const Vec& v);

/// System of A K from the same marks: (x, C) -> (A x, A C A^T), A orthogonal.
HalfSpaceSystem transform_rotation_of_K(const HalfSpaceSystem& S, const Mat& A);
Vec rotate_tangent(const Vec& p, const Mat& A, int d);

/// conv({0} u {n_k / t_k}).
class ZeroCellPolar {
public:
    explicit ZeroCellPolar(const HalfSpaceSystem& S);

    const PointList& points() const { return points_; }
    int dim() const { return dim_; }
    double support(const Vec& p) const;
    bool contains(const Vec& q, double tol = kGeoTol) const;
    /// Polar of the slice C = 0: conv({0} u {u_k / t_k}) in R^d.
    PointList translation_projection() const;

private:
    int dim_ = 0;
    int d_ = 0;
    PointList points_;
};

ZeroCellPolar polar_of_zero_cell(const HalfSpaceSystem& S);

io::json to_json(const HalfSpaceSystem& S);

}  // namespace khull
