#include "khull/empirical.hpp"

#include <cmath>
#include <stdexcept>

namespace khull {
namespace {

Vec box_point(const Vec& lo, const Vec& hi, Rng& rng) {
    Vec p(lo.size());
    for (Eigen::Index i = 0; i < lo.size(); ++i) p(i) = lo(i) + (hi(i) - lo(i)) * uniform01(rng);
    return p;
}

}  // namespace

Vec uniform_point(const ConvexBody& K, Rng& rng) {
    const int d = K.dim();
    switch (K.kind()) {
        case BodyKind::Polytope: {
            const auto& P = K.as<Polytope>();
            if (P.affine_dim() < d) throw std::invalid_argument("uniform_sample: polytope must be full-dimensional");
            Vec lo = P.vertices().front(), hi = lo;
            for (const Vec& v : P.vertices()) {
                lo = lo.cwiseMin(v);
                hi = hi.cwiseMax(v);
            }
            for (;;) {
                const Vec p = box_point(lo, hi, rng);
                if (contains(K, p, 0.0)) return p;
            }
        }
        case BodyKind::Ball: {
            const auto& b = K.as<Ball>();
            std::normal_distribution<double> normal(0.0, 1.0);
            Vec u(d);
            do {
                for (int i = 0; i < d; ++i) u(i) = normal(rng);
            } while (u.norm() < 1e-12);
            const double r = b.radius * std::pow(uniform01(rng), 1.0 / d);
            Vec p = r * u / u.norm();
            if (b.center.size() == d) p += b.center;
            return p;
        }
        case BodyKind::HalfBall: {
            const auto& b = K.as<HalfBall>();
            const Vec lo = Vec::Constant(d, -b.radius), hi = Vec::Constant(d, b.radius);
            for (;;) {
                const Vec p = box_point(lo, hi, rng);
                if (p.norm() <= b.radius && p.dot(b.axis) >= 0.0) return p;
            }
        }
        default: break;
    }
    throw std::invalid_argument("uniform_sample: unsupported body kind " + to_string(K.kind()));
}

SampleBatch uniform_sample(const ConvexBody& K, int n, Rng& rng) {
    if (n < 0) throw std::invalid_argument("uniform_sample: n must be nonnegative");
    SampleBatch b{K, {}, 0};
    b.points.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) b.points.push_back(uniform_point(K, rng));
    return b;
}

SampleBatch uniform_sample(const ConvexBody& K, int n, std::uint64_t seed, std::uint64_t stream) {
    Rng rng = make_rng(seed, stream);
    SampleBatch b = uniform_sample(K, n, rng);
    b.seed = seed;
    return b;
}

Mat matrix_exponential(const Mat& C) {
    if (C.rows() != C.cols()) throw std::invalid_argument("matrix_exponential: matrix must be square");
    const Eigen::Index d = C.rows();
    if (d == 2 && C(0, 0) == 0.0 && C(1, 1) == 0.0 && C(0, 1) == -C(1, 0)) {
        const double c = C(0, 1);
        Mat R(2, 2);
        R << std::cos(c), std::sin(c), -std::sin(c), std::cos(c);
        return R;
    }
    const double norm = C.cwiseAbs().colwise().sum().maxCoeff();
    int squarings = 0;
    if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
    const Mat A = C / std::ldexp(1.0, squarings);
    // Taylor remainder for |A| <= 1/2 at degree 18 is below 1e-22.
    Mat E = Mat::Identity(d, d), term = Mat::Identity(d, d);
    for (int k = 1; k <= 18; ++k) {
        term = term * A / static_cast<double>(k);
        E += term;
    }
    for (int s = 0; s < squarings; ++s) E = E * E;
    return E;
}

bool xn_membership(const TangentPoint& p, const SampleBatch& batch, int n) {
    if (n < 1) throw std::invalid_argument("xn_membership: n must be positive");
    if (p.dim() != batch.body.dim()) throw std::invalid_argument("xn_membership: dimension mismatch");
    const Mat E = matrix_exponential(-p.C / static_cast<double>(n));
    const Vec shift = p.x / static_cast<double>(n);
    for (const Vec& xi : batch.points)
        if (!contains(batch.body, E * xi - shift, 0.0)) return false;
    return true;
}

bool xn_membership(const Vec& p, const SampleBatch& batch, int n) {
    return xn_membership(TangentPoint::unflatten(p, batch.body.dim()), batch, n);
}

EmpiricalExtent directional_extent_empirical(const SampleBatch& batch, int n, const Vec& direction, double s_max) {
    if (!(s_max > 0.0)) throw std::invalid_argument("directional_extent: s_max must be positive");
    if (direction.norm() == 0.0) throw std::invalid_argument("directional_extent: zero direction");
    if (!xn_membership(Vec::Zero(direction.size()).eval(), batch, n))
        throw std::invalid_argument("directional_extent: origin is not feasible");
    const double h = s_max / 1024.0;
    double lo = 0.0;
    for (int k = 1; k <= 1024; ++k) {
        const double s = std::min(k * h, s_max);
        if (!xn_membership((s * direction).eval(), batch, n)) {
            double hi = s;
            while (hi - lo > 1e-6) {
                const double mid = 0.5 * (lo + hi);
                (xn_membership((mid * direction).eval(), batch, n) ? lo : hi) = mid;
            }
            return {lo, false};
        }
        lo = s;
    }
    return {s_max, true};
}

}  // namespace khull
