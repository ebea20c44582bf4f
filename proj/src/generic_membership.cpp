#include "khull/hull_engine.hpp"
#include "khull/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace khull {
namespace {

constexpr double kHuge = 1e300;

// Signed depth of q in K: positive inside, negative outside. Only its sign
// and monotone behaviour matter to the search; witnesses are rechecked
// with `contains`.
double margin(const ConvexBody& K, const Vec& q) {
    switch (K.kind()) {
        case BodyKind::Polytope: {
            const auto& p = K.as<Polytope>();
            if (p.is_empty()) return -kHuge;
            double m = kHuge;
            for (const Facet& f : p.facets()) m = std::min(m, f.offset - f.normal.dot(q));
            return m;
        }
        case BodyKind::Ball: {
            const auto& b = K.as<Ball>();
            return b.radius - (q - b.center).norm();
        }
        case BodyKind::HalfBall: {
            const auto& b = K.as<HalfBall>();
            return std::min(b.radius - q.norm(), q.dot(b.axis));
        }
        case BodyKind::HalfSpace: {
            const auto& h = K.as<HalfSpace>();
            return h.offset - h.normal.dot(q);
        }
        case BodyKind::PolyhedralCone: {
            const auto& c = K.as<PolyhedralCone>();
            if (!c.normals) throw std::invalid_argument("generic_hull_membership: cone needs facet normals");
            double m = kHuge;
            for (const Vec& n : *c.normals) m = std::min(m, -n.dot(q) / n.norm());
            return m;
        }
    }
    return -kHuge;
}

Mat rotation(int d, const double* w) {
    if (d == 1) return Mat::Identity(1, 1);
    if (d == 2) {
        Mat r(2, 2);
        r << std::cos(w[0]), -std::sin(w[0]), std::sin(w[0]), std::cos(w[0]);
        return r;
    }
    const Eigen::Vector3d axis(w[0], w[1], w[2]);
    const double angle = axis.norm();
    if (angle < 1e-15) return Mat::Identity(3, 3);
    return Eigen::AngleAxisd(angle, axis / angle).toRotationMatrix();
}

class Parameterization {
public:
    Parameterization(const HullFamily& H, int d) : H_(H), d_(d), n_(H.parameter_count(d)) {
        if (H.translations == HullFamily::Translations::Full) nt_ = d;
        if (H.translations == HullFamily::Translations::Subspace) {
            if (H.translation_basis.rows() != d) throw std::invalid_argument("translation basis has wrong dimension");
            nt_ = static_cast<int>(H.translation_basis.cols());
        }
    }

    int size() const { return n_; }

    Transform decode(const Vec& th) const {
        Transform t{Vec::Zero(d_), Mat::Identity(d_, d_)};
        if (H_.translations == HullFamily::Translations::Full) t.x = th.head(d_);
        if (H_.translations == HullFamily::Translations::Subspace) t.x = H_.translation_basis * th.head(nt_);
        const double* p = th.data() + nt_;
        switch (H_.linear) {
            case HullFamily::Linear::Identity: break;
            case HullFamily::Linear::PositiveScalings: t.g *= std::exp(p[0]); break;
            case HullFamily::Linear::ScalingsAndRotations: t.g = std::exp(p[0]) * rotation(d_, p + 1); break;
            case HullFamily::Linear::SpecialOrthogonal: t.g = rotation(d_, p); break;
            case HullFamily::Linear::GeneralLinear: {
                // Entries of g^{-1}: containment of each a is then concave in them.
                Mat m = Mat::Identity(d_, d_);
                for (int i = 0; i < d_; ++i)
                    for (int j = 0; j < d_; ++j) m(i, j) += p[i * d_ + j];
                t.g = m.inverse();
                break;
            }
            case HullFamily::Linear::DiagonalPositive:
                for (int i = 0; i < d_; ++i) t.g(i, i) = std::exp(p[i]);
                break;
        }
        return t;
    }

    // Search box: translations within 100 problem lengths, log-scales and
    // matrix entries within 8. Keeps the search compact so it terminates.
    Vec clamp(Vec th, double length) const {
        for (int i = 0; i < n_; ++i) {
            const double lim = i < nt_ ? 100.0 * length : 8.0;
            th(i) = std::clamp(th(i), -lim, lim);
        }
        return th;
    }

    // Per-coordinate initial step and random start.
    Vec scales(double length) const {
        Vec s = Vec::Constant(n_, 0.25);
        s.head(nt_).setConstant(0.25 * length);
        return s;
    }

    Vec random_start(Rng& rng, double length) const {
        std::normal_distribution<double> normal(0.0, 1.0);
        std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
        Vec th = Vec::Zero(n_);
        for (int i = 0; i < nt_; ++i) th(i) = 0.5 * length * normal(rng);
        const int rot = d_ * (d_ - 1) / 2;
        int k = nt_;
        switch (H_.linear) {
            case HullFamily::Linear::Identity: break;
            case HullFamily::Linear::PositiveScalings: th(k) = 0.5 * normal(rng); break;
            case HullFamily::Linear::ScalingsAndRotations:
                th(k++) = 0.5 * normal(rng);
                for (int i = 0; i < rot; ++i) th(k++) = angle(rng);
                break;
            case HullFamily::Linear::SpecialOrthogonal:
                for (int i = 0; i < rot; ++i) th(k++) = angle(rng);
                break;
            case HullFamily::Linear::GeneralLinear:
                for (int i = 0; i < d_ * d_; ++i) th(k++) = 0.5 * normal(rng);
                break;
            case HullFamily::Linear::DiagonalPositive:
                for (int i = 0; i < d_; ++i) th(k++) = 0.5 * normal(rng);
                break;
        }
        return th;
    }

private:
    const HullFamily& H_;
    int d_;
    int n_;
    int nt_ = 0;
};

// min over a of depth(g^{-1} a - x), optionally combined with the exclusion
// depth of z.
struct Objective {
    const ConvexBody& K;
    const Parameterization& P;
    const PointList& A;
    const Vec* z;
    double length;

    double operator()(const Vec& th) const {
        const Transform t = P.decode(th);
        Eigen::PartialPivLU<Mat> lu(t.g);
        if (!std::isfinite(t.g.sum()) || std::abs(lu.determinant()) < 1e-12) return -kHuge;
        double psi = kHuge;
        for (const Vec& a : A) {
            psi = std::min(psi, margin(K, lu.solve(a) - t.x));
            if (psi < -kHuge / 2) return psi;
        }
        if (z) psi = std::min(psi, -margin(K, lu.solve(*z) - t.x));
        return psi;
    }
};

struct SearchOutcome {
    Vec theta;
    double value = -kHuge;
    bool converged = false;
};

// Pattern search over coordinate and random directions. The step is kept
// after a success and halved after a failure.
// Stops as soon as the objective exceeds `target`.
SearchOutcome pattern_search(const Objective& f, Vec th, const Vec& scale, int max_evals, double target, Rng& rng) {
    const Eigen::Index n = th.size();
    SearchOutcome out{th, f(th), false};
    int evals = 1;
    double step = 1.0;
    std::normal_distribution<double> normal(0.0, 1.0);
    if (n == 0) {
        out.converged = true;
        return out;
    }
    while (evals < max_evals) {
        if (out.value > target) {
            out.converged = true;
            return out;
        }
        if (step < 1e-7) {
            out.converged = true;
            return out;
        }
        Vec best_th = out.theta;
        double best = out.value;
        auto try_dir = [&](const Vec& dir) {
            const Vec cand = f.P.clamp(out.theta + step * dir.cwiseProduct(scale), f.length);
            const double v = f(cand);
            ++evals;
            if (v > best) {
                best = v;
                best_th = cand;
            }
        };
        for (Eigen::Index i = 0; i < n; ++i) {
            Vec e = Vec::Zero(n);
            e(i) = 1.0;
            try_dir(e);
            try_dir(-e);
        }
        for (int k = 0; k < 2; ++k) {
            Vec r(n);
            for (Eigen::Index i = 0; i < n; ++i) r(i) = normal(rng);
            r /= r.norm();
            try_dir(r);
            try_dir(-r);
        }
        if (best <= out.value) {
            // At a kink of the min the ascent cone can be narrow: poll more
            // random directions before refining.
            for (Eigen::Index k = 0; k < 2 * n && best <= out.value; ++k) {
                Vec r(n);
                for (Eigen::Index i = 0; i < n; ++i) r(i) = normal(rng);
                try_dir(r / r.norm());
            }
        }
        if (best > out.value) {
            // Pattern move: keep going along the accepted displacement,
            // doubling while it improves, to follow ridges quickly.
            Vec delta = best_th - out.theta;
            out.theta = best_th;
            out.value = best;
            for (int k = 0; k < 30 && evals < max_evals; ++k) {
                const Vec cand = f.P.clamp(out.theta + delta, f.length);
                const double v = f(cand);
                ++evals;
                if (!(v > out.value)) break;
                out.theta = cand;
                out.value = v;
                delta *= 2.0;
            }
        } else {
            step *= 0.5;
        }
    }
    out.converged = out.value > target;
    return out;
}

double problem_length(const ConvexBody& K, const PointList& A, const Vec* z) {
    double L = 1.0;
    for (const Vec& a : A) L = std::max(L, a.norm());
    if (z) L = std::max(L, z->norm());
    if (K.is_bounded()) L = std::max(L, max_norm(K));
    return L;
}

}  // namespace

bool image_contains(const ConvexBody& K, const Transform& t, const Vec& p, double tol) {
    Eigen::PartialPivLU<Mat> lu(t.g);
    return contains(K, lu.solve(p) - t.x, tol);
}

MembershipAnswer generic_hull_membership(const ConvexBody& K, const HullFamily& H, const PointList& A, const Vec& z,
                                         const SearchBudget& budget) {
    if (A.empty()) throw std::invalid_argument("generic_hull_membership: empty point set");
    const int d = K.dim();
    if (z.size() != d) throw std::invalid_argument("generic_hull_membership: dimension mismatch");
    for (const Vec& a : A)
        if ((a - z).norm() <= kGeoTol) return {MembershipAnswer::Verdict::Inside, std::nullopt};

    const Parameterization P(H, d);
    const double L = problem_length(K, A, &z);
    const Objective f{K, P, A, &z, L};
    const Vec scale = P.scales(L);
    // A start that ran out of budget still counts against z when it stalled
    // well below zero; one that ended close to separating leaves the answer open.
    bool settled = true;
    // Starts run in index order and the first verified witness wins, so the
    // answer depends only on the seed.
    for (int s = 0; s < budget.starts; ++s) {
        Rng rng = make_rng(budget.seed, static_cast<std::uint64_t>(s));
        const Vec start = s == 0 ? Vec::Zero(P.size()) : P.random_start(rng, L);
        const SearchOutcome o = pattern_search(f, start, scale, budget.evaluations_per_start, 2.0 * kGeoTol, rng);
        if (o.value > 2.0 * kGeoTol) {
            Transform t = P.decode(o.theta);
            bool ok = !image_contains(K, t, z);
            for (const Vec& a : A) ok = ok && image_contains(K, t, a);
            if (ok) return {MembershipAnswer::Verdict::Outside, std::move(t)};
        }
        settled = settled && (o.converged || o.value < -1e-3 * L);
    }
    return {settled ? MembershipAnswer::Verdict::Inside : MembershipAnswer::Verdict::Unknown, std::nullopt};
}

FeasibleSet feasible_set(const ConvexBody& K, const HullFamily& H, const PointList& A, int samples, std::uint64_t seed) {
    if (A.empty()) throw std::invalid_argument("feasible_set: empty point set");
    if (H.translations == HullFamily::Translations::Full && H.linear == HullFamily::Linear::Identity)
        return detail::feasible_set_translations(K, A);

    const int d = K.dim();
    const Parameterization P(H, d);
    const double L = problem_length(K, A, nullptr);
    const Objective f{K, P, A, nullptr, L};
    const Vec scale = P.scales(L);
    std::vector<Transform> cloud;
    // Each start stops at the first point where A sits strictly inside, so
    // the cloud spreads with the random starts.
    const int attempts = std::max(4 * samples, 16);
    for (int s = 0; s < attempts && static_cast<int>(cloud.size()) < samples; ++s) {
        Rng rng = make_rng(seed, static_cast<std::uint64_t>(s));
        const Vec start = s == 0 ? Vec::Zero(P.size()) : P.random_start(rng, L);
        const SearchOutcome o = pattern_search(f, start, scale, 4000, 1e-6, rng);
        if (o.value <= 0.0) continue;
        Transform t = P.decode(o.theta);
        bool ok = true;
        for (const Vec& a : A) ok = ok && image_contains(K, t, a);
        if (ok) cloud.push_back(std::move(t));
    }
    FeasibleSet fs;
    fs.empty = cloud.empty();
    fs.rep = std::move(cloud);
    return fs;
}

}  // namespace khull
