#include "khull/poisson.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace khull {
namespace {

std::size_t pick(const std::vector<double>& cumulative, Rng& rng) {
    const double r = uniform01(rng) * cumulative.back();
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), r);
    return std::min(static_cast<std::size_t>(it - cumulative.begin()), cumulative.size() - 1);
}

Vec gaussian_direction(Rng& rng, int d) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Vec v(d);
    do {
        for (int i = 0; i < d; ++i) v(i) = normal(rng);
    } while (v.norm() < 1e-12);
    return v / v.norm();
}

}  // namespace

BoundarySampler::BoundarySampler(const ConvexBody& K) : body_(K) {
    const int d = K.dim();
    switch (K.kind()) {
        case BodyKind::Polytope: {
            const auto& p = K.as<Polytope>();
            if (p.affine_dim() < d) throw std::invalid_argument("boundary_sampler: polytope must be full-dimensional");
            double acc = 0.0;
            for (std::size_t i = 0; i < p.facets().size(); ++i) {
                acc += p.facet_area(i);
                cumulative_.push_back(acc);
                std::vector<Triangle> tris;
                std::vector<double> cum;
                if (d == 3) {
                    const PointList fv = p.facet_vertices(i);
                    double a = 0.0;
                    for (std::size_t k = 1; k + 1 < fv.size(); ++k) {
                        const Eigen::Vector3d e1 = fv[k] - fv[0], e2 = fv[k + 1] - fv[0];
                        a += 0.5 * e1.cross(e2).norm();
                        tris.push_back({fv[0], fv[k], fv[k + 1]});
                        cum.push_back(a);
                    }
                }
                triangles_.push_back(std::move(tris));
                triangle_cumulative_.push_back(std::move(cum));
            }
            break;
        }
        case BodyKind::Ball: break;
        case BodyKind::HalfBall: {
            const double r = K.as<HalfBall>().radius;
            const double cap = 0.5 * surface_area(ConvexBody::ball(d, r));
            const double flat = surface_area(K) - cap;
            cumulative_ = {cap, cap + flat};
            break;
        }
        default: throw std::invalid_argument("boundary_sampler: unsupported body kind " + to_string(K.kind()));
    }
    rate_ = surface_area(K) / volume(K);
}

void BoundarySampler::operator()(Rng& rng, Vec& eta, Vec& u) const {
    const int d = body_.dim();
    switch (body_.kind()) {
        case BodyKind::Polytope: {
            const auto& p = body_.as<Polytope>();
            const std::size_t f = pick(cumulative_, rng);
            u = p.facets()[f].normal;
            if (d == 2) {
                const PointList fv = p.facet_vertices(f);
                eta = fv[0] + uniform01(rng) * (fv[1] - fv[0]);
            } else if (d == 3) {
                const Triangle& t = triangles_[f][pick(triangle_cumulative_[f], rng)];
                double s = uniform01(rng), w = uniform01(rng);
                if (s + w > 1.0) {
                    s = 1.0 - s;
                    w = 1.0 - w;
                }
                eta = t.a + s * (t.b - t.a) + w * (t.c - t.a);
            } else {
                eta = p.facet_vertices(f).front();
            }
            return;
        }
        case BodyKind::Ball: {
            const auto& b = body_.as<Ball>();
            u = gaussian_direction(rng, d);
            eta = b.center + b.radius * u;
            return;
        }
        case BodyKind::HalfBall: {
            const auto& b = body_.as<HalfBall>();
            if (pick(cumulative_, rng) == 0) {
                u = gaussian_direction(rng, d);
                const double along = u.dot(b.axis);
                if (along < 0.0) u -= 2.0 * along * b.axis;
                eta = b.radius * u;
            } else {
                // Uniform on the flat disk by rejection from its bounding cube.
                Vec q(d);
                do {
                    for (int i = 0; i < d; ++i) q(i) = 2.0 * uniform01(rng) - 1.0;
                    q -= q.dot(b.axis) * b.axis;
                } while (q.norm() > 1.0);
                eta = b.radius * q;
                u = -b.axis;
            }
            return;
        }
        default: break;
    }
    throw std::logic_error("boundary_sampler: unsupported body");
}

BoundarySampler boundary_sampler(const ConvexBody& K) { return BoundarySampler(K); }

PoissonSample sample_PK(const BoundarySampler& sampler, double t_max, Rng& rng) {
    if (!(t_max > 0.0)) throw std::invalid_argument("sample_PK: t_max must be positive");
    PoissonSample s;
    s.t_max = t_max;
    const auto count = std::poisson_distribution<long>(sampler.rate() * t_max)(rng);
    s.marks.reserve(static_cast<std::size_t>(count));
    for (long i = 0; i < count; ++i) {
        NormalBundleMark m;
        // 1 - U lies in (0, 1].
        m.t = t_max * (1.0 - uniform01(rng));
        sampler(rng, m.eta, m.u);
        s.marks.push_back(std::move(m));
    }
    std::sort(s.marks.begin(), s.marks.end(), [](const auto& a, const auto& b) { return a.t < b.t; });
    return s;
}

PoissonSample sample_PK(const ConvexBody& K, double t_max, std::uint64_t seed, std::uint64_t stream) {
    Rng rng = make_rng(seed, stream);
    PoissonSample s = sample_PK(BoundarySampler(K), t_max, rng);
    s.seed = seed;
    return s;
}

std::string marks_csv(const PoissonSample& sample, int dim) {
    std::ostringstream out;
    out << "t";
    for (int i = 1; i <= dim; ++i) out << ",eta_" << i;
    for (int i = 1; i <= dim; ++i) out << ",u_" << i;
    out << "\n";
    char buf[32];
    auto put = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        out << buf;
    };
    for (const NormalBundleMark& m : sample.marks) {
        put(m.t);
        for (int i = 0; i < dim; ++i) {
            out << ",";
            put(m.eta(i));
        }
        for (int i = 0; i < dim; ++i) {
            out << ",";
            put(m.u(i));
        }
        out << "\n";
    }
    return out.str();
}

}  // namespace khull
