#pragma once

#include "khull/convex_core.hpp"
#include "khull/rng.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace khull {

/// Point (t, eta, u) of P_K: eta on the boundary of K, u an outer unit normal there.
struct NormalBundleMark {
    double t = 0.0;
    Vec eta;
    Vec u;
};

/// Draws (eta, u) from the surface measure of the boundary with the attached
/// normal, normalized to a probability measure.
class BoundarySampler {
public:
    explicit BoundarySampler(const ConvexBody& K);

    void operator()(Rng& rng, Vec& eta, Vec& u) const;

    /// Surface area over volume: the intensity of P_K per unit of t.
    double rate() const { return rate_; }
    const ConvexBody& body() const { return body_; }

private:
    struct Triangle {
        Vec a, b, c;
    };

    ConvexBody body_;
    double rate_ = 0.0;
    std::vector<double> cumulative_;       // facet (polytope) or part (half-ball) weights
    std::vector<std::vector<Triangle>> triangles_;  // per facet in d = 3
    std::vector<std::vector<double>> triangle_cumulative_;
};

BoundarySampler boundary_sampler(const ConvexBody& K);

struct PoissonSample {
    std::vector<NormalBundleMark> marks;  // sorted by t
    double t_max = 0.0;
    std::uint64_t seed = 0;
};

/// Marks with t in (0, t_max]: a Poisson(rate t_max) count, t i.i.d. uniform
/// on (0, t_max], (eta, u) i.i.d. from the boundary sampler.
PoissonSample sample_PK(const BoundarySampler& sampler, double t_max, Rng& rng);
PoissonSample sample_PK(const ConvexBody& K, double t_max, std::uint64_t seed, std::uint64_t stream = 0);

/// CSV with header t,eta_1..eta_d,u_1..u_d.
std::string marks_csv(const PoissonSample& sample, int dim);

}  // namespace khull
