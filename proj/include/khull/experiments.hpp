#pragma once

#include "khull/empirical.hpp"
#include "khull/stats.hpp"
#include "khull/zero_cell.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace khull {

/// One pass/fail statistic. Informational entries never fail a report.
struct StatTest {
    std::string name;
    double statistic = 0.0;
    double threshold = 0.0;
    std::optional<double> p_value;
    bool pass = true;
    bool gating = true;
};

/// Equal-length columns, one row per replicate.
struct Table {
    std::vector<std::string> names;
    std::vector<std::vector<double>> columns;

    void add(const std::string& name, std::vector<double> values);
    std::size_t rows() const { return columns.empty() ? 0 : columns.front().size(); }
    /// Header plus rows, 17 significant digits.
    std::string csv() const;
};

struct ExperimentReport {
    std::string name;
    io::json config;
    std::uint64_t seed = 0;
    std::map<std::string, Table> tables;
    std::vector<StatTest> tests;
    io::json summary = io::json::object();
    double runtime_seconds = 0.0;

    bool passed() const;
    /// Runtime is omitted when `with_runtime` is false, so reports compare bytewise.
    io::json to_json(bool with_runtime = true) const;
};

/// FNV-1a 64 of the canonical JSON dump, as 16 hex digits.
std::string config_hash(const io::json& config);

/// Runs f(i) for i < count on `threads` workers; results are written by
/// index, so the outcome does not depend on the thread count.
void parallel_for(int count, int threads, const std::function<void(int)>& f);

StatTest ks_test(const std::string& name, const stats::KsResult& r, double threshold, bool gating = true);
StatTest abs_below(const std::string& name, double value, double threshold, bool gating = true);

// ---------------------------------------------------------------------------
// Rotations of the square: X_n restricted to C = c J, J = [[0, 1], [-1, 0]].

/// (0, J) flattened; the unit of c.
Vec so2_generator();

struct SO2Endpoints {
    std::vector<double> minus, plus;  // the limit cell is [-minus, plus] in c
    int censored = 0;
};

/// Endpoints of the reflected zero cell of the square on the c-axis.
SO2Endpoints so2_limit_endpoints(int replicates, std::uint64_t seed, int threads = 1, double s_max = 50.0);
/// Scaled extents of n X_n along +-J from uniform samples.
SO2Endpoints so2_finite_extents(int n, int replicates, std::uint64_t seed, int threads = 1, double s_max = 50.0);

struct SO2Config {
    int n = 2000;
    int limit_replicates = 10000;
    int finite_replicates = 2000;
    double s_max = 50.0;
    std::uint64_t seed = 1;
    int threads = 1;
    bool finite = true;
    /// Mean of the exponential law the endpoints are tested against.
    double reference_mean = 1.0;
};
ExperimentReport so2_square_experiment(const SO2Config& cfg);

// ---------------------------------------------------------------------------
// Translations of the square.

struct BoxExtents {
    std::vector<double> e[4];  // along +e1, +e2, -e1, -e2
};

/// Limit cell restricted to translations, simulated from P_K.
BoxExtents translation_box_limit(int replicates, std::uint64_t seed, int threads = 1);
/// First arrivals of four independent rate-1/2 streams.
BoxExtents translation_box_oracle(int replicates, std::uint64_t seed);
/// n (K minus Xi_n) support values, reflected to match n X_n.
BoxExtents translation_box_finite(int n, int replicates, std::uint64_t seed, int threads = 1);

struct BoxConfig {
    int limit_replicates = 10000;
    int n = 5000;
    int finite_replicates = 2000;
    std::uint64_t seed = 1;
    int threads = 1;
    bool finite = true;
};
ExperimentReport translation_box_experiment(const BoxConfig& cfg);

// ---------------------------------------------------------------------------
// Inclusion functional P{L in n X_n} against P{L in reflected zero cell}.

struct InclusionConfig {
    ConvexBody body = ConvexBody::cube(2);
    PointList points;  // tangent points, flattened
    int n = 2000;
    int replicates = 10000;
    std::uint64_t seed = 1;
    int threads = 1;
    double tolerance = 0.03;
};
ExperimentReport inclusion_experiment(const InclusionConfig& cfg);

// ---------------------------------------------------------------------------
// Recession cones over the cone presets, and the diagonal example.

ExperimentReport recession_experiment(const ConvexBody& K);

// ---------------------------------------------------------------------------
// Scalings example: (x, r I) in the zero cell iff r K + x lies in the
// hyperplane cell from the same marks (r >= 0, polytope K).

struct ScalingsCheck {
    int checked = 0;
    int mismatches = 0;
    int inside = 0;
};
ScalingsCheck scalings_identity_check(const ConvexBody& K, int replicates, int points_per_replicate, std::uint64_t seed,
                                      double window = 4.0);

// ---------------------------------------------------------------------------
// Half-ball with rotations: flat-part marks give x = eta' / t, whose
// intensity in R^{d-1} is proportional to |x|^{-d} for |x| >= 1 / t_max.

struct ConesSlope {
    int points = 0;
    double t_max = 0.0;
    double slope = 0.0;
    std::vector<double> radius, density, counts;
};
ConesSlope cones_intensity_slope(int d, int target_points, std::uint64_t seed, int bins = 20);
ExperimentReport cones_experiment(int d, int target_points, std::uint64_t seed);

}  // namespace khull
