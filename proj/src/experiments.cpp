#include "khull/experiments.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace khull {
namespace {

// Disjoint stream families per experiment part, so that no two parts share
// random numbers for the same seed.
constexpr std::uint64_t kStreamSO2Limit = 1ull << 40;
constexpr std::uint64_t kStreamSO2Finite = 2ull << 40;
constexpr std::uint64_t kStreamBoxLimit = 3ull << 40;
constexpr std::uint64_t kStreamBoxOracle = 4ull << 40;
constexpr std::uint64_t kStreamBoxFinite = 5ull << 40;
constexpr std::uint64_t kStreamInclusionFinite = 6ull << 40;
constexpr std::uint64_t kStreamInclusionLimit = 7ull << 40;
constexpr std::uint64_t kStreamScalings = 8ull << 40;
constexpr std::uint64_t kStreamCones = 9ull << 40;
constexpr std::uint64_t kStreamRecession = 10ull << 40;

std::string format17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

Vec axis_vector(int dim, int i, double sign) {
    Vec v = Vec::Zero(dim);
    v(i) = sign;
    return v;
}

}  // namespace

void Table::add(const std::string& name, std::vector<double> values) {
    if (!columns.empty() && values.size() != rows()) throw std::invalid_argument("Table::add: column length mismatch");
    names.push_back(name);
    columns.push_back(std::move(values));
}

std::string Table::csv() const {
    std::ostringstream out;
    for (std::size_t j = 0; j < names.size(); ++j) out << (j ? "," : "") << names[j];
    out << "\n";
    for (std::size_t i = 0; i < rows(); ++i) {
        for (std::size_t j = 0; j < columns.size(); ++j) out << (j ? "," : "") << format17(columns[j][i]);
        out << "\n";
    }
    return out.str();
}

bool ExperimentReport::passed() const {
    for (const StatTest& t : tests)
        if (t.gating && !t.pass) return false;
    return true;
}

io::json ExperimentReport::to_json(bool with_runtime) const {
    io::json j;
    j["experiment"] = name;
    j["config"] = config;
    j["config_hash"] = config_hash(config);
    j["seed"] = seed;
    io::json reps = io::json::object();
    for (const auto& [key, table] : tables) reps[key] = table.rows();
    j["replicates"] = reps;
    io::json ts = io::json::array();
    for (const StatTest& t : tests) {
        io::json e{{"name", t.name}, {"statistic", t.statistic}, {"threshold", t.threshold}, {"pass", t.pass},
                   {"gating", t.gating}};
        e["p_value"] = t.p_value ? io::json(*t.p_value) : io::json(nullptr);
        ts.push_back(e);
    }
    j["tests"] = ts;
    j["summary"] = summary;
    j["passed"] = passed();
    if (with_runtime) j["runtime_seconds"] = runtime_seconds;
    return j;
}

std::string config_hash(const io::json& config) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : config.dump()) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void parallel_for(int count, int threads, const std::function<void(int)>& f) {
    if (count <= 0) return;
    threads = std::max(1, std::min(threads, count));
    if (threads == 1) {
        for (int i = 0; i < count; ++i) f(i);
        return;
    }
    std::atomic<int> next{0};
    std::exception_ptr error;
    std::atomic<bool> failed{false};
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w)
        pool.emplace_back([&] {
            for (int i = next++; i < count && !failed; i = next++) {
                try {
                    f(i);
                } catch (...) {
                    if (!failed.exchange(true)) error = std::current_exception();
                }
            }
        });
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
}

StatTest ks_test(const std::string& name, const stats::KsResult& r, double threshold, bool gating) {
    return {name, r.distance, threshold, r.p_value, r.distance < threshold, gating};
}

StatTest abs_below(const std::string& name, double value, double threshold, bool gating) {
    return {name, value, threshold, std::nullopt, std::abs(value) < threshold, gating};
}

// ---------------------------------------------------------------------------
// SO2

Vec so2_generator() {
    TangentPoint g = TangentPoint::zero(2);
    g.C << 0.0, 1.0, -1.0, 0.0;
    return g.flatten();
}

SO2Endpoints so2_limit_endpoints(int replicates, std::uint64_t seed, int threads, double s_max) {
    const auto K = ConvexBody::cube(2);
    const Vec g = so2_generator();
    // |(0, c J)| = c sqrt 2, so this window is exact up to c = s_max.
    const double R = s_max * std::sqrt(2.0);
    SO2Endpoints out;
    out.minus.assign(static_cast<std::size_t>(replicates), 0.0);
    out.plus = out.minus;
    std::vector<char> censored(static_cast<std::size_t>(replicates), 0);
    parallel_for(replicates, threads, [&](int i) {
        const HalfSpaceSystem S = build_zero_cell(K, R, seed, kStreamSO2Limit + static_cast<std::uint64_t>(i));
        // The limit of n X_n is the reflected cell: its extent along +J is
        // the cell's extent along -J.
        double plus = support_extent(S, (-g).eval()), minus = support_extent(S, g);
        if (plus > s_max || minus > s_max) censored[static_cast<std::size_t>(i)] = 1;
        out.plus[static_cast<std::size_t>(i)] = std::min(plus, s_max);
        out.minus[static_cast<std::size_t>(i)] = std::min(minus, s_max);
    });
    for (char c : censored) out.censored += c;
    return out;
}

SO2Endpoints so2_finite_extents(int n, int replicates, std::uint64_t seed, int threads, double s_max) {
    const auto K = ConvexBody::cube(2);
    const Vec g = so2_generator();
    SO2Endpoints out;
    out.minus.assign(static_cast<std::size_t>(replicates), 0.0);
    out.plus = out.minus;
    std::vector<char> censored(static_cast<std::size_t>(replicates), 0);
    parallel_for(replicates, threads, [&](int i) {
        const SampleBatch b = uniform_sample(K, n, seed, kStreamSO2Finite + static_cast<std::uint64_t>(i));
        const EmpiricalExtent p = directional_extent_empirical(b, n, g, s_max);
        const EmpiricalExtent m = directional_extent_empirical(b, n, (-g).eval(), s_max);
        out.plus[static_cast<std::size_t>(i)] = p.extent;
        out.minus[static_cast<std::size_t>(i)] = m.extent;
        censored[static_cast<std::size_t>(i)] = p.censored || m.censored;
    });
    for (char c : censored) out.censored += c;
    return out;
}

ExperimentReport so2_square_experiment(const SO2Config& cfg) {
    const auto t0 = Clock::now();
    ExperimentReport r;
    r.name = "so2-square";
    r.seed = cfg.seed;
    r.config = {{"body", "square [-1,1]^2"}, {"cone", "skew"}, {"n", cfg.n}, {"limit_replicates", cfg.limit_replicates},
                {"finite_replicates", cfg.finite ? cfg.finite_replicates : 0}, {"s_max", cfg.s_max}, {"seed", cfg.seed},
                {"reference_mean", cfg.reference_mean}};

    const SO2Endpoints lim = so2_limit_endpoints(cfg.limit_replicates, cfg.seed, cfg.threads, cfg.s_max);
    Table lt;
    lt.add("zeta_minus", lim.minus);
    lt.add("zeta_plus", lim.plus);
    r.tables["limit"] = lt;
    char law[64];
    std::snprintf(law, sizeof law, "Exp(mean %g)", cfg.reference_mean);
    const auto ref = stats::exponential_cdf(1.0 / cfg.reference_mean);
    r.tests.push_back(ks_test(std::string("limit zeta_plus vs ") + law, stats::ks_one_sample(lim.plus, ref), 0.02));
    r.tests.push_back(ks_test(std::string("limit zeta_minus vs ") + law, stats::ks_one_sample(lim.minus, ref), 0.02));
    r.tests.push_back(abs_below("limit rank correlation", stats::spearman(lim.minus, lim.plus), 0.03));
    if (cfg.reference_mean != 2.0) {
        // The law computed from the mark intensity: each facet cuts the
        // c-axis at rate 1/8, four facets give Exp with mean 2.
        const auto computed = stats::exponential_cdf(0.5);
        r.tests.push_back(ks_test("limit zeta_plus vs Exp(mean 2)", stats::ks_one_sample(lim.plus, computed), 0.02, false));
        r.tests.push_back(ks_test("limit zeta_minus vs Exp(mean 2)", stats::ks_one_sample(lim.minus, computed), 0.02, false));
    }
    r.summary["limit_mean_plus"] = stats::mean(lim.plus);
    r.summary["limit_mean_minus"] = stats::mean(lim.minus);
    r.summary["limit_censored"] = lim.censored;

    if (cfg.finite && cfg.finite_replicates > 0) {
        const SO2Endpoints fin = so2_finite_extents(cfg.n, cfg.finite_replicates, cfg.seed, cfg.threads, cfg.s_max);
        Table ft;
        ft.add("extent_minus", fin.minus);
        ft.add("extent_plus", fin.plus);
        r.tables["finite"] = ft;
        r.tests.push_back(ks_test("finite plus vs limit plus", stats::ks_two_sample(fin.plus, lim.plus), 0.05));
        r.tests.push_back(ks_test("finite minus vs limit minus", stats::ks_two_sample(fin.minus, lim.minus), 0.05));
        r.summary["finite_mean_plus"] = stats::mean(fin.plus);
        r.summary["finite_mean_minus"] = stats::mean(fin.minus);
        r.summary["finite_censored"] = fin.censored;
    }
    r.runtime_seconds = seconds_since(t0);
    return r;
}

// ---------------------------------------------------------------------------
// Translation box

BoxExtents translation_box_limit(int replicates, std::uint64_t seed, int threads) {
    const auto K = ConvexBody::cube(2);
    const double R = 50.0;
    BoxExtents out;
    for (auto& e : out.e) e.assign(static_cast<std::size_t>(replicates), 0.0);
    const ConeSpec cone = ConeSpec::preset("translations", 2);
    parallel_for(replicates, threads, [&](int i) {
        const HalfSpaceSystem S =
            restrict_to_cone(build_zero_cell(K, R, seed, kStreamBoxLimit + static_cast<std::uint64_t>(i)), cone);
        // Reflected cell: extent along v is the cell's extent along -v.
        const Vec dirs[4] = {axis_vector(2, 0, -1), axis_vector(2, 1, -1), axis_vector(2, 0, 1), axis_vector(2, 1, 1)};
        for (int k = 0; k < 4; ++k) out.e[k][static_cast<std::size_t>(i)] = std::min(support_extent(S, dirs[k]), R);
    });
    return out;
}

BoxExtents translation_box_oracle(int replicates, std::uint64_t seed) {
    BoxExtents out;
    Rng rng = make_rng(seed, kStreamBoxOracle);
    for (int i = 0; i < replicates; ++i)
        for (auto& e : out.e) e.push_back(-2.0 * std::log1p(-uniform01(rng)));
    return out;
}

BoxExtents translation_box_finite(int n, int replicates, std::uint64_t seed, int threads) {
    const auto K = ConvexBody::cube(2);
    BoxExtents out;
    for (auto& e : out.e) e.assign(static_cast<std::size_t>(replicates), 0.0);
    parallel_for(replicates, threads, [&](int i) {
        const SampleBatch b = uniform_sample(K, n, seed, kStreamBoxFinite + static_cast<std::uint64_t>(i));
        // X_n = -(K minus Xi_n), so its extent along v is n h(K minus Xi_n, -v).
        const ConvexBody D = minkowski_difference(K, b.points);
        const Vec dirs[4] = {axis_vector(2, 0, -1), axis_vector(2, 1, -1), axis_vector(2, 0, 1), axis_vector(2, 1, 1)};
        for (int k = 0; k < 4; ++k) out.e[k][static_cast<std::size_t>(i)] = n * support(D, dirs[k]);
    });
    return out;
}

ExperimentReport translation_box_experiment(const BoxConfig& cfg) {
    const auto t0 = Clock::now();
    ExperimentReport r;
    r.name = "translation-box";
    r.seed = cfg.seed;
    r.config = {{"body", "square [-1,1]^2"}, {"cone", "translations"}, {"limit_replicates", cfg.limit_replicates},
                {"n", cfg.n}, {"finite_replicates", cfg.finite ? cfg.finite_replicates : 0}, {"seed", cfg.seed}};
    const char* names[4] = {"plus_e1", "plus_e2", "minus_e1", "minus_e2"};
    const auto law = stats::exponential_cdf(0.5);

    const BoxExtents lim = translation_box_limit(cfg.limit_replicates, cfg.seed, cfg.threads);
    const BoxExtents orc = translation_box_oracle(cfg.limit_replicates, cfg.seed);
    Table lt, ot;
    for (int k = 0; k < 4; ++k) {
        lt.add(names[k], lim.e[k]);
        ot.add(names[k], orc.e[k]);
        r.tests.push_back(ks_test(std::string("limit ") + names[k] + " vs Exp(1/2)", stats::ks_one_sample(lim.e[k], law), 0.02));
        r.tests.push_back(ks_test(std::string("limit ") + names[k] + " vs arrival oracle",
                                  stats::ks_two_sample(lim.e[k], orc.e[k]), 0.03, false));
        r.summary[std::string("limit_mean_") + names[k]] = stats::mean(lim.e[k]);
    }
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b)
            r.tests.push_back(abs_below(std::string("rank correlation ") + names[a] + "/" + names[b],
                                        stats::spearman(lim.e[a], lim.e[b]), 0.03));
    r.tables["limit"] = lt;
    r.tables["oracle"] = ot;

    if (cfg.finite && cfg.finite_replicates > 0) {
        const BoxExtents fin = translation_box_finite(cfg.n, cfg.finite_replicates, cfg.seed, cfg.threads);
        Table ft;
        for (int k = 0; k < 4; ++k) {
            ft.add(names[k], fin.e[k]);
            r.tests.push_back(ks_test(std::string("finite ") + names[k] + " vs Exp(1/2)", stats::ks_one_sample(fin.e[k], law), 0.05));
        }
        r.tables["finite"] = ft;
    }
    r.runtime_seconds = seconds_since(t0);
    return r;
}

// ---------------------------------------------------------------------------
// Inclusion functional

ExperimentReport inclusion_experiment(const InclusionConfig& cfg) {
    const auto t0 = Clock::now();
    if (cfg.points.empty()) throw std::invalid_argument("inclusion: empty test set");
    const int d = cfg.body.dim();
    double R = 0.0;
    for (const Vec& p : cfg.points) {
        if (p.size() != tangent_dim(d)) throw std::invalid_argument("inclusion: test points must have length d + d^2");
        R = std::max(R, p.norm());
    }
    R = R * (1.0 + 1e-9) + 1e-9;
    const std::size_t m = cfg.points.size();
    const std::size_t reps = static_cast<std::size_t>(cfg.replicates);

    std::vector<std::vector<double>> fin(m + 1, std::vector<double>(reps)), lim(m + 1, std::vector<double>(reps));
    parallel_for(cfg.replicates, cfg.threads, [&](int i) {
        const auto idx = static_cast<std::size_t>(i);
        const SampleBatch b = uniform_sample(cfg.body, cfg.n, cfg.seed, kStreamInclusionFinite + idx);
        const HalfSpaceSystem S = build_zero_cell(cfg.body, R, cfg.seed, kStreamInclusionLimit + idx);
        bool all_f = true, all_l = true;
        for (std::size_t k = 0; k < m; ++k) {
            const bool f = xn_membership(cfg.points[k], b, cfg.n);
            const bool l = membership(S, (-cfg.points[k]).eval());
            fin[k][idx] = f;
            lim[k][idx] = l;
            all_f = all_f && f;
            all_l = all_l && l;
        }
        fin[m][idx] = all_f;
        lim[m][idx] = all_l;
    });

    ExperimentReport r;
    r.name = "inclusion";
    r.seed = cfg.seed;
    io::json pts = io::json::array();
    for (const Vec& p : cfg.points) pts.push_back(io::to_json(p));
    r.config = {{"body", io::to_json(cfg.body)}, {"points", pts}, {"n", cfg.n}, {"replicates", cfg.replicates},
                {"seed", cfg.seed}, {"tolerance", cfg.tolerance}};
    Table t;
    io::json freq = io::json::array();
    for (std::size_t k = 0; k <= m; ++k) {
        const std::string label = k < m ? "point_" + std::to_string(k) : "all";
        t.add("finite_" + label, fin[k]);
        t.add("limit_" + label, lim[k]);
        const double pf = stats::mean(fin[k]), pl = stats::mean(lim[k]);
        freq.push_back({{"set", label}, {"finite", pf}, {"limit", pl}});
        r.tests.push_back(abs_below("inclusion frequency difference " + label, pf - pl, cfg.tolerance, k == m));
    }
    r.tables["inclusion"] = t;
    r.summary["frequencies"] = freq;
    r.runtime_seconds = seconds_since(t0);
    return r;
}

// ---------------------------------------------------------------------------
// Recession

ExperimentReport recession_experiment(const ConvexBody& K) {
    const auto t0 = Clock::now();
    const int d = K.dim();
    ExperimentReport r;
    r.name = "recession";
    r.config = {{"body", io::to_json(K)}};
    const RecessionConeTK T(K);
    io::json rows = io::json::array();
    for (const std::string& name : ConeSpec::preset_names()) {
        const ConeSpec cone = ConeSpec::preset(name, d);
        const BoundednessCertificate c = is_bounded(K, cone);
        io::json row{{"cone", name}, {"bounded", c.bounded}, {"exact", c.exact}, {"cuts", c.cuts}};
        row["direction"] = c.direction ? io::to_json(*c.direction) : io::json(nullptr);
        rows.push_back(row);
        if (c.direction) {
            // A certificate must be a nonzero point of the reflected cone inside the preset.
            const bool valid = c.direction->norm() > 1e-9 && cone.contains(*c.direction, 1e-8) &&
                               (!c.exact || T.reflected_contains(*c.direction, 1e-8));
            r.tests.push_back({"certificate valid: " + name, T.max_violation(-*c.direction), 1e-8, std::nullopt, valid});
        }
    }
    r.summary["presets"] = rows;

    // (0, mu I) with mu <= 0 lies in every realization of the zero cell.
    int violations = 0;
    for (int rep = 0; rep < 20; ++rep) {
        const HalfSpaceSystem S = build_zero_cell(K, 5.0, 1, kStreamRecession + static_cast<std::uint64_t>(rep));
        for (double mu : {0.0, -0.01, -0.5, -3.0, -100.0}) {
            TangentPoint p = TangentPoint::zero(d);
            p.C = mu * Mat::Identity(d, d);
            violations += !membership(S, p);
        }
    }
    r.tests.push_back({"(0, mu I), mu <= 0, in the zero cell", static_cast<double>(violations), 0.5, std::nullopt,
                       violations == 0});

    if (K.kind() == BodyKind::Ball) {
        // Diagonal slice of the reflected cone: exactly the nonpositive orthant.
        Rng rng = make_rng(2, kStreamRecession);
        int mismatches = 0;
        for (int i = 0; i < 2000; ++i) {
            Vec lam(d);
            for (int k = 0; k < d; ++k) {
                const double u = uniform01(rng);
                // Include exact zeros: the orthant is closed.
                lam(k) = u < 0.1 ? 0.0 : 2.0 * uniform01(rng) - 1.0;
            }
            TangentPoint p = TangentPoint::zero(d);
            p.C = lam.asDiagonal();
            const bool in_orthant = (lam.array() <= 0.0).all();
            mismatches += T.reflected_contains(p.flatten(), 0.0) != in_orthant;
        }
        r.tests.push_back({"diagonal slice equals the nonpositive orthant", static_cast<double>(mismatches), 0.5,
                           std::nullopt, mismatches == 0});
        const bool full_unbounded = !is_bounded(K, ConeSpec::preset("full", d)).bounded;
        const bool sl_bounded = is_bounded(K, ConeSpec::preset("sym-traceless", d)).bounded;
        r.tests.push_back({"full cone unbounded", full_unbounded ? 1.0 : 0.0, 0.5, std::nullopt, full_unbounded});
        r.tests.push_back({"symmetric traceless cone bounded", sl_bounded ? 1.0 : 0.0, 0.5, std::nullopt, sl_bounded});
    }
    r.runtime_seconds = seconds_since(t0);
    return r;
}

// ---------------------------------------------------------------------------
// Scalings example

ScalingsCheck scalings_identity_check(const ConvexBody& K, int replicates, int points_per_replicate, std::uint64_t seed,
                                      double window) {
    const auto* P = K.get_if<Polytope>();
    if (!P) throw std::invalid_argument("scalings check: K must be a polytope");
    const int d = K.dim();
    const ConeSpec cone = ConeSpec::preset("scalings", d);
    ScalingsCheck out;
    for (int rep = 0; rep < replicates; ++rep) {
        const std::uint64_t stream = kStreamScalings + static_cast<std::uint64_t>(rep);
        const HalfSpaceSystem S = build_zero_cell(K, window, seed, stream);
        const HalfSpaceSystem Sc = restrict_to_cone(S, cone);
        Rng rng = make_rng(seed, stream + (1ull << 32));
        for (int i = 0; i < points_per_replicate; ++i) {
            Vec x(d);
            for (int k = 0; k < d; ++k) x(k) = 2.0 * uniform01(rng) - 1.0;
            const double rr = 1.5 * uniform01(rng);
            TangentPoint p{x, rr * Mat::Identity(d, d)};
            const bool lhs = membership(Sc, cone.to_coords(p.flatten()));
            // rK + x inside the hyperplane cell: every vertex below every mark's hyperplane.
            bool rhs = true;
            for (const NormalBundleMark& m : S.marks)
                for (const Vec& v : P->vertices()) rhs = rhs && (rr * v + x).dot(m.u) <= m.t + kGeoTol;
            ++out.checked;
            out.inside += lhs;
            out.mismatches += lhs != rhs;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Cones example

ConesSlope cones_intensity_slope(int d, int target_points, std::uint64_t seed, int bins) {
    if (d < 2 || d > 3) throw std::invalid_argument("cones: d must be 2 or 3");
    const auto K = ConvexBody::half_ball(d);
    const Vec axis = K.as<HalfBall>().axis;
    const double flat = std::pow(M_PI, (d - 1) / 2.0) / std::tgamma((d - 1) / 2.0 + 1.0);  // unit (d-1)-ball volume
    const double flat_rate = flat / volume(K);
    ConesSlope out;
    out.t_max = target_points / flat_rate;
    const PoissonSample s = sample_PK(K, out.t_max, seed, kStreamCones + static_cast<std::uint64_t>(d));
    std::vector<double> norms;
    for (const NormalBundleMark& m : s.marks)
        if ((m.u + axis).norm() < 1e-12) norms.push_back((m.eta - m.eta.dot(axis) * axis).norm() / m.t);
    out.points = static_cast<int>(norms.size());

    // Log-spaced annuli in R^{d-1} above 1/t_max, where the intensity is an exact power.
    const double lo = 2.0 / out.t_max, hi = 400.0 / out.t_max;
    const double ratio = std::pow(hi / lo, 1.0 / bins);
    std::vector<double> counts(static_cast<std::size_t>(bins), 0.0);
    for (double r : norms)
        if (r >= lo && r < hi) {
            const int b = std::min(bins - 1, static_cast<int>(std::log(r / lo) / std::log(ratio)));
            counts[static_cast<std::size_t>(b)] += 1.0;
        }
    std::vector<double> lx, ly, w;
    for (int b = 0; b < bins; ++b) {
        const double r1 = lo * std::pow(ratio, b), r2 = r1 * ratio;
        const double vol = d == 2 ? 2.0 * (r2 - r1) : M_PI * (r2 * r2 - r1 * r1);
        const double c = counts[static_cast<std::size_t>(b)];
        out.radius.push_back(std::sqrt(r1 * r2));
        out.density.push_back(c / vol);
        out.counts.push_back(c);
        if (c > 0) {
            lx.push_back(std::log(std::sqrt(r1 * r2)));
            ly.push_back(std::log(c / vol));
            w.push_back(c);
        }
    }
    out.slope = stats::weighted_line_fit(lx, ly, w).slope;
    return out;
}

ExperimentReport cones_experiment(int d, int target_points, std::uint64_t seed) {
    const auto t0 = Clock::now();
    const ConesSlope c = cones_intensity_slope(d, target_points, seed);
    ExperimentReport r;
    r.name = "cones";
    r.seed = seed;
    r.config = {{"body", "half-ball"}, {"d", d}, {"target_points", target_points}, {"seed", seed}};
    Table t;
    t.add("radius", c.radius);
    t.add("density", c.density);
    t.add("count", c.counts);
    r.tables["bins"] = t;
    r.summary["points"] = c.points;
    r.summary["t_max"] = c.t_max;
    r.summary["slope"] = c.slope;
    r.tests.push_back(abs_below("log-log slope + d", c.slope + d, 0.1));
    r.runtime_seconds = seconds_since(t0);
    return r;
}

}  // namespace khull
