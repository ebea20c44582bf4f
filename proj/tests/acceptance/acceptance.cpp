// One PASS/FAIL line per acceptance criterion. Thresholds are fixed here.
#include "khull/experiments.hpp"
#include "khull/hull_engine.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <thread>
#include <vector>

using namespace khull;

namespace {

constexpr std::uint64_t kSeed = 20261019;

const int kThreads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));

int failures = 0;

void verdict(int id, const std::string& name, bool pass, const std::string& detail, double seconds) {
    std::printf("%s [%d] %s: %s (%.1f s)\n", pass ? "PASS" : "FAIL", id, name.c_str(), detail.c_str(), seconds);
    std::fflush(stdout);
    failures += !pass;
}

void info(const std::string& text) {
    std::printf("     info: %s\n", text.c_str());
    std::fflush(stdout);
}

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

double elapsed(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Vec v2(double x, double y) { return make_vec({x, y}); }

// Andrew's monotone chain, counterclockwise, collinear points dropped.
PointList monotone_chain(PointList p) {
    std::sort(p.begin(), p.end(), [](const Vec& a, const Vec& b) { return a(0) < b(0) || (a(0) == b(0) && a(1) < b(1)); });
    p.erase(std::unique(p.begin(), p.end(), [](const Vec& a, const Vec& b) { return (a - b).norm() == 0.0; }), p.end());
    if (p.size() < 3) return p;
    auto cross = [](const Vec& o, const Vec& a, const Vec& b) {
        return (a(0) - o(0)) * (b(1) - o(1)) - (a(1) - o(1)) * (b(0) - o(0));
    };
    PointList h(2 * p.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        while (k >= 2 && cross(h[k - 2], h[k - 1], p[i]) <= 1e-14) --k;
        h[k++] = p[i];
    }
    for (std::size_t i = p.size() - 1, t = k + 1; i-- > 0;) {
        while (k >= t && cross(h[k - 2], h[k - 1], p[i]) <= 1e-14) --k;
        h[k++] = p[i];
    }
    h.resize(k - 1);
    return h;
}

bool same_sets(const PointList& a, const PointList& b, double tol) {
    if (a.size() != b.size()) return false;
    for (const Vec& p : a)
        if (std::none_of(b.begin(), b.end(), [&](const Vec& q) { return (p - q).norm() <= tol; })) return false;
    return true;
}

// Membership in pos(A) for planar A by angles: the cone is everything except
// the largest angular gap when that gap exceeds pi.
bool angular_in_cone(const PointList& A, const Vec& z) {
    std::vector<double> ang;
    for (const Vec& a : A)
        if (a.norm() > 0.0) ang.push_back(std::atan2(a(1), a(0)));
    if (ang.empty()) return z.norm() == 0.0;
    std::sort(ang.begin(), ang.end());
    double gap = ang.front() + 2.0 * M_PI - ang.back(), lo = ang.front(), hi = ang.back();
    for (std::size_t i = 1; i < ang.size(); ++i)
        if (ang[i] - ang[i - 1] > gap) {
            gap = ang[i] - ang[i - 1];
            lo = ang[i];
            hi = ang[i - 1];
        }
    if (gap < M_PI) return true;
    double a = std::atan2(z(1), z(0)) - lo;
    while (a < 0) a += 2.0 * M_PI;
    double span = hi - lo;
    while (span < 0) span += 2.0 * M_PI;
    return a <= span;
}

double angle_margin(const PointList& A, const Vec& z) {
    double m = kInfinity;
    const double az = std::atan2(z(1), z(0));
    for (const Vec& a : A) {
        double d = std::abs(std::atan2(a(1), a(0)) - az);
        m = std::min(m, std::min(d, 2.0 * M_PI - d));
    }
    return m;
}

Vec random_box(Rng& rng, int d, double h) {
    Vec v(d);
    for (int i = 0; i < d; ++i) v(i) = h * (2.0 * uniform01(rng) - 1.0);
    return v;
}

// ---------------------------------------------------------------------------

void criterion_so2_law(std::vector<double>& plus, std::vector<double>& minus) {
    const auto t0 = std::chrono::steady_clock::now();
    const SO2Endpoints e = so2_limit_endpoints(10000, kSeed, kThreads);
    plus = e.plus;
    minus = e.minus;
    const auto exp1 = stats::exponential_cdf(1.0);
    const double kp = stats::ks_one_sample(e.plus, exp1).distance, km = stats::ks_one_sample(e.minus, exp1).distance;
    const double rho = stats::spearman(e.minus, e.plus);
    verdict(1, "SO2 endpoint law Exp(1)", kp < 0.02 && km < 0.02 && std::abs(rho) < 0.03,
            fmt("KS(zeta'')=%.4f KS(zeta')=%.4f (< 0.02), |rho|=%.4f (< 0.03)", kp, km, std::abs(rho)), elapsed(t0));
    const auto exp_mean2 = stats::exponential_cdf(0.5);
    info(fmt("mean(zeta'')=%.4f mean(zeta')=%.4f", stats::mean(e.plus), stats::mean(e.minus)) +
         fmt("; KS vs Exp(mean 2): %.4f / %.4f", stats::ks_one_sample(e.plus, exp_mean2).distance,
             stats::ks_one_sample(e.minus, exp_mean2).distance));
}

void criterion_so2_finite(const std::vector<double>& plus, const std::vector<double>& minus) {
    const auto t0 = std::chrono::steady_clock::now();
    const SO2Endpoints f = so2_finite_extents(2000, 2000, kSeed, kThreads);
    const double kp = stats::ks_two_sample(f.plus, plus).distance, km = stats::ks_two_sample(f.minus, minus).distance;
    verdict(2, "finite-n rotation extents match the limit cell", kp < 0.05 && km < 0.05,
            fmt("n=2000, 2000 reps: two-sample KS %.4f / %.4f (< 0.05), censored %.0f", kp, km, f.censored), elapsed(t0));
}

void criterion_translation_box() {
    const auto t0 = std::chrono::steady_clock::now();
    const BoxExtents lim = translation_box_limit(10000, kSeed, kThreads);
    const auto law = stats::exponential_cdf(0.5);
    double ks = 0.0, rho = 0.0;
    for (int k = 0; k < 4; ++k) {
        ks = std::max(ks, stats::ks_one_sample(lim.e[k], law).distance);
        for (int l = k + 1; l < 4; ++l) rho = std::max(rho, std::abs(stats::spearman(lim.e[k], lim.e[l])));
    }
    verdict(3, "translation box extents Exp(1/2), independent", ks < 0.02 && rho < 0.03,
            fmt("max KS %.4f (< 0.02), max pairwise |rho| %.4f (< 0.03)", ks, rho), elapsed(t0));
    const BoxExtents fin = translation_box_finite(5000, 2000, kSeed, kThreads);
    double kf = 0.0;
    for (int k = 0; k < 4; ++k) kf = std::max(kf, stats::ks_one_sample(fin.e[k], law).distance);
    info(fmt("finite n=5000, 2000 reps: max KS vs Exp(1/2) %.4f (design threshold 0.05)", kf));
}

void criterion_scalings() {
    const auto t0 = std::chrono::steady_clock::now();
    const ConvexBody square = ConvexBody::cube(2);
    const ConvexBody tri(Polytope::from_vertices({v2(-1, -1), v2(2, -1), v2(-1, 2)}));
    const ConvexBody cube3 = ConvexBody::cube(3);
    int checked = 0, mismatches = 0, inside = 0;
    for (const ConvexBody* K : {&square, &tri, &cube3}) {
        const ScalingsCheck c = scalings_identity_check(*K, 20, 100, kSeed);
        checked += c.checked;
        mismatches += c.mismatches;
        inside += c.inside;
    }
    verdict(4, "scalings identity (x, rI) in cell <=> rK + x in hyperplane cell", mismatches == 0,
            fmt("%.0f checks (100 points x 20 reps x 3 polytopes), %.0f mismatches, %.0f inside", checked, mismatches,
                inside),
            elapsed(t0));
}

void criterion_hull_suite() {
    const auto t0 = std::chrono::steady_clock::now();
    Rng rng = make_rng(kSeed, 5);
    int bad_linear = 0, bad_affine = 0, bad_cone = 0, bad_sphere = 0, bad_idem = 0, bad_sandwich = 0;
    double drift = 0.0;

    for (int rep = 0; rep < 50; ++rep) {
        PointList A;
        const int m = 1 + static_cast<int>(uniform01(rng) * 8);
        for (int i = 0; i < m; ++i) A.push_back(random_box(rng, 2, 0.7));

        // conv(A u -A) against an independent hull.
        PointList sym = A;
        for (const Vec& a : A) sym.push_back(-a);
        const Polytope lin = std::get<Polytope>(hull_linear_ball(A).rep);
        bad_linear += !same_sets(lin.vertices(), monotone_chain(sym), 1e-12);

        PointList B;
        for (int i = 0; i < 20; ++i) B.push_back(random_box(rng, 2, 1.0));
        const Polytope conv = std::get<Polytope>(hull_full_affine(B).rep);
        bad_affine += !same_sets(conv.vertices(), monotone_chain(B), 1e-12);

        // Cones: generators in a random arc, sometimes wider than pi.
        PointList G;
        const double base = 2.0 * M_PI * uniform01(rng), width = (rep % 5 == 0 ? 4.0 : 2.5) * uniform01(rng);
        for (int i = 0; i < 1 + rep % 4; ++i) {
            const double a = base + width * uniform01(rng);
            G.push_back((0.2 + uniform01(rng)) * v2(std::cos(a), std::sin(a)));
        }
        const HullResult pos = positive_hull(G);
        for (int i = 0; i < 400; ++i) {
            const Vec z = random_box(rng, 2, 3.0);
            if (angle_margin(G, z) < 1e-7) continue;
            bad_cone += pos.contains(z) != angular_in_cone(G, z);
        }

        // Half-ball: generators with angles in (-pi/2, pi/2), radius <= 1.
        PointList S;
        for (int i = 0; i < 1 + rep % 3; ++i) {
            const double a = M_PI * (uniform01(rng) - 0.5) * 0.98;
            S.push_back(std::sqrt(uniform01(rng)) * v2(std::cos(a), std::sin(a)));
        }
        const HullResult sph = spherical_hull_halfball(S);
        for (int i = 0; i < 400; ++i) {
            const Vec z = random_box(rng, 2, 1.2);
            if (angle_margin(S, z) < 1e-7 || std::abs(z.norm() - 1.0) < 1e-7) continue;
            bad_sphere += sph.contains(z) != (z.norm() <= 1.0 && angular_in_cone(S, z));
        }
        const SphericalPolytope arc = spherical_part(S);
        double lo = kInfinity, hi = -kInfinity;
        for (const Vec& s : S) {
            lo = std::min(lo, std::atan2(s(1), s(0)));
            hi = std::max(hi, std::atan2(s(1), s(0)));
        }
        bad_sphere += std::abs(arc.angle_lo - lo) > 1e-12 || std::abs(arc.angle_hi - hi) > 1e-12;

        // K-hulls over polytopes: idempotent and sandwiched.
        const ConvexBody hex(Polytope::from_vertices(
            {v2(1, 0), v2(0.5, 0.9), v2(-0.5, 0.9), v2(-1, 0), v2(-0.5, -0.9), v2(0.5, -0.9)}));
        for (const ConvexBody* K : {static_cast<const ConvexBody*>(nullptr), &hex}) {
            const ConvexBody Kb = K ? *K : ConvexBody::cube(2);
            PointList inK;
            for (const Vec& a : A)
                if (contains(Kb, a)) inK.push_back(a);
            if (inK.empty()) continue;
            const HullResult h = k_hull_translations(Kb, inK);
            const Polytope& P = std::get<Polytope>(h.rep);
            const Polytope again = std::get<Polytope>(k_hull_translations(Kb, P.vertices()).rep);
            bool ok = true;
            for (const Facet& f : P.facets()) {
                const double dd = std::abs(support(again, f.normal) - f.offset);
                drift = std::max(drift, dd);
                ok = ok && dd <= 1e-6;
            }
            for (const Facet& f : again.facets()) ok = ok && std::abs(support(P, f.normal) - f.offset) <= 1e-6;
            bad_idem += !ok;
            bool sand = true;
            for (const Vec& a : inK) sand = sand && h.contains(a);
            for (const Vec& v : P.vertices()) sand = sand && contains(Kb, v);
            const HullResult ts = hull_translations_scalings(Kb, inK);
            for (const Vec& a : inK) sand = sand && ts.contains(a);
            for (const Vec& v : std::get<Polytope>(ts.rep).vertices()) sand = sand && contains(Kb, v) && h.contains(v);
            bad_sandwich += !sand;
        }

        // Ball K-hull: contains A, excludes points outside K.
        PointList inB;
        for (const Vec& a : A)
            if (a.norm() <= 1.0) inB.push_back(a);
        if (!inB.empty()) {
            const HullResult bh = k_hull_translations(ConvexBody::ball(2, 1.0), inB);
            bool sand = true;
            for (const Vec& a : inB) sand = sand && bh.contains(a);
            for (int i = 0; i < 200; ++i) {
                const Vec z = random_box(rng, 2, 1.5);
                if (z.norm() > 1.0 + 1e-3) sand = sand && !bh.contains(z);
            }
            bad_sandwich += !sand;
        }
    }
    const bool pass = bad_linear + bad_affine + bad_cone + bad_sphere + bad_idem + bad_sandwich == 0;
    verdict(5, "hull oracle suite", pass,
            "failing inputs: linear " + std::to_string(bad_linear) + ", affine " + std::to_string(bad_affine) +
                ", cone " + std::to_string(bad_cone) + ", spherical " + std::to_string(bad_sphere) + ", idempotency " +
                std::to_string(bad_idem) + fmt(" (max drift %.2e)", drift) + ", sandwich " + std::to_string(bad_sandwich),
            elapsed(t0));
}

void criterion_recession() {
    const auto t0 = std::chrono::steady_clock::now();
    int failed = 0;
    std::string failed_names;
    for (int d : {2, 3}) {
        const ExperimentReport r = recession_experiment(ConvexBody::ball(d, 1.0));
        for (const StatTest& t : r.tests)
            if (!t.pass) {
                ++failed;
                failed_names += " [d=" + std::to_string(d) + "] " + t.name;
            }
    }
    const ExperimentReport sq = recession_experiment(ConvexBody::cube(2));
    for (const StatTest& t : sq.tests)
        if (!t.pass) {
            ++failed;
            failed_names += " [square] " + t.name;
        }
    verdict(6, "recession cones: diagonal orthant, GL unbounded, SL bounded, (0, mu I) feasible", failed == 0,
            failed == 0 ? "all checks pass for the disk, the 3-ball and the square" : "failed:" + failed_names,
            elapsed(t0));
}

void criterion_geometry() {
    const auto t0 = std::chrono::steady_clock::now();
    Rng rng = make_rng(kSeed, 7);
    int polar_bad = 0;
    for (int i = 0; i < 100; ++i) {
        const int d = 2 + i % 2;
        const double t = 0.05 + 5.0 * uniform01(rng);
        Vec u = random_box(rng, d, 1.0);
        u.normalize();
        const ConvexBody H(HalfSpace{u, t});
        const ConvexBody P = polar(H);
        const Polytope* seg = P.get_if<Polytope>();
        // Exact up to the rounding of normalizing u.
        if (!seg || !same_sets(seg->vertices(), {Vec::Zero(d), (u / t).eval()}, 1e-14 * (1.0 + 1.0 / t))) {
            ++polar_bad;
            continue;
        }
        // h(H, y) <= 1 iff y in [0, u/t]; h is finite only on the ray of u.
        for (double lam : {0.0, 0.25 / t, 1.0 / t, 1.5 / t}) {
            const Vec y = lam * u;
            polar_bad += contains(P, y, 1e-12) != (support(H, y) <= 1.0 + 1e-12);
        }
        const Vec off = random_box(rng, d, 1.0);
        if (std::abs(off.normalized().dot(u)) < 0.99) polar_bad += contains(P, (0.5 * u / t + 0.1 * off).eval());
        // Lifted to the tangent space: a single mark's polar is [0, (u, N) / t].
        Vec eta = random_box(rng, d, 1.0);
        HalfSpaceSystem S;
        S.d = d;
        S.dim = tangent_dim(d);
        S.constraints.push_back(halfspace_from_mark({t, eta, u}, 0));
        const ZeroCellPolar Z(S);
        polar_bad += Z.points().size() != 1 || (Z.points().front() - S.constraints.front().normal / t).norm() != 0.0;
    }
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const int d = 2 + i % 2;
        Vec u = random_box(rng, d, 1.0);
        u.normalize();
        const NormalBundleMark m{uniform01(rng) * 3.0, random_box(rng, d, 2.0), u};
        const Constraint c = halfspace_from_mark(m);
        const TangentPoint p{random_box(rng, d, 5.0), Mat::Random(d, d) * 5.0};
        worst = std::max(worst, std::abs(p.flatten().dot(c.normal) - (p.C * m.eta + p.x).dot(m.u)));
    }
    verdict(7, "polar of a half-space and mark flattening identity", polar_bad == 0 && worst <= 1e-12,
            fmt("polar mismatches %.0f over 100 (t, u); max flattening error %.2e (<= 1e-12) over 1000 tuples", polar_bad,
                worst),
            elapsed(t0));
}

void criterion_cones() {
    const auto t0 = std::chrono::steady_clock::now();
    const ConesSlope s2 = cones_intensity_slope(2, 100000, kSeed);
    const ConesSlope s3 = cones_intensity_slope(3, 100000, kSeed);
    verdict(8, "dual-cone intensity exponent -d", std::abs(s2.slope + 2.0) < 0.1 && std::abs(s3.slope + 3.0) < 0.1,
            fmt("slope d=2: %.4f, d=3: %.4f (within 0.1 of -d)", s2.slope, s3.slope), elapsed(t0));
}

}  // namespace

int main() {
    std::printf("acceptance suite, seed %llu, %d threads\n", static_cast<unsigned long long>(kSeed), kThreads);
    std::vector<double> plus, minus;
    criterion_so2_law(plus, minus);
    criterion_so2_finite(plus, minus);
    criterion_translation_box();
    criterion_scalings();
    criterion_hull_suite();
    criterion_recession();
    criterion_geometry();
    criterion_cones();
    std::printf("%d of 8 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
