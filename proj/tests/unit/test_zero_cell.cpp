#include "helpers.hpp"
#include "khull/zero_cell.hpp"

#include <doctest.h>

#include <map>

using namespace khull;
using khull::test::random_in_box;
using khull::test::random_unit;

namespace {

Vec random_tangent(Rng& rng, int d, double half) { return random_in_box(rng, tangent_dim(d), half); }

// Grid maximum of -<C y + x, y> over the unit circle: an oracle for balls in the plane.
double circle_violation(const Vec& p, int n = 200000) {
    const TangentPoint t = TangentPoint::unflatten(p, 2);
    double best = -kInfinity;
    for (int k = 0; k < n; ++k) {
        const double a = 2.0 * M_PI * k / n;
        const Vec y = make_vec({std::cos(a), std::sin(a)});
        best = std::max(best, -(t.C * y + t.x).dot(y));
    }
    return best;
}

}  // namespace

TEST_CASE("half-space from a mark evaluates <C eta + x, u>") {
    Rng rng = make_rng(21);
    for (int d : {1, 2, 3})
        for (int i = 0; i < 50; ++i) {
            const NormalBundleMark m{uniform01(rng), random_in_box(rng, d, 2.0), random_unit(rng, d)};
            const Constraint c = halfspace_from_mark(m, 4);
            const TangentPoint p = TangentPoint::unflatten(random_tangent(rng, d, 3.0), d);
            CHECK(c.normal.dot(p.flatten()) == doctest::Approx((p.C * m.eta + p.x).dot(m.u)));
            CHECK(c.offset == m.t);
            CHECK(c.mark == 4);
            CHECK((TangentPoint::unflatten(p.flatten(), d).C - p.C).norm() == 0.0);
        }
}

TEST_CASE("cone presets have orthonormal bases of the right size") {
    for (int d : {1, 2, 3}) {
        const std::map<std::string, int> sizes{{"translations", d},
                                               {"skew", d * (d - 1) / 2},
                                               {"rigid", d + d * (d - 1) / 2},
                                               {"traceless", d * d - 1},
                                               {"sym-traceless", d * (d + 1) / 2 - 1},
                                               {"diagonal", d},
                                               {"nonpositive-diagonal", d},
                                               {"scalar", 1},
                                               {"scalings", d + 1},
                                               {"full", d + d * d}};
        for (const auto& name : ConeSpec::preset_names()) {
            const ConeSpec c = ConeSpec::preset(name, d);
            CHECK(c.size() == sizes.at(name));
            CHECK((c.basis.transpose() * c.basis - Mat::Identity(c.size(), c.size())).norm() < 1e-12);
        }
    }
    const ConeSpec skew = ConeSpec::preset("skew", 2);
    // J = [[0, 1], [-1, 0]] / sqrt 2 keeps its orientation.
    CHECK(skew.basis(3, 0) == doctest::Approx(1.0 / std::sqrt(2.0)));
    CHECK(skew.basis(4, 0) == doctest::Approx(-1.0 / std::sqrt(2.0)));
    const ConeSpec neg = ConeSpec::preset("nonpositive-diagonal", 2);
    TangentPoint p = TangentPoint::zero(2);
    p.C = -Mat::Identity(2, 2);
    CHECK(neg.contains(p.flatten()));
    CHECK(!neg.contains((-p.flatten()).eval()));
    CHECK_THROWS_AS(ConeSpec::preset("shears", 2), std::invalid_argument);
}

TEST_CASE("the window radius makes the zero cell exact inside the window") {
    const auto K = ConvexBody::cube(2, 1.0);
    const double R = 0.5;
    const double t_window = window_t_max(K, R);
    CHECK(t_window == doctest::Approx(0.5 * (1.0 + std::sqrt(2.0))));
    const PoissonSample big = sample_PK(K, 40.0, 31);
    PoissonSample cut = big;
    cut.marks.clear();
    for (const auto& m : big.marks)
        if (m.t <= t_window) cut.marks.push_back(m);
    const HalfSpaceSystem S_big = zero_cell_from_sample(big, 2), S_cut = zero_cell_from_sample(cut, 2, R);
    Rng rng = make_rng(32);
    int checked = 0;
    for (int i = 0; i < 5000; ++i) {
        Vec p = random_tangent(rng, 2, 1.0);
        if (p.norm() > R) p *= R / p.norm() * uniform01(rng);
        CHECK(membership(S_big, p) == membership(S_cut, p));
        ++checked;
    }
    CHECK(checked == 5000);
}

TEST_CASE("support extent matches a bisection on membership") {
    const HalfSpaceSystem S = build_zero_cell(ConvexBody::cube(2), 20.0, 41);
    REQUIRE(S.constraints.size() > 50);
    Rng rng = make_rng(42);
    int finite = 0;
    for (int i = 0; i < 100; ++i) {
        const Vec dir = random_unit(rng, S.dim);
        const double s = support_extent(S, dir);
        // The cube's reflected recession cone has interior, so some rays escape.
        if (!std::isfinite(s)) {
            CHECK(membership(S, (1e6 * dir).eval()));
            continue;
        }
        ++finite;
        CHECK(membership(S, (0.999999 * s * dir).eval()));
        CHECK(!membership(S, (1.000001 * s * dir).eval(), 0.0));
    }
    CHECK(finite > 50);
    CHECK(membership(S, Vec::Zero(S.dim).eval()));
}

TEST_CASE("reflection and transformations act as stated") {
    const auto K = ConvexBody::cube(2, 1.0);
    const HalfSpaceSystem S = build_zero_cell(K, 10.0, 51);
    const HalfSpaceSystem Sr = reflect(S);
    const Vec v = make_vec({0.3, -0.2});
    const HalfSpaceSystem St = transform_translation_of_K(S, v);
    const double a = 0.7;
    const Mat A = (Mat(2, 2) << std::cos(a), -std::sin(a), std::sin(a), std::cos(a)).finished();
    const HalfSpaceSystem Sa = transform_rotation_of_K(S, A);

    // The shifted body, sampled from the shifted marks.
    PoissonSample shifted;
    for (const auto& m : S.marks) shifted.marks.push_back({m.t, m.eta + v, m.u});
    const HalfSpaceSystem Sv = zero_cell_from_sample(shifted, 2);

    Rng rng = make_rng(52);
    for (int i = 0; i < 2000; ++i) {
        const Vec p = random_tangent(rng, 2, 0.8);
        const TangentPoint t = TangentPoint::unflatten(p, 2);
        CHECK(membership(Sr, p) == membership(S, (-p).eval()));
        CHECK(membership(St, p) == membership(S, TangentPoint{t.x + t.C * v, t.C}));
        CHECK(membership(St, p) == membership(Sv, p));
        CHECK(membership(Sa, rotate_tangent(p, A, 2)) == membership(S, p));
    }
    CHECK_THROWS_AS(transform_rotation_of_K(S, 2.0 * A), std::invalid_argument);
}

TEST_CASE("restriction to a cone keeps the slice") {
    const HalfSpaceSystem S = build_zero_cell(ConvexBody::ball(2, 1.0), 15.0, 61);
    Rng rng = make_rng(62);
    for (const auto& name : ConeSpec::preset_names()) {
        const ConeSpec cone = ConeSpec::preset(name, 2);
        const HalfSpaceSystem R = restrict_to_cone(S, cone);
        CHECK(R.dim == cone.size());
        for (int i = 0; i < 200; ++i) {
            const Vec c = random_in_box(rng, cone.size(), 1.0);
            const Vec p = cone.from_coords(c);
            const bool in_cone = cone.contains(p);
            CHECK(membership(R, c) == (membership(S, p) && in_cone));
            const Vec dir = c.normalized();
            const double s1 = support_extent(R, dir), s2 = support_extent(S, cone.from_coords(dir), cone);
            if (std::isfinite(s1) || std::isfinite(s2)) CHECK(s1 == doctest::Approx(s2).epsilon(1e-9));
        }
    }
    CHECK_THROWS_AS(support_extent(S, make_vec({1, 0, 0, 0, 0, 0}), ConeSpec::preset("skew", 2)), std::invalid_argument);
}

TEST_CASE("exact violation over the ball matches a dense grid") {
    const RecessionConeTK T(ConvexBody::ball(2, 1.0));
    Rng rng = make_rng(71);
    for (int i = 0; i < 40; ++i) {
        const Vec p = random_tangent(rng, 2, 1.0);
        const double exact = T.max_violation(p), grid = circle_violation(p);
        CHECK(exact >= grid - 1e-9);
        CHECK(exact <= grid + 1e-8);
    }
    // Hard case: the linear term is orthogonal to the top eigenvector.
    TangentPoint h = TangentPoint::zero(2);
    h.C = (Mat(2, 2) << -1.0, 0.0, 0.0, 1.0).finished();
    h.x = make_vec({0.0, 0.5});
    NormalBundleMark where;
    const double v = T.max_violation(h.flatten(), &where);
    CHECK(v == doctest::Approx(circle_violation(h.flatten())).epsilon(1e-8));
    CHECK(where.u.norm() == doctest::Approx(1.0));
    CHECK(-(h.C * where.eta + h.x).dot(where.u) == doctest::Approx(v));
}

TEST_CASE("membership in T_K for polytopes uses vertex-facet pairs") {
    const auto K = ConvexBody::cube(2, 1.0);
    const RecessionConeTK T(K);
    CHECK(T.finite());
    CHECK(T.normals().size() == 8);
    Rng rng = make_rng(72);
    for (int i = 0; i < 500; ++i) {
        const Vec p = random_tangent(rng, 2, 1.0);
        const TangentPoint t = TangentPoint::unflatten(p, 2);
        // Oracle: dense samples on each facet.
        double worst = -kInfinity;
        for (const Facet& f : K.as<Polytope>().facets()) {
            const Vec tangent = make_vec({-f.normal(1), f.normal(0)});
            for (int k = 0; k <= 100; ++k) {
                const Vec y = f.normal + (-1.0 + 0.02 * k) * tangent;
                worst = std::max(worst, -(t.C * y + t.x).dot(f.normal));
            }
        }
        CHECK(T.max_violation(p) == doctest::Approx(worst).epsilon(1e-12));
    }
}

TEST_CASE("boundedness of the reflected recession cone on cone presets") {
    const std::map<std::string, bool> ball_bounded{{"translations", true}, {"skew", false},     {"rigid", false},
                                                   {"traceless", false},   {"sym-traceless", true}, {"diagonal", false},
                                                   {"nonpositive-diagonal", false}, {"scalar", false}, {"scalings", false},
                                                   {"full", false}};
    for (int d : {2, 3}) {
        const auto K = ConvexBody::ball(d, 1.0);
        const RecessionConeTK T(K);
        for (const auto& [name, expected] : ball_bounded) {
            CAPTURE(name);
            CAPTURE(d);
            const ConeSpec cone = ConeSpec::preset(name, d);
            const BoundednessCertificate c = is_bounded(K, cone);
            CHECK(c.exact);
            CHECK(c.bounded == expected);
            if (!c.bounded) {
                REQUIRE(c.direction);
                CHECK(c.direction->norm() > 1e-6);
                CHECK(cone.contains(*c.direction, 1e-8));
                CHECK(T.reflected_contains(*c.direction, 1e-8));
            }
        }
    }
    SUBCASE("square") {
        const auto K = ConvexBody::cube(2);
        CHECK(is_bounded(K, ConeSpec::preset("translations", 2)).bounded);
        CHECK(is_bounded(K, ConeSpec::preset("sym-traceless", 2)).bounded);
        // Rotating the square moves a vertex out through an adjacent facet.
        CHECK(is_bounded(K, ConeSpec::preset("skew", 2)).bounded);
        CHECK(!is_bounded(K, ConeSpec::preset("full", 2)).exact);
    }
}

TEST_CASE("directions of the reflected cone never leave the zero cell") {
    const auto K = ConvexBody::ball(2, 1.0);
    const HalfSpaceSystem S = build_zero_cell(K, 10.0, 81);
    const RecessionConeTK T(K);
    Rng rng = make_rng(82);
    for (int i = 0; i < 200; ++i) {
        // (x, C) with C = -mu I + skew and |x| <= mu lies in the reflected cone.
        const double mu = uniform01(rng), w = 2.0 * uniform01(rng) - 1.0;
        TangentPoint p = TangentPoint::zero(2);
        p.C = (Mat(2, 2) << -mu, w, -w, -mu).finished();
        p.x = mu * uniform01(rng) * random_unit(rng, 2);
        REQUIRE(T.reflected_contains(p.flatten()));
        CHECK(support_extent(S, p.flatten()) == kInfinity);
    }
}

TEST_CASE("finite systems: boundedness after restriction") {
    const auto K = ConvexBody::ball(2, 1.0);
    const HalfSpaceSystem S = build_zero_cell(K, 20.0, 91);
    CHECK(is_bounded(S, ConeSpec::preset("translations", 2)).bounded);
    CHECK(is_bounded(S, ConeSpec::preset("sym-traceless", 2)).bounded);
    const auto skew = is_bounded(S, ConeSpec::preset("skew", 2));
    CHECK(!skew.bounded);
    REQUIRE(skew.direction);
    CHECK(support_extent(S, skew.direction->normalized()) == kInfinity);
}

TEST_CASE("polar of the zero cell") {
    const HalfSpaceSystem S = build_zero_cell(ConvexBody::cube(2), 8.0, 101);
    const ZeroCellPolar P = polar_of_zero_cell(S);
    REQUIRE(P.points().size() == S.constraints.size());
    Rng rng = make_rng(102);
    for (int i = 0; i < 300; ++i) {
        const Vec p = random_tangent(rng, 2, 1.0);
        // p in S iff h(polar, p) <= 1.
        CHECK(membership(S, p) == (P.support(p) <= 1.0 + kGeoTol));
    }
    for (const Vec& q : P.points()) {
        CHECK(P.contains(q));
        CHECK(P.contains((0.5 * q).eval()));
    }
    CHECK(P.contains(Vec::Zero(S.dim).eval()));
    CHECK(!P.contains((Vec::Ones(S.dim) * 1e3).eval()));
    const PointList proj = P.translation_projection();
    CHECK(proj.size() == P.points().size());
    CHECK(proj.front().size() == 2);
}

TEST_CASE("zero cell serializes") {
    const HalfSpaceSystem S = build_zero_cell(ConvexBody::ball(2, 1.0), 2.0, 111);
    const io::json j = to_json(S);
    CHECK(j["d"] == 2);
    CHECK(j["dim"] == 6);
    CHECK(j["constraints"].size() == S.constraints.size());
    CHECK(j["marks"].size() == S.marks.size());
    CHECK(j["window"].get<double>() == 2.0);
}
