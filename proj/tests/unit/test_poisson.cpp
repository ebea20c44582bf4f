#include "helpers.hpp"
#include "khull/poisson.hpp"

#include <doctest.h>

#include <sstream>
#include <string>

using namespace khull;

TEST_CASE("intensity is surface area over volume") {
    CHECK(BoundarySampler(ConvexBody::cube(2)).rate() == doctest::Approx(2.0));
    CHECK(BoundarySampler(ConvexBody::cube(3)).rate() == doctest::Approx(3.0));
    CHECK(BoundarySampler(ConvexBody::ball(2, 1.0)).rate() == doctest::Approx(2.0));
    CHECK(BoundarySampler(ConvexBody::ball(3, 2.0)).rate() == doctest::Approx(1.5));
    // Half-disk: (pi + 2) / (pi / 2).
    CHECK(BoundarySampler(ConvexBody::half_ball(2)).rate() == doctest::Approx((M_PI + 2.0) / (M_PI / 2.0)));
}

TEST_CASE("mark count and times follow the Poisson model") {
    const auto K = ConvexBody::cube(2);
    const double t_max = 10.0;
    const int reps = 400;
    double total = 0.0, t_sum = 0.0;
    long marks = 0;
    for (int r = 0; r < reps; ++r) {
        const PoissonSample s = sample_PK(K, t_max, 7, static_cast<std::uint64_t>(r));
        total += static_cast<double>(s.marks.size());
        for (std::size_t i = 0; i < s.marks.size(); ++i) {
            REQUIRE(s.marks[i].t > 0.0);
            REQUIRE(s.marks[i].t <= t_max);
            if (i > 0) REQUIRE(s.marks[i - 1].t <= s.marks[i].t);
            t_sum += s.marks[i].t;
            ++marks;
        }
    }
    const double mean = 20.0;
    // Mean of 400 Poisson(20) counts: sd sqrt(20 / 400).
    CHECK(std::abs(total / reps - mean) < 4.0 * std::sqrt(mean / reps));
    // Uniform times: sd of the average is t_max / sqrt(12 n).
    CHECK(std::abs(t_sum / static_cast<double>(marks) - t_max / 2.0) < 4.0 * t_max / std::sqrt(12.0 * marks));
}

TEST_CASE("marks lie on the normal bundle") {
    SUBCASE("polytopes") {
        for (int d : {2, 3}) {
            const auto K = ConvexBody::cube(d, 1.5);
            const auto& P = K.as<Polytope>();
            const PoissonSample s = sample_PK(K, 50.0, 3);
            REQUIRE(!s.marks.empty());
            for (const auto& m : s.marks) {
                bool on_facet = false;
                for (const Facet& f : P.facets())
                    on_facet = on_facet || ((f.normal - m.u).norm() < 1e-12 && std::abs(m.eta.dot(f.normal) - f.offset) < 1e-12);
                CHECK(on_facet);
                CHECK(contains(K, m.eta, 1e-12));
            }
        }
    }
    SUBCASE("balls") {
        const auto K = ConvexBody(Ball{2.0, make_vec({1.0, -1.0, 0.5})});
        for (const auto& m : sample_PK(K, 20.0, 4).marks) {
            CHECK(m.u.norm() == doctest::Approx(1.0));
            CHECK((m.eta - make_vec({1.0, -1.0, 0.5}) - 2.0 * m.u).norm() < 1e-12);
        }
    }
    SUBCASE("half-balls") {
        const auto K = ConvexBody::half_ball(2);
        const Vec axis = K.as<HalfBall>().axis;
        const PoissonSample s = sample_PK(K, 2000.0, 5);
        long flat = 0;
        for (const auto& m : s.marks) {
            CHECK(contains(K, m.eta, 1e-12));
            if ((m.u + axis).norm() < 1e-12) {
                ++flat;
                CHECK(std::abs(m.eta.dot(axis)) < 1e-12);
            } else {
                CHECK(m.u.dot(axis) >= 0.0);
                CHECK((m.eta - m.u).norm() < 1e-12);
            }
        }
        // Flat share 2 / (pi + 2), binomial sd.
        const double n = static_cast<double>(s.marks.size()), p = 2.0 / (M_PI + 2.0);
        CHECK(std::abs(flat / n - p) < 4.0 * std::sqrt(p * (1 - p) / n));
    }
}

TEST_CASE("facets are chosen in proportion to their area") {
    const auto K = ConvexBody(Polytope::box(make_vec({0, 0}), make_vec({3, 1})));
    const PoissonSample s = sample_PK(K, 3000.0, 9);
    long horizontal = 0;
    for (const auto& m : s.marks) horizontal += std::abs(m.u(1)) > 0.5;
    const double n = static_cast<double>(s.marks.size()), p = 6.0 / 8.0;
    CHECK(std::abs(horizontal / n - p) < 4.0 * std::sqrt(p * (1 - p) / n));
}

TEST_CASE("samples are reproducible per seed and stream") {
    const auto K = ConvexBody::ball(2, 1.0);
    const PoissonSample a = sample_PK(K, 30.0, 11, 2), b = sample_PK(K, 30.0, 11, 2), c = sample_PK(K, 30.0, 11, 3);
    REQUIRE(a.marks.size() == b.marks.size());
    for (std::size_t i = 0; i < a.marks.size(); ++i) {
        CHECK(a.marks[i].t == b.marks[i].t);
        CHECK(a.marks[i].eta == b.marks[i].eta);
    }
    CHECK((a.marks.size() != c.marks.size() || a.marks.front().t != c.marks.front().t));
    CHECK_THROWS_AS(sample_PK(K, 0.0, 1), std::invalid_argument);
}

TEST_CASE("mark CSV round-trips exactly") {
    const PoissonSample s = sample_PK(ConvexBody::ball(2, 1.0), 5.0, 12);
    const std::string csv = marks_csv(s, 2);
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    CHECK(line == "t,eta_1,eta_2,u_1,u_2");
    std::size_t i = 0;
    while (std::getline(in, line)) {
        REQUIRE(i < s.marks.size());
        double v[5];
        std::istringstream row(line);
        char comma;
        row >> v[0] >> comma >> v[1] >> comma >> v[2] >> comma >> v[3] >> comma >> v[4];
        CHECK(v[0] == s.marks[i].t);
        CHECK(v[1] == s.marks[i].eta(0));
        CHECK(v[4] == s.marks[i].u(1));
        ++i;
    }
    CHECK(i == s.marks.size());
}
