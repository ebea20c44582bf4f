#include "khull/rng.hpp"
#include "khull/stats.hpp"

#include <doctest.h>

#include <stdexcept>

using namespace khull;

namespace {

std::vector<double> exp_draws(int n, double rate, std::uint64_t seed) {
    Rng rng = make_rng(seed);
    std::exponential_distribution<double> e(rate);
    std::vector<double> v(static_cast<std::size_t>(n));
    for (double& x : v) x = e(rng);
    return v;
}

}  // namespace

TEST_CASE("kolmogorov distribution") {
    CHECK(stats::kolmogorov_q(0.0) == 1.0);
    CHECK(stats::kolmogorov_q(1.36) == doctest::Approx(0.0494).epsilon(0.01));
    CHECK(stats::kolmogorov_q(1.63) == doctest::Approx(0.0098).epsilon(0.02));
    CHECK(stats::kolmogorov_q(5.0) < 1e-15);
}

TEST_CASE("one-sample KS") {
    CHECK_THROWS_AS(stats::ks_one_sample({}, stats::exponential_cdf(1.0)), std::invalid_argument);

    // D for a single point at the median is 1/2.
    CHECK(stats::ks_one_sample({std::log(2.0)}, stats::exponential_cdf(1.0)).distance == doctest::Approx(0.5));

    // Under the null the p-values are roughly uniform.
    int small = 0;
    std::vector<double> ps;
    for (int r = 0; r < 400; ++r) {
        const auto res = stats::ks_one_sample(exp_draws(500, 1.0, 100 + r), stats::exponential_cdf(1.0));
        ps.push_back(res.p_value);
        small += res.p_value < 0.1;
    }
    CHECK(small > 20);
    CHECK(small < 65);
    CHECK(stats::mean(ps) == doctest::Approx(0.5).epsilon(0.12));

    const auto shifted = stats::ks_one_sample(exp_draws(2000, 1.0, 5), stats::exponential_cdf(2.0));
    CHECK(shifted.p_value < 1e-6);
    CHECK(shifted.distance > 0.15);
}

TEST_CASE("two-sample KS") {
    CHECK_THROWS_AS(stats::ks_two_sample({}, {1.0}), std::invalid_argument);
    CHECK(stats::ks_two_sample({1, 2, 3}, {1, 2, 3}).distance == 0.0);
    CHECK(stats::ks_two_sample({1, 2}, {3, 4}).distance == 1.0);
    CHECK(stats::ks_two_sample(exp_draws(3000, 1.0, 1), exp_draws(3000, 1.0, 2)).distance < 0.05);
    CHECK(stats::ks_two_sample(exp_draws(3000, 1.0, 1), exp_draws(3000, 0.5, 2)).p_value < 1e-6);
}

TEST_CASE("ranks and correlations") {
    const std::vector<double> r = stats::ranks({3.0, 1.0, 3.0, 2.0});
    CHECK(r == std::vector<double>{3.5, 1.0, 3.5, 2.0});
    CHECK(stats::pearson({1, 2, 3}, {2, 4, 6}) == doctest::Approx(1.0));
    CHECK(stats::spearman({1, 2, 3, 4}, {1, 8, 27, 64}) == doctest::Approx(1.0));
    CHECK(stats::spearman({1, 2, 3, 4}, {4, 3, 2, 1}) == doctest::Approx(-1.0));
    CHECK(std::abs(stats::spearman(exp_draws(10000, 1.0, 8), exp_draws(10000, 1.0, 9))) < 0.03);
}

TEST_CASE("weighted line fit") {
    const stats::LineFit f = stats::weighted_line_fit({0, 1, 2, 3}, {1, -1, -3, -5}, {1, 2, 3, 4});
    CHECK(f.slope == doctest::Approx(-2.0));
    CHECK(f.intercept == doctest::Approx(1.0));
    // A zero-weight outlier is ignored.
    const stats::LineFit g = stats::weighted_line_fit({0, 1, 2, 3}, {0, 1, 2, 100}, {1, 1, 1, 0});
    CHECK(g.slope == doctest::Approx(1.0));
}
