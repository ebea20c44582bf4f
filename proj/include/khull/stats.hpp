#pragma once

#include <cmath>
#include <functional>
#include <vector>

namespace khull::stats {

struct KsResult {
    double distance = 0.0;
    double p_value = 1.0;
};

/// Kolmogorov survival function Q(lambda) = 2 sum (-1)^{k-1} exp(-2 k^2 lambda^2).
double kolmogorov_q(double lambda);

/// One-sample KS against a continuous cdf; asymptotic p-value with the
/// Stephens small-sample correction. Throws on empty input.
KsResult ks_one_sample(std::vector<double> samples, const std::function<double(double)>& cdf);

KsResult ks_two_sample(std::vector<double> a, std::vector<double> b);

/// Ranks 1..n with ties averaged.
std::vector<double> ranks(const std::vector<double>& v);

double pearson(const std::vector<double>& a, const std::vector<double>& b);
double spearman(const std::vector<double>& a, const std::vector<double>& b);

inline std::function<double(double)> exponential_cdf(double rate) {
    return [rate](double x) { return x <= 0.0 ? 0.0 : -std::expm1(-rate * x); };
}

double mean(const std::vector<double>& v);

/// Weighted least-squares slope and intercept of y on x.
struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
};
LineFit weighted_line_fit(const std::vector<double>& x, const std::vector<double>& y, const std::vector<double>& w);

}  // namespace khull::stats
