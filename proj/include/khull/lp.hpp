#pragma once

#include "khull/common.hpp"

namespace khull::lp {

enum class Status { Optimal, Infeasible, Unbounded };

struct Result {
    Status status = Status::Infeasible;
    Vec x;
    double value = 0.0;
};

/// Maximizes c^T x subject to A x <= b with x free.
///
/// Dense two-phase tableau simplex with Bland's anti-cycling rule. Intended
/// for the small problems that appear here (at most a dozen variables and a
/// few hundred constraints).
Result maximize(const Vec& c, const Mat& A, const Vec& b);

inline Result minimize(const Vec& c, const Mat& A, const Vec& b) {
    Result r = maximize(-c, A, b);
    r.value = -r.value;
    return r;
}

/// True when {x : A x <= b} is nonempty.
bool feasible(const Mat& A, const Vec& b);

/// Membership of p in the closed conic hull of the columns of G.
bool in_conic_hull(const Mat& generators, const Vec& p, double tol = kGeoTol);

/// Membership of p in conv({0} u columns of G).
bool in_hull_with_origin(const Mat& generators, const Vec& p, double tol = kGeoTol);

}  // namespace khull::lp
