#include "khull/lp.hpp"

#include <stdexcept>

namespace khull::lp {
namespace {

constexpr double kPivotTol = 1e-11;
constexpr int kMaxIterations = 200000;

// Canonical-form tableau: rows 0..m-1 are constraints, row m is the
// objective (reduced costs, maximization), last column is the RHS.
class Tableau {
public:
    Tableau(Mat table, std::vector<int> basis)
        : t_(std::move(table)), basis_(std::move(basis)) {}

    int rows() const { return static_cast<int>(t_.rows()) - 1; }
    int cols() const { return static_cast<int>(t_.cols()) - 1; }

    void set_objective(const Vec& c) {
        const int m = rows();
        t_.row(m).setZero();
        t_.row(m).head(cols()) = -c.transpose();
        for (int i = 0; i < m; ++i) {
            const double r = t_(m, basis_[i]);
            if (r != 0.0) t_.row(m) -= r * t_.row(i);
        }
    }

    // Returns false when the objective is unbounded.
    bool optimize(const std::vector<bool>& allowed) {
        const int m = rows();
        for (int iter = 0; iter < kMaxIterations; ++iter) {
            int enter = -1;
            for (int j = 0; j < cols(); ++j) {
                if (allowed[j] && t_(m, j) < -kPivotTol) {
                    enter = j;
                    break;
                }
            }
            if (enter < 0) return true;
            int leave = -1;
            double best = 0.0;
            for (int i = 0; i < m; ++i) {
                const double a = t_(i, enter);
                if (a <= kPivotTol) continue;
                const double ratio = t_(i, cols()) / a;
                if (leave < 0 || ratio < best - 1e-14 ||
                    (ratio <= best + 1e-14 && basis_[i] < basis_[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave < 0) return false;
            pivot(leave, enter);
        }
        throw std::runtime_error("lp: iteration limit reached");
    }

    void pivot(int row, int col) {
        t_.row(row) /= t_(row, col);
        for (int i = 0; i <= rows(); ++i) {
            if (i == row) continue;
            const double f = t_(i, col);
            if (f != 0.0) t_.row(i) -= f * t_.row(row);
        }
        basis_[row] = col;
    }

    double value() const { return t_(rows(), cols()); }
    double rhs(int i) const { return t_(i, cols()); }
    double at(int i, int j) const { return t_(i, j); }
    int basic(int i) const { return basis_[i]; }

private:
    Mat t_;
    std::vector<int> basis_;
};

}  // namespace

Result maximize(const Vec& c, const Mat& A, const Vec& b) {
    const int m = static_cast<int>(A.rows());
    const int n = static_cast<int>(A.cols());
    if (c.size() != n || b.size() != m) throw std::invalid_argument("lp: dimension mismatch");

    int n_art = 0;
    for (int i = 0; i < m; ++i)
        if (b(i) < 0.0) ++n_art;

    // Columns: x+ (n), x- (n), slacks (m), artificials (n_art).
    const int n_cols = 2 * n + m + n_art;
    Mat t = Mat::Zero(m + 1, n_cols + 1);
    std::vector<int> basis(m);
    int art = 2 * n + m;
    for (int i = 0; i < m; ++i) {
        const double sign = b(i) < 0.0 ? -1.0 : 1.0;
        t.row(i).segment(0, n) = sign * A.row(i);
        t.row(i).segment(n, n) = -sign * A.row(i);
        t(i, 2 * n + i) = sign;
        t(i, n_cols) = sign * b(i);
        if (sign < 0.0) {
            t(i, art) = 1.0;
            basis[i] = art++;
        } else {
            basis[i] = 2 * n + i;
        }
    }

    Tableau tab(std::move(t), std::move(basis));
    std::vector<bool> allowed(n_cols, true);

    if (n_art > 0) {
        Vec phase1 = Vec::Zero(n_cols);
        phase1.tail(n_art).setConstant(-1.0);
        tab.set_objective(phase1);
        tab.optimize(allowed);
        if (tab.value() < -1e-9) return Result{Status::Infeasible, Vec::Zero(n), 0.0};
        for (int i = 0; i < m; ++i) {
            if (tab.basic(i) < 2 * n + m) continue;
            for (int j = 0; j < 2 * n + m; ++j) {
                if (std::abs(tab.at(i, j)) > 1e-9) {
                    tab.pivot(i, j);
                    break;
                }
            }
        }
        for (int j = 2 * n + m; j < n_cols; ++j) allowed[j] = false;
    }

    Vec cost = Vec::Zero(n_cols);
    cost.head(n) = c;
    cost.segment(n, n) = -c;
    tab.set_objective(cost);
    if (!tab.optimize(allowed)) return Result{Status::Unbounded, Vec::Zero(n), kInfinity};

    Vec y = Vec::Zero(n_cols);
    for (int i = 0; i < m; ++i) y(tab.basic(i)) = tab.rhs(i);
    Vec x = y.head(n) - y.segment(n, n);
    return Result{Status::Optimal, x, c.dot(x)};
}

bool feasible(const Mat& A, const Vec& b) {
    return maximize(Vec::Zero(A.cols()), A, b).status != Status::Infeasible;
}

bool in_conic_hull(const Mat& generators, const Vec& p, double tol) {
    const Eigen::Index d = generators.rows();
    const Eigen::Index k = generators.cols();
    if (k == 0) return p.norm() <= tol;
    Mat A(2 * d + k, k);
    Vec b(2 * d + k);
    A.topRows(d) = generators;
    b.head(d) = p.array() + tol;
    A.middleRows(d, d) = -generators;
    b.segment(d, d) = -p.array() + tol;
    A.bottomRows(k) = -Mat::Identity(k, k);
    b.tail(k).setZero();
    return feasible(A, b);
}

bool in_hull_with_origin(const Mat& generators, const Vec& p, double tol) {
    const Eigen::Index d = generators.rows();
    const Eigen::Index k = generators.cols();
    if (k == 0) return p.norm() <= tol;
    Mat A(2 * d + k + 1, k);
    Vec b(2 * d + k + 1);
    A.topRows(d) = generators;
    b.head(d) = p.array() + tol;
    A.middleRows(d, d) = -generators;
    b.segment(d, d) = -p.array() + tol;
    A.middleRows(2 * d, k) = -Mat::Identity(k, k);
    b.segment(2 * d, k).setZero();
    A.row(2 * d + k).setOnes();
    b(2 * d + k) = 1.0;
    return feasible(A, b);
}

}  // namespace khull::lp
