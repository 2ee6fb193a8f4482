#include "rpclust/simplex.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "rpclust/errors.hpp"

namespace rpclust {

std::string to_string(LpStatus s) {
  switch (s) {
    case LpStatus::optimal: return "optimal";
    case LpStatus::infeasible: return "infeasible";
    case LpStatus::unbounded: return "unbounded";
    case LpStatus::iteration_limit: return "iteration_limit";
  }
  return "unknown";
}

namespace {

class Tableau {
 public:
  // Rows 0..r-1 are constraints, row r is the reduced-cost row. Columns
  // 0..n-1 structural, n..n+r-1 artificial, last column is the RHS.
  Tableau(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, double eps)
      : r_(static_cast<int>(a.rows())), n_(static_cast<int>(a.cols())), eps_(eps),
        t_(Eigen::MatrixXd::Zero(r_ + 1, n_ + r_ + 1)), basis_(r_), flip_(r_) {
    for (int i = 0; i < r_; ++i) {
      flip_[i] = b(i) < 0 ? -1.0 : 1.0;
      t_.row(i).head(n_) = flip_[i] * a.row(i);
      t_(i, n_ + i) = 1.0;
      t_(i, rhs()) = flip_[i] * b(i);
      basis_[i] = n_ + i;
    }
  }

  int rhs() const { return n_ + r_; }

  void set_costs(const Eigen::VectorXd& cost) {
    t_.row(r_).setZero();
    t_.row(r_).head(cost.size()) = cost.transpose();
    for (int i = 0; i < r_; ++i) {
      const double cb = basis_[i] < cost.size() ? cost(basis_[i]) : 0.0;
      if (cb != 0.0) t_.row(r_) -= cb * t_.row(i);
    }
  }

  void pivot(int row, int col) {
    t_.row(row) /= t_(row, col);
    for (int i = 0; i <= r_; ++i) {
      if (i == row) continue;
      const double f = t_(i, col);
      if (f != 0.0) t_.row(i) -= f * t_.row(row);
    }
    t_(row, col) = 1.0;
    basis_[row] = col;
  }

  // Returns optimal/unbounded/iteration_limit for the current cost row.
  LpStatus optimize(int entering_limit, int max_iter, int& iters) {
    bool bland = false;
    int stall = 0;
    double last_obj = -t_(r_, rhs());
    while (true) {
      if (iters >= max_iter) return LpStatus::iteration_limit;
      int col = -1;
      double best = -eps_;
      for (int j = 0; j < entering_limit; ++j) {
        const double rc = t_(r_, j);
        if (rc < best) {
          col = j;
          if (bland) break;
          best = rc;
        }
      }
      if (col < 0) return LpStatus::optimal;
      int row = -1;
      double ratio = std::numeric_limits<double>::infinity();
      for (int i = 0; i < r_; ++i) {
        const double aij = t_(i, col);
        if (aij <= eps_) continue;
        const double q = t_(i, rhs()) / aij;
        if (q < ratio - eps_ || (std::abs(q - ratio) <= eps_ && row >= 0 && basis_[i] < basis_[row])) {
          ratio = q;
          row = i;
        }
      }
      if (row < 0) return LpStatus::unbounded;
      pivot(row, col);
      ++iters;
      const double obj = -t_(r_, rhs());
      if (obj < last_obj - eps_) {
        stall = 0;
        last_obj = obj;
      } else if (++stall > 50) {
        bland = true;
      }
    }
  }

  // Pivots basic artificials out where a structural column allows it.
  void drive_out_artificials() {
    for (int i = 0; i < r_; ++i) {
      if (basis_[i] < n_) continue;
      int best = -1;
      double mag = eps_;
      for (int j = 0; j < n_; ++j)
        if (std::abs(t_(i, j)) > mag) {
          mag = std::abs(t_(i, j));
          best = j;
        }
      if (best >= 0) pivot(i, best);
    }
  }

  double objective() const { return -t_(r_, rhs()); }

  // Degenerate basics carry roundoff-level values; those are reported as 0.
  Eigen::VectorXd primal(double zero_tol) const {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(n_);
    for (int i = 0; i < r_; ++i)
      if (basis_[i] < n_ && t_(i, rhs()) > zero_tol) x(basis_[i]) = t_(i, rhs());
    return x;
  }

  // Reduced costs of the artificial columns are -y_flipped^T.
  Eigen::VectorXd dual() const {
    Eigen::VectorXd y(r_);
    for (int i = 0; i < r_; ++i) y(i) = -t_(r_, n_ + i) * flip_[i];
    return y;
  }

 private:
  int r_;
  int n_;
  double eps_;
  Eigen::MatrixXd t_;
  std::vector<int> basis_;
  std::vector<double> flip_;
};

}  // namespace

LpSolution solve_standard_lp(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, const Eigen::VectorXd& c,
                             int max_iter, double tol) {
  if (a.rows() != b.size() || a.cols() != c.size()) throw DimensionError("LP: inconsistent dimensions");
  const int r = static_cast<int>(a.rows());
  const int n = static_cast<int>(a.cols());
  const double amax = a.size() ? a.cwiseAbs().maxCoeff() : 1.0;
  const double eps = tol * std::max(1.0, amax);

  LpSolution sol;
  Tableau tab(a, b, eps);

  Eigen::VectorXd phase1 = Eigen::VectorXd::Zero(n + r);
  phase1.tail(r).setOnes();
  tab.set_costs(phase1);
  int iters = 0;
  const LpStatus s1 = tab.optimize(n + r, max_iter, iters);
  sol.iterations = iters;
  if (s1 == LpStatus::iteration_limit) {
    sol.status = s1;
    return sol;
  }
  const double bscale = std::max(1.0, b.cwiseAbs().maxCoeff());
  if (tab.objective() > 1e3 * eps * bscale) {
    sol.status = LpStatus::infeasible;
    sol.objective = tab.objective();
    return sol;
  }
  tab.drive_out_artificials();

  tab.set_costs(c);
  const LpStatus s2 = tab.optimize(n, max_iter, iters);
  sol.iterations = iters;
  sol.status = s2;
  sol.x = tab.primal(eps * bscale);
  sol.dual = tab.dual();
  sol.objective = c.dot(sol.x);
  return sol;
}

}  // namespace rpclust
