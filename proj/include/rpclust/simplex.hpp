#pragma once

#include <Eigen/Dense>
#include <string>

namespace rpclust {

enum class LpStatus { optimal, infeasible, unbounded, iteration_limit };

std::string to_string(LpStatus s);

struct LpSolution {
  LpStatus status = LpStatus::iteration_limit;
  Eigen::VectorXd x;     // primal, length n
  Eigen::VectorXd dual;  // y with A^T y <= c at optimality, length rows
  double objective = 0.0;
  int iterations = 0;
};

/// Dense two-phase tableau simplex for
///   minimize c^T x  subject to  A x = b,  x >= 0.
/// Dantzig pricing, switching to Bland's rule after a run of degenerate pivots.
/// `tol` is relative to the largest |A| entry.
LpSolution solve_standard_lp(const Eigen::MatrixXd& a, const Eigen::VectorXd& b, const Eigen::VectorXd& c,
                             int max_iter = 50000, double tol = 1e-10);

}  // namespace rpclust
