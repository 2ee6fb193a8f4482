#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "rpclust/adjacency.hpp"
#include "rpclust/synth.hpp"

namespace rpclust {

enum class SscMode { exact_l1, lasso_admm };

std::string to_string(SscMode mode);
SscMode parse_ssc_mode(const std::string& name);

/// Solver settings. In lasso_admm mode column j minimizes
///   ||z||_1 + (gamma_j / 2) ||x_j - X z||^2,  z_j = 0,
/// with gamma_j = alpha / mu_j and mu_j = max_{i != j} |<x_i, x_j>|.
struct SscConfig {
  SscMode mode = SscMode::exact_l1;
  double alpha = 20.0;
  double admm_rho = 20.0;
  int max_iter = 200;
  double tol_abs = 1e-6;
  double tol_rel = 1e-6;
  /// Keep the per-iteration Lasso objective in the column diagnostics.
  bool record_trace = false;

  void validate() const;
};

struct ColumnDiagnostics {
  int column = 0;
  bool converged = false;
  bool feasible = true;
  int iterations = 0;
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  double objective = 0.0;
  std::string message;
  std::vector<double> objective_trace;
};

/// Solution for a single column. `z` has length N with z_j = 0. In exact mode
/// `dual` is a vector nu in data space with X^T nu a subgradient certificate.
struct ColumnSolution {
  Eigen::VectorXd z;
  Eigen::VectorXd dual;
  ColumnDiagnostics diag;
};

struct SscResult {
  Eigen::MatrixXd coefficients;  // column j = z_j
  std::vector<ColumnDiagnostics> diagnostics;

  bool all_converged() const;
};

/// minimize ||z||_1 s.t. x_j = X z, z_j = 0 as a split-variable LP.
ColumnSolution solve_exact_l1_column(const Eigen::MatrixXd& x, int j, const SscConfig& cfg = {});

/// ADMM on the Lasso form described in SscConfig.
ColumnSolution solve_lasso_column(const Eigen::MatrixXd& x, int j, const SscConfig& cfg = {});

/// gamma_j = alpha / mu_j.
double lasso_weight(const Eigen::MatrixXd& x, int j, double alpha);

/// max violation of 0 in d||z||_1 - gamma_j D^T (x_j - D z) over i != j.
double lasso_kkt_residual(const Eigen::MatrixXd& x, int j, const Eigen::VectorXd& z, double gamma);

/// Lasso objective ||z||_1 + (gamma/2) ||x_j - X z||^2.
double lasso_objective(const Eigen::MatrixXd& x, int j, const Eigen::VectorXd& z, double gamma);

/// Solves every column; non-converged or infeasible columns are flagged, not thrown.
SscResult ssc_coefficients(const DataSet& data, const SscConfig& cfg = {});

/// A = |Z| + |Z|^T
Adjacency ssc_adjacency(const DataSet& data, const SscConfig& cfg = {});
Adjacency ssc_adjacency(const SscResult& result);

/// CSV: column,converged,feasible,iterations,primal_residual,dual_residual,objective,message
void write_diagnostics_csv(const std::string& path, const std::vector<ColumnDiagnostics>& diags);

}  // namespace rpclust
