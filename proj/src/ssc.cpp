#include "rpclust/ssc.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>

#include "rpclust/errors.hpp"
#include "rpclust/simplex.hpp"

namespace rpclust {

namespace {

Eigen::MatrixXd drop_column(const Eigen::MatrixXd& x, int j) {
  const Eigen::Index n = x.cols();
  Eigen::MatrixXd d(x.rows(), n - 1);
  d.leftCols(j) = x.leftCols(j);
  d.rightCols(n - 1 - j) = x.rightCols(n - 1 - j);
  return d;
}

Eigen::VectorXd reinsert_zero(const Eigen::VectorXd& w, int j) {
  Eigen::VectorXd z(w.size() + 1);
  z.head(j) = w.head(j);
  z(j) = 0.0;
  z.tail(w.size() - j) = w.tail(w.size() - j);
  return z;
}

// Orthonormal basis of the column span of x. The equality constraint
// x_j = D z only carries rank(x) independent rows, so the LP is posed in
// these coordinates to avoid redundant constraints.
Eigen::MatrixXd range_basis(const Eigen::MatrixXd& x) {
  Eigen::BDCSVD<Eigen::MatrixXd> svd(x, Eigen::ComputeThinU);
  const auto& s = svd.singularValues();
  int r = 0;
  const double cut = s.size() ? 1e-10 * s(0) : 0.0;
  while (r < s.size() && s(r) > cut) ++r;
  return svd.matrixU().leftCols(r);
}

void check_columns(const Eigen::MatrixXd& x) {
  if (x.cols() < 2) throw InputError("SSC needs at least two points");
  for (Eigen::Index j = 0; j < x.cols(); ++j)
    if (x.col(j).squaredNorm() == 0.0) throw InputError("column " + std::to_string(j) + " is all zero");
}

ColumnSolution exact_column(const Eigen::MatrixXd& x, const Eigen::MatrixXd& range, int j) {
  const Eigen::MatrixXd d = drop_column(x, j);
  const int n = static_cast<int>(d.cols());
  const Eigen::MatrixXd r = range.transpose() * d;
  const Eigen::VectorXd b = range.transpose() * x.col(j);

  Eigen::MatrixXd a(r.rows(), 2 * n);
  a.leftCols(n) = r;
  a.rightCols(n) = -r;
  const LpSolution lp = solve_standard_lp(a, b, Eigen::VectorXd::Ones(2 * n));

  ColumnSolution sol;
  sol.diag.column = j;
  sol.diag.iterations = lp.iterations;
  sol.z = Eigen::VectorXd::Zero(x.cols());
  sol.dual = Eigen::VectorXd::Zero(x.rows());
  if (lp.status != LpStatus::optimal) {
    sol.diag.converged = lp.status != LpStatus::iteration_limit;
    sol.diag.feasible = lp.status != LpStatus::infeasible;
    sol.diag.message = lp.status == LpStatus::infeasible ? "x_j is not in the span of the other points"
                                                         : "LP " + to_string(lp.status);
    return sol;
  }
  const Eigen::VectorXd w = lp.x.head(n) - lp.x.tail(n);
  sol.z = reinsert_zero(w, j);
  sol.dual = range * lp.dual;
  sol.diag.converged = true;
  sol.diag.objective = w.lpNorm<1>();
  sol.diag.primal_residual = (x.col(j) - d * w).norm();
  sol.diag.dual_residual = std::max(0.0, (d.transpose() * sol.dual).lpNorm<Eigen::Infinity>() - 1.0);
  return sol;
}

// Applies (gamma D^T D + rho I)^{-1}; uses the Woodbury form when D is wide.
class RidgeSolver {
 public:
  RidgeSolver(const Eigen::MatrixXd& d, double gamma, double rho) : d_(d), rho_(rho) {
    if (d.rows() < d.cols()) {
      wide_ = true;
      Eigen::MatrixXd k = d * d.transpose();
      k.diagonal().array() += rho / gamma;
      llt_.compute(k);
    } else {
      Eigen::MatrixXd k = gamma * (d.transpose() * d);
      k.diagonal().array() += rho;
      llt_.compute(k);
    }
    if (llt_.info() != Eigen::Success) throw NumericError("ADMM: Cholesky factorization failed");
  }

  Eigen::VectorXd solve(const Eigen::VectorXd& v) const {
    if (!wide_) return llt_.solve(v);
    return (v - d_.transpose() * llt_.solve(d_ * v)) / rho_;
  }

 private:
  const Eigen::MatrixXd& d_;
  double rho_;
  bool wide_ = false;
  Eigen::LLT<Eigen::MatrixXd> llt_;
};

Eigen::VectorXd soft_threshold(const Eigen::VectorXd& v, double k) {
  return v.unaryExpr([k](double e) { return e > k ? e - k : (e < -k ? e + k : 0.0); });
}

}  // namespace

std::string to_string(SscMode mode) { return mode == SscMode::exact_l1 ? "exact_l1" : "lasso_admm"; }

SscMode parse_ssc_mode(const std::string& name) {
  if (name == "exact_l1" || name == "exact" || name == "l1") return SscMode::exact_l1;
  if (name == "lasso_admm" || name == "lasso" || name == "admm") return SscMode::lasso_admm;
  throw InputError("unknown SSC mode '" + name + "'");
}

void SscConfig::validate() const {
  if (!(alpha > 0) || !(admm_rho > 0)) throw InputError("alpha and admm_rho must be positive");
  if (!(tol_abs > 0) || !(tol_rel > 0)) throw InputError("tolerances must be positive");
  if (max_iter < 1) throw InputError("max_iter must be >= 1");
}

bool SscResult::all_converged() const {
  for (const auto& d : diagnostics)
    if (!d.converged || !d.feasible) return false;
  return true;
}

ColumnSolution solve_exact_l1_column(const Eigen::MatrixXd& x, int j, const SscConfig&) {
  check_columns(x);
  if (j < 0 || j >= x.cols()) throw InputError("column index out of range");
  return exact_column(x, range_basis(x), j);
}

double lasso_weight(const Eigen::MatrixXd& x, int j, double alpha) {
  Eigen::VectorXd g = (x.transpose() * x.col(j)).cwiseAbs();
  g(j) = 0.0;
  const double mu = g.maxCoeff();
  return mu > 0 ? alpha / mu : std::numeric_limits<double>::infinity();
}

double lasso_objective(const Eigen::MatrixXd& x, int j, const Eigen::VectorXd& z, double gamma) {
  return z.lpNorm<1>() + 0.5 * gamma * (x.col(j) - x * z).squaredNorm();
}

double lasso_kkt_residual(const Eigen::MatrixXd& x, int j, const Eigen::VectorXd& z, double gamma) {
  const Eigen::VectorXd g = gamma * (x.transpose() * (x.col(j) - x * z));
  double worst = 0.0;
  for (Eigen::Index i = 0; i < x.cols(); ++i) {
    if (i == j) continue;
    const double v = z(i) > 0 ? std::abs(g(i) - 1.0) : z(i) < 0 ? std::abs(g(i) + 1.0)
                                                                 : std::max(0.0, std::abs(g(i)) - 1.0);
    worst = std::max(worst, v);
  }
  return worst;
}

ColumnSolution solve_lasso_column(const Eigen::MatrixXd& x, int j, const SscConfig& cfg) {
  cfg.validate();
  check_columns(x);
  if (j < 0 || j >= x.cols()) throw InputError("column index out of range");

  ColumnSolution sol;
  sol.diag.column = j;
  sol.z = Eigen::VectorXd::Zero(x.cols());
  sol.dual = Eigen::VectorXd::Zero(x.rows());
  const double gamma = lasso_weight(x, j, cfg.alpha);
  if (!std::isfinite(gamma)) {
    // x_j is orthogonal to every other point: z = 0 satisfies the optimality condition.
    sol.diag.converged = true;
    sol.diag.message = "orthogonal to all other points";
    return sol;
  }

  const Eigen::MatrixXd d = drop_column(x, j);
  const int n = static_cast<int>(d.cols());
  const double rho = cfg.admm_rho;
  const RidgeSolver ridge(d, gamma, rho);
  const Eigen::VectorXd dtx = gamma * (d.transpose() * x.col(j));

  Eigen::VectorXd a = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd c = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd u = Eigen::VectorXd::Zero(n);
  const double sqrt_n = std::sqrt(static_cast<double>(n));

  int it = 0;
  for (; it < cfg.max_iter; ++it) {
    a = ridge.solve(dtx + rho * (c - u));
    const Eigen::VectorXd c_prev = c;
    c = soft_threshold(a + u, 1.0 / rho);
    u += a - c;

    const double r = (a - c).norm();
    const double s = rho * (c - c_prev).norm();
    sol.diag.primal_residual = r;
    sol.diag.dual_residual = s;
    if (cfg.record_trace)
      sol.diag.objective_trace.push_back(c.lpNorm<1>() + 0.5 * gamma * (x.col(j) - d * c).squaredNorm());
    const double eps_pri = sqrt_n * cfg.tol_abs + cfg.tol_rel * std::max(a.norm(), c.norm());
    const double eps_dual = sqrt_n * cfg.tol_abs + cfg.tol_rel * rho * u.norm();
    if (r <= eps_pri && s <= eps_dual) {
      sol.diag.converged = true;
      ++it;
      break;
    }
  }
  sol.diag.iterations = it;
  if (!sol.diag.converged) sol.diag.message = "ADMM reached max_iter";
  sol.z = reinsert_zero(c, j);
  sol.diag.objective = lasso_objective(x, j, sol.z, gamma);
  return sol;
}

SscResult ssc_coefficients(const DataSet& data, const SscConfig& cfg) {
  cfg.validate();
  const Eigen::MatrixXd& x = data.points;
  check_columns(x);
  const int n = static_cast<int>(x.cols());
  SscResult res;
  res.coefficients = Eigen::MatrixXd::Zero(n, n);
  res.diagnostics.reserve(n);

  Eigen::MatrixXd range;
  if (cfg.mode == SscMode::exact_l1) range = range_basis(x);
  for (int j = 0; j < n; ++j) {
    ColumnSolution col = cfg.mode == SscMode::exact_l1 ? exact_column(x, range, j) : solve_lasso_column(x, j, cfg);
    res.coefficients.col(j) = col.z;
    res.diagnostics.push_back(std::move(col.diag));
  }
  return res;
}

Adjacency ssc_adjacency(const SscResult& result) {
  return Adjacency::from_coefficients(result.coefficients.cwiseAbs());
}

Adjacency ssc_adjacency(const DataSet& data, const SscConfig& cfg) {
  return ssc_adjacency(ssc_coefficients(data, cfg));
}

void write_diagnostics_csv(const std::string& path, const std::vector<ColumnDiagnostics>& diags) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");
  os << "column,converged,feasible,iterations,primal_residual,dual_residual,objective,message\n";
  os << std::setprecision(10);
  for (const auto& d : diags)
    os << d.column << ',' << d.converged << ',' << d.feasible << ',' << d.iterations << ',' << d.primal_residual
       << ',' << d.dual_residual << ',' << d.objective << ',' << d.message << '\n';
}

}  // namespace rpclust
