#pragma once

#include <Eigen/Dense>
#include <string>

namespace rpclust {

/// Symmetric nonnegative N x N weight matrix with zero diagonal.
class Adjacency {
 public:
  /// Validates symmetry (exact), nonnegativity and the zero diagonal.
  explicit Adjacency(Eigen::MatrixXd weights);

  /// A = Z + Z^T, symmetric by construction. Z must be square and nonnegative.
  static Adjacency from_coefficients(const Eigen::MatrixXd& z);

  const Eigen::MatrixXd& weights() const { return w_; }
  int size() const { return static_cast<int>(w_.rows()); }
  double operator()(int i, int j) const { return w_(i, j); }

  void write_csv(const std::string& path) const;

 private:
  Eigen::MatrixXd w_;
};

}  // namespace rpclust
