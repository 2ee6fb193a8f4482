#include "rpclust/adjacency.hpp"

#include "rpclust/dataset_io.hpp"
#include "rpclust/errors.hpp"

namespace rpclust {

Adjacency::Adjacency(Eigen::MatrixXd weights) : w_(std::move(weights)) {
  if (w_.rows() != w_.cols()) throw InputError("adjacency must be square");
  for (Eigen::Index i = 0; i < w_.rows(); ++i) {
    if (w_(i, i) != 0.0) throw InputError("adjacency diagonal must be zero (row " + std::to_string(i) + ")");
    for (Eigen::Index j = 0; j < w_.cols(); ++j) {
      if (!(w_(i, j) >= 0.0)) throw InputError("adjacency entries must be nonnegative");
      if (w_(i, j) != w_(j, i)) throw InputError("adjacency must be symmetric");
    }
  }
}

Adjacency Adjacency::from_coefficients(const Eigen::MatrixXd& z) {
  if (z.rows() != z.cols()) throw InputError("coefficient matrix must be square");
  Eigen::MatrixXd w = z + z.transpose();
  w.diagonal().setZero();
  return Adjacency(std::move(w));
}

void Adjacency::write_csv(const std::string& path) const { write_matrix_csv(path, w_); }

}  // namespace rpclust
