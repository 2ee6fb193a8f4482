#include "rpclust/tsc.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rpclust/errors.hpp"

namespace rpclust {

namespace {

Eigen::VectorXd column_norms(const Eigen::MatrixXd& x) {
  Eigen::VectorXd n = x.colwise().norm().transpose();
  for (Eigen::Index j = 0; j < n.size(); ++j)
    if (n(j) == 0.0) throw InputError("column " + std::to_string(j) + " has zero norm");
  return n;
}

}  // namespace

std::vector<std::vector<int>> tsc_neighbors(const DataSet& data, int q, bool normalize_selection) {
  const Eigen::MatrixXd& x = data.points;
  const int n = static_cast<int>(x.cols());
  if (q < 1 || q > n - 1)
    throw InputError("q = " + std::to_string(q) + " must lie in [1, N-1] with N = " + std::to_string(n));
  Eigen::MatrixXd score = (x.transpose() * x).cwiseAbs();
  if (normalize_selection) {
    const Eigen::VectorXd norms = column_norms(x);
    score = score.array() / (norms * norms.transpose()).array();
  }

  std::vector<std::vector<int>> out(n);
  std::vector<int> idx(n - 1);
  for (int j = 0; j < n; ++j) {
    std::iota(idx.begin(), idx.begin() + j, 0);
    std::iota(idx.begin() + j, idx.end(), j + 1);
    auto before = [&](int a, int b) {
      const double sa = score(a, j), sb = score(b, j);
      return sa > sb || (sa == sb && a < b);
    };
    std::partial_sort(idx.begin(), idx.begin() + q, idx.end(), before);
    out[j].assign(idx.begin(), idx.begin() + q);
  }
  return out;
}

Adjacency tsc_adjacency(const DataSet& data, const TscConfig& cfg) {
  const Eigen::MatrixXd& x = data.points;
  const Eigen::VectorXd norms = column_norms(x);
  const auto nbrs = tsc_neighbors(data, cfg.q, cfg.normalize_selection);
  const int n = static_cast<int>(x.cols());
  Eigen::MatrixXd z = Eigen::MatrixXd::Zero(n, n);
  for (int j = 0; j < n; ++j)
    for (int i : nbrs[j]) {
      const double c = std::clamp(std::abs(x.col(j).dot(x.col(i))) / (norms(j) * norms(i)), 0.0, 1.0);
      z(i, j) = std::exp(-2.0 * std::acos(c));
    }
  return Adjacency::from_coefficients(z);
}

}  // namespace rpclust
