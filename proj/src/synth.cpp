#include "rpclust/synth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "rpclust/errors.hpp"
#include "rpclust/seed.hpp"

namespace rpclust {

namespace {

Eigen::MatrixXd gaussian_matrix(int rows, int cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::MatrixXd g(rows, cols);
  // Column-major fill keeps the stream order independent of Eigen internals.
  for (int j = 0; j < cols; ++j)
    for (int i = 0; i < rows; ++i) g(i, j) = normal(rng);
  return g;
}

// Q factor with the sign convention diag(R) > 0, which makes Q Haar distributed.
Eigen::MatrixXd haar_frame(int m, int d, Rng& rng) {
  Eigen::MatrixXd g = gaussian_matrix(m, d, rng);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(m, d);
  const Eigen::MatrixXd& r = qr.matrixQR();
  for (int j = 0; j < d; ++j)
    if (r(j, j) < 0) q.col(j) = -q.col(j);
  return q;
}

}  // namespace

SubspaceBasis::SubspaceBasis(Eigen::MatrixXd u) : u_(std::move(u)) {
  if (u_.cols() < 1 || u_.rows() < 1) throw DimensionError("subspace basis must be non-empty");
  if (u_.cols() > u_.rows())
    throw DimensionError("subspace dim " + std::to_string(u_.cols()) + " exceeds ambient dim " +
                         std::to_string(u_.rows()));
  const Eigen::MatrixXd gram = u_.transpose() * u_;
  const double dev = (gram - Eigen::MatrixXd::Identity(u_.cols(), u_.cols())).cwiseAbs().maxCoeff();
  if (dev > 1e-10) throw InputError("basis columns are not orthonormal (deviation " + std::to_string(dev) + ")");
}

void DataSet::validate() const {
  if (!labels) return;
  if (static_cast<int>(labels->size()) != size())
    throw InputError("labels length " + std::to_string(labels->size()) + " != number of points " +
                     std::to_string(size()));
  for (int l : *labels)
    if (l < 0) throw InputError("negative label");
}

int UnionModel::ambient_dim() const { return bases.empty() ? 0 : bases.front().ambient_dim(); }

int UnionModel::total_points() const { return std::accumulate(counts.begin(), counts.end(), 0); }

int UnionModel::max_dim() const {
  int d = 0;
  for (const auto& b : bases) d = std::max(d, b.dim());
  return d;
}

double UnionModel::rho_min() const {
  double rho = std::numeric_limits<double>::infinity();
  for (std::size_t l = 0; l < bases.size(); ++l)
    rho = std::min(rho, (counts[l] - 1.0) / bases[l].dim());
  return rho;
}

void UnionModel::validate() const {
  if (bases.empty()) throw InputError("union model needs at least one subspace");
  if (counts.size() != bases.size()) throw InputError("need one point count per subspace");
  for (const auto& b : bases)
    if (b.ambient_dim() != ambient_dim()) throw DimensionError("subspaces differ in ambient dimension");
  for (int n : counts)
    if (n < 1) throw InputError("point counts must be positive");
}

SubspaceBasis random_orthonormal_basis(int m, int d, std::uint64_t seed) {
  if (m < 1 || d < 1) throw DimensionError("dimensions must be positive");
  if (d > m) throw DimensionError("d = " + std::to_string(d) + " exceeds m = " + std::to_string(m));
  Rng rng(seed);
  return SubspaceBasis(haar_frame(m, d, rng));
}

std::pair<SubspaceBasis, SubspaceBasis> intersecting_pair(int m, int d, int t, std::uint64_t seed) {
  auto family = intersecting_family(m, {d, d}, t, seed);
  return {std::move(family[0]), std::move(family[1])};
}

std::vector<SubspaceBasis> intersecting_family(int m, const std::vector<int>& dims, int t,
                                               std::uint64_t seed) {
  if (dims.empty()) throw InputError("need at least one subspace");
  const int d_min = *std::min_element(dims.begin(), dims.end());
  if (d_min < 1) throw DimensionError("subspace dimensions must be positive");
  if (t < 0 || t > d_min) throw DimensionError("intersection dim t must lie in [0, min d]");
  int needed = t;
  for (int d : dims) needed += d - t;
  if (needed > m)
    throw DimensionError("intersecting construction needs " + std::to_string(needed) +
                         " ambient dimensions, m = " + std::to_string(m));
  Rng rng(seed);
  const Eigen::MatrixXd q = haar_frame(m, needed, rng);
  std::vector<SubspaceBasis> out;
  int next = t;
  for (int d : dims) {
    Eigen::MatrixXd u(m, d);
    u.leftCols(t) = q.leftCols(t);
    u.rightCols(d - t) = q.middleCols(next, d - t);
    next += d - t;
    out.emplace_back(std::move(u));
  }
  return out;
}

UnionModel make_union_model(int m, const std::vector<int>& dims, const std::vector<int>& counts,
                            int t, std::uint64_t seed) {
  if (dims.size() != counts.size()) throw InputError("dims and counts must have equal length");
  UnionModel model;
  model.seed = seed;
  model.counts = counts;
  if (t < 0) {
    for (std::size_t l = 0; l < dims.size(); ++l)
      model.bases.push_back(random_orthonormal_basis(m, dims[l], derive_seed(seed, {0xB0, l})));
  } else {
    model.bases = intersecting_family(m, dims, t, derive_seed(seed, {0xB1}));
  }
  model.validate();
  return model;
}

DataSet generate(const UnionModel& model) {
  model.validate();
  const int m = model.ambient_dim();
  DataSet out;
  out.points.resize(m, model.total_points());
  out.labels.emplace();
  out.labels->reserve(model.total_points());
  int col = 0;
  for (int l = 0; l < model.num_subspaces(); ++l) {
    const auto& u = model.bases[l].matrix();
    Rng rng(derive_seed(model.seed, {static_cast<std::uint64_t>(l)}));
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::VectorXd a(u.cols());
    for (int j = 0; j < model.counts[l]; ++j) {
      double norm = 0.0;
      while (norm == 0.0) {
        for (int k = 0; k < a.size(); ++k) a(k) = normal(rng);
        norm = a.norm();
      }
      out.points.col(col++) = u * (a / norm);
      out.labels->push_back(l);
    }
  }
  return out;
}

Eigen::VectorXd principal_angles(const SubspaceBasis& a, const SubspaceBasis& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw DimensionError("principal angles: ambient dimension mismatch");
  const Eigen::MatrixXd c = a.matrix().transpose() * b.matrix();
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(c);
  // Singular values come out descending.
  return svd.singularValues().cwiseMax(0.0).cwiseMin(1.0);
}

double affinity(const SubspaceBasis& a, const SubspaceBasis& b) {
  if (a.ambient_dim() != b.ambient_dim()) throw DimensionError("affinity: ambient dimension mismatch");
  const double f = (a.matrix().transpose() * b.matrix()).norm();
  return std::clamp(f / std::sqrt(static_cast<double>(std::min(a.dim(), b.dim()))), 0.0, 1.0);
}

SubspaceBasis orthonormalize(const Eigen::MatrixXd& v) {
  if (v.cols() > v.rows()) throw RankError("more basis vectors than ambient dimensions");
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(v);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(v.rows(), v.cols());
  return SubspaceBasis(std::move(q));
}

}  // namespace rpclust
