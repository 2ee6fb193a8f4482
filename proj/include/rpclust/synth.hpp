#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <vector>

namespace rpclust {

/// Orthonormal basis U (m x d) of a d-dimensional linear subspace of R^m.
/// Construction checks U^T U = I to within 1e-10 per entry.
class SubspaceBasis {
 public:
  explicit SubspaceBasis(Eigen::MatrixXd u);

  const Eigen::MatrixXd& matrix() const { return u_; }
  int ambient_dim() const { return static_cast<int>(u_.rows()); }
  int dim() const { return static_cast<int>(u_.cols()); }

 private:
  Eigen::MatrixXd u_;
};

/// Point matrix with one point per column and optional 0-based labels.
struct DataSet {
  Eigen::MatrixXd points;
  std::optional<std::vector<int>> labels;

  int dim() const { return static_cast<int>(points.rows()); }
  int size() const { return static_cast<int>(points.cols()); }
  /// Throws InputError when labels are present with the wrong length or negative.
  void validate() const;
};

/// L subspaces with per-subspace point counts n_l. Points of block l get label l.
struct UnionModel {
  std::vector<SubspaceBasis> bases;
  std::vector<int> counts;
  std::uint64_t seed = 0;

  int num_subspaces() const { return static_cast<int>(bases.size()); }
  int ambient_dim() const;
  int total_points() const;
  int max_dim() const;
  /// min_l (n_l - 1) / d_l
  double rho_min() const;
  void validate() const;
};

/// Haar-distributed d-frame in R^m from the QR factorization of a Gaussian matrix.
SubspaceBasis random_orthonormal_basis(int m, int d, std::uint64_t seed);

/// Two d-dimensional subspaces sharing exactly t orthonormal directions, with the
/// remaining directions mutually orthogonal. aff = sqrt(t/d).
std::pair<SubspaceBasis, SubspaceBasis> intersecting_pair(int m, int d, int t, std::uint64_t seed);

/// L subspaces (dims[l]) that all contain one common t-dimensional subspace and are
/// otherwise mutually orthogonal. Pairwise aff = sqrt(t / min(d_k, d_l)).
std::vector<SubspaceBasis> intersecting_family(int m, const std::vector<int>& dims, int t,
                                               std::uint64_t seed);

/// Builds a model from dimensions. t < 0 draws independent Haar bases (child seed per
/// block); t >= 0 uses intersecting_family.
UnionModel make_union_model(int m, const std::vector<int>& dims, const std::vector<int>& counts,
                            int t, std::uint64_t seed);

/// Draws n_l points uniformly from the unit sphere of each subspace.
DataSet generate(const UnionModel& model);

/// Cosines of the principal angles, descending, clamped to [0, 1].
Eigen::VectorXd principal_angles(const SubspaceBasis& a, const SubspaceBasis& b);

/// ||A^T B||_F / sqrt(min(d_A, d_B)), clamped to [0, 1].
double affinity(const SubspaceBasis& a, const SubspaceBasis& b);

/// Orthonormal basis for the column span of a full-column-rank matrix.
SubspaceBasis orthonormalize(const Eigen::MatrixXd& v);

}  // namespace rpclust
