#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "rpclust/adjacency.hpp"

namespace rpclust {

struct KMeansOptions {
  int restarts = 10;
  int max_iter = 100;
};

struct KMeansResult {
  std::vector<int> labels;
  Eigen::MatrixXd centroids;  // k x dim
  double inertia = 0.0;
  int best_restart = 0;
};

/// Lloyd iterations from k-means++ seeds; restart r draws from derive_seed(seed, {r}).
/// The lowest inertia wins, ties going to the earlier restart. Points are rows.
KMeansResult kmeans(const Eigen::MatrixXd& points, int k, std::uint64_t seed, const KMeansOptions& opts = {});

struct ClusteringResult {
  std::vector<int> labels;
  int L_hat = 1;
  /// Smallest eigenvalues of the normalized Laplacian, ascending.
  Eigen::VectorXd eigenvalues;
  /// k-means settings and the chosen restart, for auditing.
  std::string metadata;
};

/// L_sym = I - D^{-1/2} A D^{-1/2}. Zero-degree vertices keep an identity row.
Eigen::MatrixXd normalized_laplacian(const Adjacency& a);

/// All eigenvalues of L_sym, ascending.
Eigen::VectorXd laplacian_spectrum(const Adjacency& a);

/// argmax over 1 <= i <= L_max of lambda_{i+1} - lambda_i (1-based, ascending);
/// the smallest i wins ties.
int eigengap_estimate(const Adjacency& a, int L_max);
int eigengap_from_spectrum(const Eigen::VectorXd& ascending, int L_max);

/// Ng-Jordan-Weiss: embed into the L_hat eigenvectors of L_sym with smallest
/// eigenvalues, normalize rows (zero rows stay zero), k-means++ with restarts.
/// Labels are renumbered by first appearance.
ClusteringResult spectral_cluster(const Adjacency& a, int L_hat, std::uint64_t seed, const KMeansOptions& opts = {});

/// Same, with L_hat = eigengap_estimate(a, L_max) from a single eigendecomposition.
ClusteringResult spectral_cluster_auto(const Adjacency& a, int L_max, std::uint64_t seed,
                                       const KMeansOptions& opts = {});

/// Components over nonzero entries; labels ordered by smallest member index.
std::vector<int> connected_components(const Adjacency& a);

/// Renumbers labels so they appear in order 0, 1, 2, ... along the vector.
std::vector<int> canonical_labels(const std::vector<int>& labels);

}  // namespace rpclust
