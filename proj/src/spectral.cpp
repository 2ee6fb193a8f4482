#include "rpclust/spectral.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <queue>
#include <sstream>

#include "rpclust/errors.hpp"
#include "rpclust/seed.hpp"

namespace rpclust {

namespace {

Eigen::MatrixXd seed_plus_plus(const Eigen::MatrixXd& pts, int k, Rng& rng) {
  const int n = static_cast<int>(pts.rows());
  Eigen::MatrixXd centers(k, pts.cols());
  std::uniform_int_distribution<int> first(0, n - 1);
  centers.row(0) = pts.row(first(rng));
  Eigen::VectorXd d2 = (pts.rowwise() - centers.row(0)).rowwise().squaredNorm();
  for (int c = 1; c < k; ++c) {
    const double total = d2.sum();
    int pick = 0;
    if (total > 0) {
      std::uniform_real_distribution<double> unif(0.0, total);
      double target = unif(rng);
      pick = n - 1;
      for (int i = 0; i < n; ++i) {
        target -= d2(i);
        if (target < 0) {
          pick = i;
          break;
        }
      }
    } else {
      pick = first(rng);
    }
    centers.row(c) = pts.row(pick);
    d2 = d2.cwiseMin((pts.rowwise() - centers.row(c)).rowwise().squaredNorm());
  }
  return centers;
}

KMeansResult lloyd(const Eigen::MatrixXd& pts, Eigen::MatrixXd centers, int max_iter) {
  const int n = static_cast<int>(pts.rows());
  const int k = static_cast<int>(centers.rows());
  std::vector<int> labels(n, -1);
  Eigen::VectorXd best_d(n);
  for (int it = 0; it < max_iter; ++it) {
    bool changed = false;
    for (int i = 0; i < n; ++i) {
      int arg = 0;
      double best = std::numeric_limits<double>::infinity();
      for (int c = 0; c < k; ++c) {
        const double d = (pts.row(i) - centers.row(c)).squaredNorm();
        if (d < best) {
          best = d;
          arg = c;
        }
      }
      best_d(i) = best;
      if (labels[i] != arg) {
        labels[i] = arg;
        changed = true;
      }
    }
    if (!changed && it > 0) break;
    Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(k, pts.cols());
    std::vector<int> counts(k, 0);
    for (int i = 0; i < n; ++i) {
      sums.row(labels[i]) += pts.row(i);
      ++counts[labels[i]];
    }
    for (int c = 0; c < k; ++c) {
      if (counts[c] > 0) {
        centers.row(c) = sums.row(c) / counts[c];
      } else {
        // Empty cluster: move it onto the worst-served point.
        Eigen::Index far = 0;
        best_d.maxCoeff(&far);
        centers.row(c) = pts.row(far);
        best_d(far) = 0.0;
      }
    }
  }
  KMeansResult res;
  res.labels = std::move(labels);
  res.centroids = std::move(centers);
  res.inertia = 0.0;
  for (int i = 0; i < n; ++i) res.inertia += (pts.row(i) - res.centroids.row(res.labels[i])).squaredNorm();
  return res;
}

struct Spectrum {
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
};

Spectrum decompose(const Adjacency& a) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(normalized_laplacian(a));
  if (es.info() != Eigen::Success) throw NumericError("eigensolver failed on the normalized Laplacian");
  return {es.eigenvalues(), es.eigenvectors()};
}

ClusteringResult cluster_from_spectrum(const Spectrum& sp, int L_hat, std::uint64_t seed, const KMeansOptions& opts) {
  const int n = static_cast<int>(sp.values.size());
  if (L_hat < 1 || L_hat > n) throw InputError("L_hat must lie in [1, N]");
  ClusteringResult out;
  out.L_hat = L_hat;
  out.eigenvalues = sp.values.head(std::min(n, std::max(L_hat + 1, 10)));
  if (L_hat == 1) {
    out.labels.assign(n, 0);
    out.metadata = "single cluster";
    return out;
  }
  Eigen::MatrixXd emb = sp.vectors.leftCols(L_hat);
  for (int i = 0; i < n; ++i) {
    const double nr = emb.row(i).norm();
    if (nr > 0) emb.row(i) /= nr;
  }
  const KMeansResult km = kmeans(emb, L_hat, seed, opts);
  out.labels = canonical_labels(km.labels);
  std::ostringstream md;
  md << "kmeans++ restarts=" << opts.restarts << " max_iter=" << opts.max_iter << " best_restart=" << km.best_restart
     << " inertia=" << km.inertia;
  out.metadata = md.str();
  return out;
}

}  // namespace

KMeansResult kmeans(const Eigen::MatrixXd& points, int k, std::uint64_t seed, const KMeansOptions& opts) {
  const int n = static_cast<int>(points.rows());
  if (k < 1 || k > n) throw InputError("k must lie in [1, number of points]");
  if (opts.restarts < 1 || opts.max_iter < 1) throw InputError("k-means restarts and max_iter must be >= 1");
  KMeansResult best;
  best.inertia = std::numeric_limits<double>::infinity();
  for (int r = 0; r < opts.restarts; ++r) {
    Rng rng(derive_seed(seed, {static_cast<std::uint64_t>(r)}));
    KMeansResult res = lloyd(points, seed_plus_plus(points, k, rng), opts.max_iter);
    if (res.inertia < best.inertia) {
      best = std::move(res);
      best.best_restart = r;
    }
  }
  return best;
}

Eigen::MatrixXd normalized_laplacian(const Adjacency& a) {
  const Eigen::MatrixXd& w = a.weights();
  const Eigen::VectorXd deg = w.rowwise().sum();
  Eigen::VectorXd inv_sqrt(deg.size());
  for (Eigen::Index i = 0; i < deg.size(); ++i) inv_sqrt(i) = deg(i) > 0 ? 1.0 / std::sqrt(deg(i)) : 0.0;
  Eigen::MatrixXd l = -(inv_sqrt.asDiagonal() * w * inv_sqrt.asDiagonal());
  l.diagonal().array() += 1.0;
  return l;
}

Eigen::VectorXd laplacian_spectrum(const Adjacency& a) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(normalized_laplacian(a), Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericError("eigensolver failed on the normalized Laplacian");
  return es.eigenvalues();
}

int eigengap_from_spectrum(const Eigen::VectorXd& lambda, int L_max) {
  const int n = static_cast<int>(lambda.size());
  if (L_max < 1 || L_max > n) throw InputError("L_max must lie in [1, N]");
  const int upper = std::min(L_max, n - 1);
  int best_i = 1;
  double best_gap = -std::numeric_limits<double>::infinity();
  for (int i = 1; i <= upper; ++i) {
    const double gap = lambda(i) - lambda(i - 1);
    if (gap > best_gap) {
      best_gap = gap;
      best_i = i;
    }
  }
  return best_i;
}

int eigengap_estimate(const Adjacency& a, int L_max) { return eigengap_from_spectrum(laplacian_spectrum(a), L_max); }

ClusteringResult spectral_cluster(const Adjacency& a, int L_hat, std::uint64_t seed, const KMeansOptions& opts) {
  if (L_hat < 1) throw InputError("L_hat must be >= 1");
  return cluster_from_spectrum(decompose(a), L_hat, seed, opts);
}

ClusteringResult spectral_cluster_auto(const Adjacency& a, int L_max, std::uint64_t seed, const KMeansOptions& opts) {
  const Spectrum sp = decompose(a);
  return cluster_from_spectrum(sp, eigengap_from_spectrum(sp.values, L_max), seed, opts);
}

std::vector<int> connected_components(const Adjacency& a) {
  const int n = a.size();
  std::vector<int> label(n, -1);
  int next = 0;
  for (int s = 0; s < n; ++s) {
    if (label[s] >= 0) continue;
    std::queue<int> frontier;
    frontier.push(s);
    label[s] = next;
    while (!frontier.empty()) {
      const int v = frontier.front();
      frontier.pop();
      for (int u = 0; u < n; ++u)
        if (label[u] < 0 && a(v, u) > 0) {
          label[u] = next;
          frontier.push(u);
        }
    }
    ++next;
  }
  return label;
}

std::vector<int> canonical_labels(const std::vector<int>& labels) {
  std::map<int, int> remap;
  std::vector<int> out;
  out.reserve(labels.size());
  for (int l : labels) {
    auto [it, inserted] = remap.try_emplace(l, static_cast<int>(remap.size()));
    out.push_back(it->second);
  }
  return out;
}

}  // namespace rpclust
