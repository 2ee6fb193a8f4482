#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rpclust/synth.hpp"

namespace rpclust {

enum class ProjectionKind { gaussian, fourier_sign, hadamard_sign };

std::string to_string(ProjectionKind kind);
ProjectionKind parse_projection_kind(const std::string& name);

/// JL concentration constant c~ of P(| ||Phi x||^2 - ||x||^2 | >= t ||x||^2) <= 2 exp(-c~ t^2 p).
struct ProjectorCalibration {
  double c_tilde = 0.25;
};

/// A seeded realization of a random p x m projection.
///
///  - gaussian:      dense, entries i.i.d. N(0, 1/p).
///  - fourier_sign:  Re(F D) where F holds p uniformly sampled rows of the unitary
///                   m-point DFT scaled by sqrt(m/p), D a random sign diagonal.
///                   Applied with a real-to-complex FFT per column.
///  - hadamard_sign: p sampled rows of the unitary Walsh-Hadamard matrix of size
///                   M = next power of two >= m, scaled by sqrt(M/p), times D.
///                   Inputs are zero-padded to M; applied with an in-place FWHT.
class Projector {
 public:
  Projector(ProjectionKind kind, int m, int p, std::uint64_t seed);

  /// Test hook: a projector whose realization is the given explicit matrix.
  static Projector from_matrix(Eigen::MatrixXd phi);
  static Projector identity(int m) { return from_matrix(Eigen::MatrixXd::Identity(m, m)); }

  ProjectionKind kind() const { return kind_; }
  int source_dim() const { return m_; }
  int target_dim() const { return p_; }
  std::uint64_t seed() const { return seed_; }
  /// Global factor multiplying the unitary-normalized rows (1/sqrt(p) for all kinds).
  double scale() const { return scale_; }
  bool is_override() const { return override_.has_value(); }

  /// Sampled row indices (fast kinds) in draw order.
  const std::vector<int>& rows() const { return rows_; }
  /// Random signs of D (fast kinds), length m.
  const std::vector<double>& signs() const { return signs_; }
  /// Padded transform length (hadamard_sign), m otherwise.
  int transform_size() const { return transform_size_; }

  /// Applies the same realization to every column of x (m x N) -> p x N.
  Eigen::MatrixXd apply(const Eigen::MatrixXd& x) const;
  /// Labels are carried through unchanged.
  DataSet apply(const DataSet& data) const;

  /// The realization as an explicit p x m matrix (applies the operator to I_m).
  Eigen::MatrixXd materialize() const;

  /// "kind=<k> m=<m> p=<p> seed=<s> scale=<c>"
  std::string record() const;
  static Projector from_record(const std::string& record);

 private:
  Projector() = default;
  Eigen::MatrixXd apply_fourier(const Eigen::MatrixXd& x) const;
  Eigen::MatrixXd apply_hadamard(const Eigen::MatrixXd& x) const;

  ProjectionKind kind_ = ProjectionKind::gaussian;
  int m_ = 0;
  int p_ = 0;
  std::uint64_t seed_ = 0;
  double scale_ = 1.0;
  int transform_size_ = 0;
  Eigen::MatrixXd dense_;
  std::vector<int> rows_;
  std::vector<double> signs_;
  std::optional<Eigen::MatrixXd> override_;
};

/// In-place unnormalized fast Walsh-Hadamard transform; v.size() must be a power of two.
void fwht(double* v, int n);

int next_power_of_two(int n);

/// Fraction of `trials` in which | ||Phi x||^2 - 1 | >= t for a fresh projector
/// realization and a fresh uniformly random unit vector x.
double jl_distortion_survey(ProjectionKind kind, int m, int p, double t, int trials, std::uint64_t seed);

/// Largest c~ consistent with observed failure rates over the grid of t values:
/// min over t with rate f > 0 of -log(f/2) / (t^2 p). Falls back to the default
/// 0.25 when no violations are observed.
ProjectorCalibration calibrate_c_tilde(ProjectionKind kind, int m, int p, const std::vector<double>& ts,
                                       int trials, std::uint64_t seed);

}  // namespace rpclust
