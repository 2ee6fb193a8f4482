#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "rpclust/adjacency.hpp"
#include "rpclust/project.hpp"
#include "rpclust/synth.hpp"

namespace rpclust {

/// Fraction of misclassified points under the best bijection between label
/// alphabets (maximum-weight matching on the confusion matrix).
double clustering_error(const std::vector<int>& pred, const std::vector<int>& truth);

struct FalseConnectionReport {
  long count = 0;        // edges joining different ground-truth groups
  long total_edges = 0;  // unordered pairs i < j with A_ij > 0
  bool has_false = false;
};

FalseConnectionReport false_connections(const Adjacency& a, const std::vector<int>& truth);

/// ||pinv(V_l) V_k||_F / sqrt(d_k). V_l must have full column rank: its
/// smallest singular value must exceed 1e-8 times its largest.
double projected_affinity_thm3(const Eigen::MatrixXd& v_l, const Eigen::MatrixXd& v_k);

/// ||U_l^T (Phi^T Phi - I) U_k||_F / sqrt(min(d_l, d_k)).
double perturbation_norm(const SubspaceBasis& u_l, const SubspaceBasis& u_k, const Projector& proj);

/// ||(Phi U_l)^T (Phi U_k)||_F / sqrt(min(d_l, d_k)), on the raw projected bases.
/// Bounded by affinity(U_l, U_k) + perturbation_norm(U_l, U_k, Phi).
double projected_basis_correlation(const SubspaceBasis& u_l, const SubspaceBasis& u_k, const Projector& proj);
/// Affinity between orthonormal bases of span(Phi U_l) and span(Phi U_k).
double projected_pair_affinity(const SubspaceBasis& u_l, const SubspaceBasis& u_k, const Projector& proj);

/// Maximum affinity over pairs k != l (0 when L = 1).
double max_pairwise_affinity(const std::vector<SubspaceBasis>& bases);

// Closed-form sides of the no-false-connection conditions (natural logs).
double ssc_condition_lhs(double aff_max, int d_max, int num_subspaces, double tau, double c_tilde, int p);
double ssc_condition_rhs(double rho_min, int n_total);
double tsc_condition_lhs(double aff_max, int d_max, double c_tilde, int p);
double tsc_condition_rhs(int n_total);
double general_basis_condition_rhs(double rho_min, int n_total);

struct TheoremReport {
  int p = 0;
  double aff_max = 0.0;
  int d_max = 0;
  double rho_min = 0.0;
  int N = 0;
  int L = 0;
  double tau = 2.0;
  double c_tilde = 0.25;
  int q = 0;
  /// The projector is exactly the identity, so the JL terms of eq3/eq4 vanish.
  bool unprojected = false;

  // SSC through a JL projection
  double lhs_eq3 = 0.0;
  double rhs_eq3 = 0.0;
  bool eq3_satisfied = false;
  // TSC through a JL projection
  double lhs_eq4 = 0.0;
  double rhs_eq4 = 0.0;
  bool counts_ok = false;  // n_l >= 6q for all l
  bool eq4_satisfied = false;
  // SSC on the realized projected bases
  double lhs_eq5_max = 0.0;
  double rhs_eq5 = 0.0;
  bool eq5_satisfied = false;

  /// Empty when every quantity was computable.
  std::string reason;

  /// "key=value" lines.
  std::string to_key_value() const;
  static std::string csv_header();
  std::string csv_row() const;
};

/// Evaluates both sides of every condition for `model` seen through `proj`.
/// An exact identity projector (Projector::identity) drops the JL terms.
TheoremReport theorem_report(const UnionModel& model, const Projector& proj, const ProjectorCalibration& cal,
                             double tau = 2.0, int q = 4);

}  // namespace rpclust
