#include "rpclust/metrics.hpp"

#include <cmath>
#include <iomanip>
#include <map>
#include <sstream>

#include "rpclust/errors.hpp"
#include "rpclust/hungarian.hpp"

namespace rpclust {

namespace {

std::vector<int> compress(const std::vector<int>& labels, int& alphabet) {
  std::map<int, int> ids;
  for (int l : labels) ids.try_emplace(l, 0);
  int k = 0;
  for (auto& [label, id] : ids) id = k++;
  alphabet = k;
  std::vector<int> out;
  out.reserve(labels.size());
  for (int l : labels) out.push_back(ids[l]);
  return out;
}

}  // namespace

double clustering_error(const std::vector<int>& pred, const std::vector<int>& truth) {
  if (pred.size() != truth.size())
    throw InputError("label length mismatch: " + std::to_string(pred.size()) + " vs " + std::to_string(truth.size()));
  if (pred.empty()) return 0.0;
  int kp = 0, kt = 0;
  const auto cp = compress(pred, kp);
  const auto ct = compress(truth, kt);
  const int k = std::max(kp, kt);
  Eigen::MatrixXd confusion = Eigen::MatrixXd::Zero(k, k);
  for (std::size_t i = 0; i < cp.size(); ++i) confusion(cp[i], ct[i]) += 1.0;
  const auto match = max_weight_assignment(confusion);
  double agree = 0.0;
  for (int r = 0; r < k; ++r) agree += confusion(r, match[r]);
  return 1.0 - agree / static_cast<double>(pred.size());
}

FalseConnectionReport false_connections(const Adjacency& a, const std::vector<int>& truth) {
  if (static_cast<int>(truth.size()) != a.size())
    throw InputError("label length " + std::to_string(truth.size()) + " != adjacency size " + std::to_string(a.size()));
  FalseConnectionReport rep;
  for (int i = 0; i < a.size(); ++i)
    for (int j = i + 1; j < a.size(); ++j)
      if (a(i, j) > 0) {
        ++rep.total_edges;
        if (truth[i] != truth[j]) ++rep.count;
      }
  rep.has_false = rep.count > 0;
  return rep;
}

double projected_affinity_thm3(const Eigen::MatrixXd& v_l, const Eigen::MatrixXd& v_k) {
  if (v_l.rows() != v_k.rows()) throw DimensionError("projected bases live in different dimensions");
  if (v_l.cols() > v_l.rows())
    throw RankError("basis with " + std::to_string(v_l.cols()) + " columns in dimension " + std::to_string(v_l.rows()) +
                    " cannot have full column rank");
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(v_l, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& s = svd.singularValues();
  if (s.size() == 0 || !(s(s.size() - 1) > 1e-8 * s(0))) throw RankError("basis V_l is rank deficient");
  const Eigen::MatrixXd pinv = svd.matrixV() * s.cwiseInverse().asDiagonal() * svd.matrixU().transpose();
  return (pinv * v_k).norm() / std::sqrt(static_cast<double>(v_k.cols()));
}

double perturbation_norm(const SubspaceBasis& u_l, const SubspaceBasis& u_k, const Projector& proj) {
  if (u_l.ambient_dim() != u_k.ambient_dim() || u_l.ambient_dim() != proj.source_dim())
    throw DimensionError("perturbation_norm: bases and projector disagree on the ambient dimension");
  const Eigen::MatrixXd vl = proj.apply(u_l.matrix());
  const Eigen::MatrixXd vk = proj.apply(u_k.matrix());
  const Eigen::MatrixXd diff = vl.transpose() * vk - u_l.matrix().transpose() * u_k.matrix();
  return diff.norm() / std::sqrt(static_cast<double>(std::min(u_l.dim(), u_k.dim())));
}

double projected_basis_correlation(const SubspaceBasis& u_l, const SubspaceBasis& u_k, const Projector& proj) {
  if (u_l.ambient_dim() != u_k.ambient_dim() || u_l.ambient_dim() != proj.source_dim())
    throw DimensionError("projected_basis_correlation: bases and projector disagree on the ambient dimension");
  const Eigen::MatrixXd vl = proj.apply(u_l.matrix());
  const Eigen::MatrixXd vk = proj.apply(u_k.matrix());
  return (vl.transpose() * vk).norm() / std::sqrt(static_cast<double>(std::min(u_l.dim(), u_k.dim())));
}

double projected_pair_affinity(const SubspaceBasis& u_l, const SubspaceBasis& u_k, const Projector& proj) {
  return affinity(orthonormalize(proj.apply(u_l.matrix())), orthonormalize(proj.apply(u_k.matrix())));
}

double max_pairwise_affinity(const std::vector<SubspaceBasis>& bases) {
  double best = 0.0;
  for (std::size_t k = 0; k < bases.size(); ++k)
    for (std::size_t l = k + 1; l < bases.size(); ++l) best = std::max(best, affinity(bases[k], bases[l]));
  return best;
}

double ssc_condition_lhs(double aff_max, int d_max, int num_subspaces, double tau, double c_tilde, int p) {
  return aff_max + std::sqrt(28.0 * d_max + 8.0 * std::log(static_cast<double>(num_subspaces)) + 2.0 * tau) /
                       std::sqrt(3.0 * c_tilde * p);
}

double ssc_condition_rhs(double rho_min, int n_total) {
  if (rho_min <= 1.0) return 0.0;
  return std::sqrt(std::log(rho_min)) / (65.0 * std::log(static_cast<double>(n_total)));
}

double tsc_condition_lhs(double aff_max, int d_max, double c_tilde, int p) {
  return aff_max + std::sqrt(10.0) / std::sqrt(12.0 * c_tilde) * std::sqrt(static_cast<double>(d_max) / p);
}

double tsc_condition_rhs(int n_total) { return 1.0 / (15.0 * std::log(static_cast<double>(n_total))); }

double general_basis_condition_rhs(double rho_min, int n_total) {
  if (rho_min <= 1.0) return 0.0;
  return std::sqrt(std::log(rho_min)) / (64.0 * std::log(static_cast<double>(n_total)));
}

TheoremReport theorem_report(const UnionModel& model, const Projector& proj, const ProjectorCalibration& cal,
                             double tau, int q) {
  model.validate();
  if (model.ambient_dim() != proj.source_dim())
    throw DimensionError("model ambient dim " + std::to_string(model.ambient_dim()) + " != projector source dim " +
                         std::to_string(proj.source_dim()));
  if (!(tau > 0)) throw InputError("tau must be positive");
  if (!(cal.c_tilde > 0)) throw InputError("c_tilde must be positive");
  if (model.total_points() < 2) throw InputError("need N >= 2 points for log N > 0");

  TheoremReport r;
  r.p = proj.target_dim();
  r.L = model.num_subspaces();
  r.N = model.total_points();
  r.d_max = model.max_dim();
  r.rho_min = model.rho_min();
  r.tau = tau;
  r.c_tilde = cal.c_tilde;
  r.q = q;
  r.aff_max = max_pairwise_affinity(model.bases);

  std::vector<std::string> reasons;
  const bool rho_ok = r.rho_min > 1.0;
  if (!rho_ok) reasons.push_back("rho_min <= 1 so sqrt(log rho_min) is not positive; conditions 3 and 5 unsatisfiable");

  r.unprojected = proj.is_override() && proj.target_dim() == proj.source_dim() &&
                  proj.materialize().isIdentity(0.0);
  r.lhs_eq3 = r.unprojected ? r.aff_max : ssc_condition_lhs(r.aff_max, r.d_max, r.L, tau, cal.c_tilde, r.p);
  r.rhs_eq3 = ssc_condition_rhs(r.rho_min, r.N);
  r.eq3_satisfied = rho_ok && r.lhs_eq3 <= r.rhs_eq3;

  r.lhs_eq4 = r.unprojected ? r.aff_max : tsc_condition_lhs(r.aff_max, r.d_max, cal.c_tilde, r.p);
  r.rhs_eq4 = tsc_condition_rhs(r.N);
  r.counts_ok = true;
  for (int n : model.counts) r.counts_ok = r.counts_ok && n >= 6 * q;
  if (!r.counts_ok) reasons.push_back("some n_l < 6q");
  r.eq4_satisfied = r.counts_ok && r.lhs_eq4 <= r.rhs_eq4;

  r.rhs_eq5 = general_basis_condition_rhs(r.rho_min, r.N);
  bool rank_ok = true;
  std::vector<Eigen::MatrixXd> projected;
  for (const auto& b : model.bases) projected.push_back(proj.apply(b.matrix()));
  for (int l = 0; l < r.L && rank_ok; ++l)
    for (int k = 0; k < r.L; ++k) {
      if (k == l) continue;
      try {
        r.lhs_eq5_max = std::max(r.lhs_eq5_max, projected_affinity_thm3(projected[l], projected[k]));
      } catch (const RankError& e) {
        rank_ok = false;
        reasons.push_back(std::string("condition 5: ") + e.what());
        r.lhs_eq5_max = 0.0;
        break;
      }
    }
  r.eq5_satisfied = rho_ok && rank_ok && r.lhs_eq5_max <= r.rhs_eq5;

  for (std::size_t i = 0; i < reasons.size(); ++i) r.reason += (i ? "; " : "") + reasons[i];
  return r;
}

std::string TheoremReport::to_key_value() const {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "p=" << p << "\naff_max=" << aff_max << "\nd_max=" << d_max << "\nrho_min=" << rho_min << "\nN=" << N
     << "\nL=" << L << "\ntau=" << tau << "\nc_tilde=" << c_tilde << "\nq=" << q << "\nunprojected=" << unprojected << "\nlhs_eq3=" << lhs_eq3
     << "\nrhs_eq3=" << rhs_eq3 << "\neq3_satisfied=" << eq3_satisfied << "\nlhs_eq4=" << lhs_eq4
     << "\nrhs_eq4=" << rhs_eq4 << "\ncounts_ok=" << counts_ok << "\neq4_satisfied=" << eq4_satisfied
     << "\nlhs_eq5_max=" << lhs_eq5_max << "\nrhs_eq5=" << rhs_eq5 << "\neq5_satisfied=" << eq5_satisfied
     << "\nreason=" << reason << "\n";
  return os.str();
}

std::string TheoremReport::csv_header() {
  return "p,aff_max,d_max,rho_min,N,L,tau,c_tilde,q,unprojected,lhs_eq3,rhs_eq3,eq3_satisfied,lhs_eq4,rhs_eq4,counts_ok,"
         "eq4_satisfied,lhs_eq5_max,rhs_eq5,eq5_satisfied,reason";
}

std::string TheoremReport::csv_row() const {
  std::ostringstream os;
  os << std::setprecision(17);
  std::string r = reason;
  for (auto& ch : r)
    if (ch == ',') ch = ';';
  os << p << ',' << aff_max << ',' << d_max << ',' << rho_min << ',' << N << ',' << L << ',' << tau << ',' << c_tilde
     << ',' << q << ',' << unprojected << ',' << lhs_eq3 << ',' << rhs_eq3 << ',' << eq3_satisfied << ',' << lhs_eq4 << ',' << rhs_eq4 << ','
     << counts_ok << ',' << eq4_satisfied << ',' << lhs_eq5_max << ',' << rhs_eq5 << ',' << eq5_satisfied << ',' << r;
  return os.str();
}

}  // namespace rpclust
