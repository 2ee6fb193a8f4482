// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <string>

#include "oracles.hpp"
#include "rpclust/experiment.hpp"
#include "rpclust/metrics.hpp"
#include "rpclust/project.hpp"
#include "rpclust/seed.hpp"
#include "rpclust/spectral.hpp"
#include "rpclust/ssc.hpp"
#include "rpclust/tsc.hpp"

using namespace rpclust;
using Clock = std::chrono::steady_clock;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

Eigen::MatrixXd unit_columns(int m, int n, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::MatrixXd x(m, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < m; ++i) x(i, j) = g(rng);
    x.col(j).normalize();
  }
  return x;
}

Eigen::MatrixXd drop_column(const Eigen::MatrixXd& x, int j) {
  Eigen::MatrixXd d(x.rows(), x.cols() - 1);
  d << x.leftCols(j), x.rightCols(x.cols() - 1 - j);
  return d;
}

double percentile(std::vector<double> v, double q) {
  std::sort(v.begin(), v.end());
  const auto idx = static_cast<std::size_t>(std::ceil(q * v.size())) - 1;
  return v[std::min(idx, v.size() - 1)];
}

Verdict clustering_error_oracle() {
  const auto t0 = Clock::now();
  std::mt19937_64 rng(101);
  std::uniform_int_distribution<int> nn(1, 40), kk(1, 5);
  int mismatches = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = nn(rng);
    const int kt = kk(rng), kp = kk(rng);
    std::uniform_int_distribution<int> ut(0, kt - 1), up(0, kp - 1);
    std::vector<int> truth(n), pred(n);
    for (int i = 0; i < n; ++i) {
      truth[i] = ut(rng);
      pred[i] = up(rng);
    }
    mismatches += clustering_error(pred, truth) != oracle::brute_force_ce(pred, truth);
  }
  const double secs = seconds_since(t0);
  return {mismatches == 0 && secs < 5.0,
          "200 pairs, exact mismatches=" + std::to_string(mismatches) + fmt(", %.2f s (limit 5 s)", secs)};
}

Verdict ssc_oracle() {
  const auto t0 = Clock::now();
  Rng rng(202);
  std::uniform_int_distribution<int> mm(3, 8);
  SscConfig admm;
  admm.mode = SscMode::lasso_admm;
  admm.max_iter = 50000;
  admm.tol_abs = admm.tol_rel = 1e-8;
  double worst_gap = 0.0, worst_kkt = 0.0;
  int columns = 0;
  for (int inst = 0; inst < 50; ++inst) {
    const int m = mm(rng);
    std::uniform_int_distribution<int> nn(m + 2, 15);
    const Eigen::MatrixXd x = unit_columns(m, nn(rng), rng);
    for (int j = 0; j < x.cols(); ++j) {
      const auto exact = solve_exact_l1_column(x, j);
      const double ref = oracle::l1_vertex_enumeration(drop_column(x, j), x.col(j));
      worst_gap = std::max(worst_gap, exact.diag.converged ? std::abs(exact.diag.objective - ref) : INFINITY);
      const auto lasso = solve_lasso_column(x, j, admm);
      worst_kkt = std::max(worst_kkt, lasso_kkt_residual(x, j, lasso.z, lasso_weight(x, j, admm.alpha)));
      ++columns;
    }
  }
  const double secs = seconds_since(t0);
  return {worst_gap <= 1e-6 && worst_kkt <= 1e-4 && secs < 60.0,
          "50 instances / " + std::to_string(columns) + " columns, max |l1 - oracle|=" + fmt("%.2e", worst_gap) +
              " (tol 1e-6), max ADMM KKT=" + fmt("%.2e", worst_kkt) + " (tol 1e-4)" + fmt(", %.1f s (limit 60 s)", secs)};
}

Verdict tsc_oracle() {
  Rng rng(303);
  std::uniform_int_distribution<int> mm(2, 12), nn(3, 50);
  std::normal_distribution<double> g(0.0, 1.0);
  double worst = 0.0;
  for (int inst = 0; inst < 50; ++inst) {
    DataSet ds;
    ds.points.resize(mm(rng), nn(rng));
    for (int i = 0; i < ds.points.size(); ++i) ds.points.data()[i] = g(rng);
    std::uniform_int_distribution<int> qq(1, ds.size() - 1);
    const int q = qq(rng);
    const Eigen::MatrixXd expect = oracle::dense_tsc(ds.points, q);
    worst = std::max(worst, (tsc_adjacency(ds, {q}).weights() - expect).cwiseAbs().maxCoeff());
  }
  return {worst <= 1e-12, "50 instances, max entry difference=" + fmt("%.2e", worst) + " (tol 1e-12)"};
}

Verdict engine_lemma() {
  const auto t0 = Clock::now();
  const int m = 200, d = 10;
  std::map<int, std::pair<double, double>> stats;  // p -> (95th percentile, median)
  bool bounded = true;
  std::string detail;
  for (int p : {20, 50, 100}) {
    std::vector<double> excess;
    for (std::uint64_t r = 0; r < 100; ++r) {
      const SubspaceBasis a = random_orthonormal_basis(m, d, derive_seed(404, {1, r}));
      const SubspaceBasis b = random_orthonormal_basis(m, d, derive_seed(404, {2, r}));
      const Projector proj(ProjectionKind::gaussian, m, p, derive_seed(404, {3, r, static_cast<std::uint64_t>(p)}));
      excess.push_back(projected_pair_affinity(a, b, proj) - affinity(a, b));
    }
    const double p95 = percentile(excess, 0.95), med = percentile(excess, 0.5);
    const double bound = 4.0 * std::sqrt(static_cast<double>(d) / p);
    bounded = bounded && p95 <= bound;
    stats[p] = {p95, med};
    detail += "p=" + std::to_string(p) + ": p95=" + fmt("%.3f", p95) + " (bound " + fmt("%.3f", bound) + ")" +
              " median=" + fmt("%.3f", med) + "; ";
  }
  const bool decreasing = stats[20].second > stats[50].second && stats[50].second > stats[100].second;
  const double secs = seconds_since(t0);
  return {bounded && decreasing && secs < 120.0,
          detail + (decreasing ? "median decreasing" : "median NOT decreasing") + fmt(", %.1f s (limit 120 s)", secs)};
}

Verdict ce_trend() {
  const auto t0 = Clock::now();
  ExperimentConfig cfg;
  cfg.m = 100;
  cfg.L = 3;
  cfg.dims = {5};
  cfg.counts = {50};
  cfg.t = -1;
  cfg.q = 4;
  cfg.seed = 505;
  cfg.kinds = {ProjectionKind::gaussian};
  cfg.p_values = {0, 5, 40};
  cfg.algorithms = {Algorithm::ssc, Algorithm::tsc};
  cfg.ssc.mode = SscMode::lasso_admm;
  cfg.repetitions = 20;
  cfg.forced_L = 3;
  const auto rows = run_sweep(cfg);
  std::map<std::pair<Algorithm, int>, double> mean;
  int errors = 0;
  for (const auto& r : rows) {
    mean[{r.algorithm, r.p}] += r.ce / cfg.repetitions;
    errors += !r.error.empty();
  }
  double aff = 0.0;
  for (int rep = 0; rep < cfg.repetitions; ++rep)
    aff += max_pairwise_affinity(build_model(cfg, derive_seed(cfg.seed, {static_cast<std::uint64_t>(rep)})).bases) /
           cfg.repetitions;
  bool ok = errors == 0;
  std::string detail = "mean aff_max=" + fmt("%.3f", aff) + "; ";
  for (Algorithm alg : cfg.algorithms) {
    const double c0 = mean[{alg, 0}], c5 = mean[{alg, 5}], c40 = mean[{alg, 40}];
    ok = ok && std::abs(c40 - c0) <= 0.05 && c5 > c40;
    detail += to_string(alg) + ": CE(p=0)=" + fmt("%.4f", c0) + " CE(p=5)=" + fmt("%.4f", c5) +
              " CE(p=40)=" + fmt("%.4f", c40) + "; ";
  }
  const double secs = seconds_since(t0);
  return {ok && secs < 600.0, detail + "row errors=" + std::to_string(errors) + fmt(", %.1f s (limit 600 s)", secs)};
}

Verdict no_false_connections() {
  bool ok = true;
  std::string detail;
  for (int p : {15, 30}) {
    int clean = 0, clean_normalized = 0;
    for (std::uint64_t s = 0; s < 20; ++s) {
      const SubspaceBasis frame = random_orthonormal_basis(30, 6, derive_seed(606, {s, 0}));
      const UnionModel model{{SubspaceBasis(frame.matrix().leftCols(3)), SubspaceBasis(frame.matrix().rightCols(3))},
                             {30, 30},
                             derive_seed(606, {s, 1})};
      const DataSet data = generate(model);
      const Projector proj(ProjectionKind::gaussian, 30, p, derive_seed(606, {s, 2, static_cast<std::uint64_t>(p)}));
      const DataSet y = proj.apply(data);
      clean += false_connections(tsc_adjacency(y, {4}), *data.labels).count == 0;
      TscConfig normalized{4};
      normalized.normalize_selection = true;
      clean_normalized += false_connections(tsc_adjacency(y, normalized), *data.labels).count == 0;
    }
    ok = ok && clean >= 19;
    detail += "p=" + std::to_string(p) + ": " + std::to_string(clean) + "/20 seeds clean, " +
              std::to_string(clean_normalized) + "/20 with normalized selection; ";
  }
  return {ok, detail + "(need >= 19/20)"};
}

Verdict jl_property() {
  const double rate = jl_distortion_survey(ProjectionKind::gaussian, 256, 100, 0.5, 1000, 707);
  double worst = 0.0;
  Rng rng(708);
  for (int m : {8, 13, 32, 50, 64}) {
    for (ProjectionKind kind : {ProjectionKind::fourier_sign, ProjectionKind::hadamard_sign}) {
      const int p = std::max(1, m / 3);
      const Projector proj(kind, m, p, derive_seed(709, {static_cast<std::uint64_t>(m)}));
      const Eigen::MatrixXd dense =
          kind == ProjectionKind::fourier_sign
              ? oracle::dense_fourier_sign(m, proj.rows(), proj.signs())
              : oracle::dense_hadamard_sign(m, proj.transform_size(), proj.rows(), proj.signs());
      const Eigen::MatrixXd x = unit_columns(m, 7, rng);
      worst = std::max(worst, (proj.apply(x) - dense * x).cwiseAbs().maxCoeff());
      worst = std::max(worst, (proj.materialize() - dense).cwiseAbs().maxCoeff());
    }
  }
  return {rate <= 0.01 && worst <= 1e-10, "gaussian m=256 p=100 t=0.5: violation rate=" + fmt("%.4f", rate) +
                                              " (limit 0.01); fast vs dense max diff=" + fmt("%.2e", worst) +
                                              " (tol 1e-10)"};
}

Verdict spectral_correctness() {
  std::mt19937_64 rng(808);
  std::uniform_int_distribution<int> nb(1, 6), sz(3, 15);
  int right_L = 0, perfect = 0, known_L = 0;
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<int> sizes(nb(rng));
    for (int& s : sizes) s = sz(rng);
    const int n = std::accumulate(sizes.begin(), sizes.end(), 0);
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    const Eigen::MatrixXd w = oracle::block_adjacency(sizes, rng);
    Eigen::MatrixXd pw(n, n);
    std::vector<int> truth(n);
    int off = 0;
    for (int b = 0; b < static_cast<int>(sizes.size()); ++b, off += sizes[b - 1])
      for (int i = 0; i < sizes[b]; ++i) truth[perm[off + i]] = b;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) pw(perm[i], perm[j]) = w(i, j);
    const Adjacency a(pw);
    const ClusteringResult r = spectral_cluster_auto(a, std::min(10, n), derive_seed(809, {static_cast<std::uint64_t>(trial)}));
    right_L += r.L_hat == static_cast<int>(sizes.size());
    perfect += r.L_hat == static_cast<int>(sizes.size()) && clustering_error(r.labels, truth) == 0.0;
    const ClusteringResult k = spectral_cluster(a, static_cast<int>(sizes.size()), derive_seed(809, {static_cast<std::uint64_t>(trial)}));
    known_L += clustering_error(k.labels, truth) == 0.0;
  }
  return {right_L == 50 && perfect == 50, "50 adjacencies: eigengap correct " + std::to_string(right_L) +
                                              "/50, CE = 0 in " + std::to_string(perfect) +
                                              "/50; with the true L given, CE = 0 in " + std::to_string(known_L) + "/50"};
}

Verdict theorem_arithmetic() {
  const int m = 60;
  const SubspaceBasis frame = random_orthonormal_basis(m, 6, 909);
  const UnionModel model{{SubspaceBasis(frame.matrix().leftCols(3)), SubspaceBasis(frame.matrix().rightCols(3))},
                         {200, 200},
                         1};
  const Projector proj(ProjectionKind::gaussian, m, m, 910);
  const TheoremReport r = theorem_report(model, proj, {0.25}, 2.0, 4);

  // By hand: L = 2, N = 400, d_max = 3, p = 60, aff_max = 0, c~ = 0.25, tau = 2, rho_min = 199/3.
  const double lhs3 = std::sqrt(28.0 * 3 + 8.0 * std::log(2.0) + 2.0 * 2.0) / std::sqrt(3.0 * 0.25 * 60);
  const double rhs3 = std::sqrt(std::log(199.0 / 3.0)) / (65.0 * std::log(400.0));
  const double lhs4 = std::sqrt(10.0) / std::sqrt(12.0 * 0.25) * std::sqrt(3.0 / 60.0);
  const double rhs4 = 1.0 / (15.0 * std::log(400.0));
  const double worst = std::max({std::abs(r.lhs_eq3 - lhs3), std::abs(r.rhs_eq3 - rhs3), std::abs(r.lhs_eq4 - lhs4),
                                 std::abs(r.rhs_eq4 - rhs4)});
  return {worst <= 1e-12 && r.N == 400 && r.d_max == 3 && r.L == 2,
          "lhs3=" + fmt("%.15f", r.lhs_eq3) + " rhs3=" + fmt("%.15f", r.rhs_eq3) + " lhs4=" + fmt("%.15f", r.lhs_eq4) +
              " rhs4=" + fmt("%.15f", r.rhs_eq4) + ", max diff=" + fmt("%.2e", worst) + " (tol 1e-12)"};
}

double mean_projection_ms(ProjectionKind kind, int m, int p, const Eigen::MatrixXd& x, int runs) {
  double total = 0.0;
  for (int r = -1; r < runs; ++r) {
    const auto t0 = Clock::now();
    const Projector proj(kind, m, p, derive_seed(1010, {static_cast<std::uint64_t>(p), static_cast<std::uint64_t>(r + 1)}));
    const Eigen::MatrixXd y = proj.apply(x);
    const double ms = seconds_since(t0) * 1e3;
    if (r >= 0) total += ms;  // r = -1 is a warm-up
    if (y.rows() != p) std::abort();
  }
  return total / runs;
}

Verdict frp_running_time() {
  const int m = 4096;
  Rng rng(1011);
  const Eigen::MatrixXd x = unit_columns(m, 100, rng);
  const double f_small = mean_projection_ms(ProjectionKind::fourier_sign, m, m / 8, x, 10);
  const double f_large = mean_projection_ms(ProjectionKind::fourier_sign, m, m / 2, x, 10);
  const double g_small = mean_projection_ms(ProjectionKind::gaussian, m, m / 8, x, 10);
  const double g_large = mean_projection_ms(ProjectionKind::gaussian, m, m / 2, x, 10);
  const double f_rel = std::abs(f_large - f_small) / std::min(f_small, f_large);
  const double g_rel = (g_large - g_small) / g_small;
  return {f_rel < 0.25 && g_rel > 1.0,
          "m=4096, N=100, 10 runs: fourier_sign " + fmt("%.2f ms", f_small) + " vs " + fmt("%.2f ms", f_large) +
              " (diff " + fmt("%.0f%%", 100 * f_rel) + ", limit 25%); gaussian " + fmt("%.2f ms", g_small) + " vs " +
              fmt("%.2f ms", g_large) + " (diff " + fmt("%.0f%%", 100 * g_rel) + ", need > 100%)"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"clustering error equals the permutation oracle", clustering_error_oracle},
      {"SSC exact l1 matches the LP oracle, ADMM meets KKT", ssc_oracle},
      {"TSC adjacency matches the dense construction", tsc_oracle},
      {"projection raises affinity by at most 4 sqrt(d/p)", engine_lemma},
      {"CE versus p trend on synthetic data", ce_trend},
      {"TSC has no false connections on orthogonal subspaces", no_false_connections},
      {"JL concentration and fast transforms", jl_property},
      {"eigengap and spectral clustering on block graphs", spectral_correctness},
      {"theorem report arithmetic", theorem_arithmetic},
      {"FRP time independent of p, GRP time grows", frp_running_time},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failed += !v.pass;
    std::printf("%s criterion %zu: %s: %s\n", v.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                v.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
