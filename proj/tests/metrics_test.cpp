#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "oracles.hpp"
#include "rpclust/errors.hpp"
#include "rpclust/metrics.hpp"
#include "rpclust/seed.hpp"

using namespace rpclust;

namespace {

std::vector<int> random_labels(int n, int k, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> u(0, k - 1);
  std::vector<int> out(n);
  for (int& l : out) l = u(rng);
  return out;
}

double percentile(std::vector<double> v, double q) {
  std::sort(v.begin(), v.end());
  const auto idx = static_cast<std::size_t>(std::ceil(q * v.size())) - 1;
  return v[std::min(idx, v.size() - 1)];
}

}  // namespace

TEST_CASE("clustering error examples") {
  CHECK(clustering_error({0, 1, 2, 2}, {0, 1, 2, 2}) == 0.0);
  CHECK(clustering_error({1, 1, 0, 0}, {0, 0, 1, 1}) == 0.0);
  CHECK(clustering_error({0, 1, 1, 1}, {0, 0, 1, 1}) == 0.25);
  CHECK(clustering_error({}, {}) == 0.0);
  CHECK_THROWS_AS(clustering_error({0, 1}, {0}), InputError);
}

TEST_CASE("clustering error equals the permutation oracle") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> nn(1, 40), kk(1, 5);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = nn(rng);
    const auto truth = random_labels(n, kk(rng), rng);
    const auto pred = random_labels(n, kk(rng), rng);
    CHECK(clustering_error(pred, truth) == oracle::brute_force_ce(pred, truth));
  }
}

TEST_CASE("clustering error is symmetric and relabeling invariant") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const auto truth = random_labels(30, 4, rng);
    const auto pred = random_labels(30, 5, rng);
    const double ce = clustering_error(pred, truth);
    CHECK(clustering_error(truth, pred) == ce);
    std::vector<int> perm{3, 7, 1, 9, 4};
    std::shuffle(perm.begin(), perm.end(), rng);
    auto relabeled_pred = pred;
    for (int& l : relabeled_pred) l = perm[l];
    auto relabeled_truth = truth;
    for (int& l : relabeled_truth) l = 10 * perm[l] + 5;
    CHECK(clustering_error(relabeled_pred, truth) == ce);
    CHECK(clustering_error(pred, relabeled_truth) == ce);
  }
}

TEST_CASE("false connection examples") {
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(4, 4);
  w(0, 1) = w(1, 0) = 1.0;
  w(2, 3) = w(3, 2) = 0.5;
  const std::vector<int> truth{0, 0, 1, 1};
  auto rep = false_connections(Adjacency(w), truth);
  CHECK(rep.count == 0);
  CHECK(rep.total_edges == 2);
  CHECK(!rep.has_false);
  w(1, 2) = w(2, 1) = 1e-9;
  rep = false_connections(Adjacency(w), truth);
  CHECK(rep.count == 1);
  CHECK(rep.total_edges == 3);
  CHECK(rep.has_false);
  CHECK_THROWS_AS(false_connections(Adjacency(w), {0, 1}), InputError);
}

TEST_CASE("false connections match a direct count") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 25;
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (u(rng) < 0.3) w(i, j) = w(j, i) = u(rng) + 0.01;
    const auto truth = random_labels(n, 3, rng);
    long expect = 0, edges = 0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i < j && w(i, j) > 0) {
          ++edges;
          expect += truth[i] != truth[j];
        }
    const auto rep = false_connections(Adjacency(w), truth);
    CHECK(rep.count == expect);
    CHECK(rep.total_edges == edges);
    CHECK(rep.count <= rep.total_edges);
  }
}

TEST_CASE("projected affinity for orthonormal and identical bases") {
  const auto [a, b] = intersecting_pair(20, 4, 1, 3);
  CHECK(projected_affinity_thm3(a.matrix(), b.matrix()) ==
        doctest::Approx((a.matrix().transpose() * b.matrix()).norm() / 2.0).epsilon(1e-12));
  CHECK(projected_affinity_thm3(a.matrix(), b.matrix()) == doctest::Approx(affinity(a, b)).epsilon(1e-12));
  Rng rng(1);
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::MatrixXd v(12, 5);
  for (int i = 0; i < v.size(); ++i) v.data()[i] = g(rng);
  CHECK(projected_affinity_thm3(v, v) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("projected affinity matches a normal-equation pseudo-inverse") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const SubspaceBasis ul = random_orthonormal_basis(80, 6, 10 + seed);
    const SubspaceBasis uk = random_orthonormal_basis(80, 6, 50 + seed);
    const Projector proj(ProjectionKind::gaussian, 80, 40, seed);
    const Eigen::MatrixXd vl = proj.apply(ul.matrix());
    const Eigen::MatrixXd vk = proj.apply(uk.matrix());
    const double expect = (oracle::normal_equation_pinv(vl) * vk).norm() / std::sqrt(6.0);
    CHECK(std::abs(projected_affinity_thm3(vl, vk) - expect) <= 1e-8);
  }
}

TEST_CASE("projected affinity requires full column rank") {
  Eigen::MatrixXd wide = Eigen::MatrixXd::Random(3, 5);
  CHECK_THROWS_AS(projected_affinity_thm3(wide, wide), RankError);
  Eigen::MatrixXd deficient = Eigen::MatrixXd::Random(6, 3);
  deficient.col(2) = deficient.col(0) + deficient.col(1);
  CHECK_THROWS_AS(projected_affinity_thm3(deficient, Eigen::MatrixXd::Random(6, 2)), RankError);
  CHECK_THROWS_AS(projected_affinity_thm3(Eigen::MatrixXd::Random(6, 2), Eigen::MatrixXd::Random(5, 2)),
                  DimensionError);
}

TEST_CASE("perturbation norm") {
  const SubspaceBasis a = random_orthonormal_basis(200, 10, 1);
  const SubspaceBasis b = random_orthonormal_basis(200, 10, 2);
  CHECK(perturbation_norm(a, b, Projector::identity(200)) <= 1e-14);

  std::vector<double> at50, at20, at100;
  for (std::uint64_t t = 0; t < 100; ++t) {
    const Projector proj(ProjectionKind::gaussian, 200, 50, derive_seed(9, {t}));
    const double v = perturbation_norm(a, b, proj);
    CHECK(v == doctest::Approx(perturbation_norm(b, a, proj)).epsilon(1e-12));
    at50.push_back(v);
  }
  CHECK(percentile(at50, 0.95) <= 4.0 * std::sqrt(10.0 / 50.0));
  for (std::uint64_t t = 0; t < 50; ++t) {
    at20.push_back(perturbation_norm(a, b, Projector(ProjectionKind::gaussian, 200, 20, derive_seed(10, {t}))));
    at100.push_back(perturbation_norm(a, b, Projector(ProjectionKind::gaussian, 200, 100, derive_seed(11, {t}))));
  }
  CHECK(percentile(at20, 0.5) > percentile(at100, 0.5));
  CHECK_THROWS_AS(perturbation_norm(a, random_orthonormal_basis(100, 10, 3), Projector::identity(200)),
                  DimensionError);
}

TEST_CASE("projected basis correlation stays within the perturbation bound") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto [a, b] = intersecting_pair(60, 5, static_cast<int>(seed % 4), 100 + seed);
    const int p = 10 + static_cast<int>(seed % 5) * 10;
    const auto kind = static_cast<ProjectionKind>(seed % 3);
    const Projector proj(kind, 60, p, seed);
    const double raw = projected_basis_correlation(a, b, proj);
    CHECK(raw <= affinity(a, b) + perturbation_norm(a, b, proj) + 1e-8);
    const Eigen::MatrixXd g = proj.apply(a.matrix()).transpose() * proj.apply(b.matrix());
    CHECK(raw == doctest::Approx(g.norm() / std::sqrt(5.0)).epsilon(1e-12));
    CHECK(projected_pair_affinity(a, b, proj) >= 0.0);
    CHECK(projected_pair_affinity(a, b, proj) <= 1.0);
  }
}

TEST_CASE("closed-form condition sides") {
  CHECK(ssc_condition_lhs(0.1, 3, 2, 2.0, 0.25, 60) ==
        doctest::Approx(0.1 + std::sqrt(84.0 + 8.0 * std::log(2.0) + 4.0) / std::sqrt(45.0)).epsilon(1e-14));
  CHECK(tsc_condition_rhs(400) == doctest::Approx(0.011126).epsilon(1e-4));
  CHECK(ssc_condition_rhs(1.0, 100) == 0.0);
  CHECK(general_basis_condition_rhs(0.5, 100) == 0.0);
  CHECK(general_basis_condition_rhs(std::exp(1.0), 100) == doctest::Approx(1.0 / (64.0 * std::log(100.0))));
}

TEST_CASE("theorem report for orthogonal subspaces without projection") {
  const SubspaceBasis frame = random_orthonormal_basis(60, 6, 5);
  UnionModel model{{SubspaceBasis(frame.matrix().leftCols(3)), SubspaceBasis(frame.matrix().rightCols(3))},
                   {200, 200},
                   1};
  const TheoremReport r = theorem_report(model, Projector::identity(60), {});
  CHECK(r.unprojected);
  CHECK(r.N == 400);
  CHECK(r.aff_max <= 1e-12);
  CHECK(r.rhs_eq4 == doctest::Approx(1.0 / (15.0 * std::log(400.0))).epsilon(1e-14));
  CHECK(r.rhs_eq4 == doctest::Approx(0.01113).epsilon(1e-3));
  CHECK(r.lhs_eq4 <= 1e-12);
  CHECK(r.eq4_satisfied);
  CHECK(r.counts_ok);
  CHECK(r.eq3_satisfied);
  CHECK(r.eq5_satisfied);
  CHECK(r.reason.empty());
}

TEST_CASE("theorem report with a random projector uses the closed forms") {
  const UnionModel model = make_union_model(60, {3, 3}, {200, 200}, -1, 2);
  const Projector proj(ProjectionKind::gaussian, 60, 60, 4);
  const TheoremReport r = theorem_report(model, proj, {0.25}, 2.0, 4);
  CHECK(!r.unprojected);
  CHECK(r.lhs_eq3 == ssc_condition_lhs(r.aff_max, 3, 2, 2.0, 0.25, 60));
  CHECK(r.lhs_eq4 == tsc_condition_lhs(r.aff_max, 3, 0.25, 60));
  CHECK(r.rho_min == doctest::Approx(199.0 / 3.0));
  CHECK(r.rhs_eq3 == doctest::Approx(std::sqrt(std::log(199.0 / 3.0)) / (65.0 * std::log(400.0))).epsilon(1e-14));
  CHECK(!r.eq4_satisfied);
  CHECK(std::isfinite(r.lhs_eq5_max));
  const std::string kv = r.to_key_value();
  CHECK(kv.find("lhs_eq4=") != std::string::npos);
  CHECK(kv.find("unprojected=0") != std::string::npos);
  const std::string row = r.csv_row();
  const std::string header = TheoremReport::csv_header();
  CHECK(std::count(row.begin(), row.end(), ',') == std::count(header.begin(), header.end(), ','));
}

TEST_CASE("nested subspaces fail every condition") {
  const UnionModel model = make_union_model(40, {4, 4}, {30, 30}, 4, 6);
  CHECK(max_pairwise_affinity(model.bases) == doctest::Approx(1.0).epsilon(1e-12));
  for (int p : {10, 20, 40}) {
    const TheoremReport r = theorem_report(model, Projector(ProjectionKind::gaussian, 40, p, 1), {});
    CHECK(!r.eq3_satisfied);
    CHECK(!r.eq4_satisfied);
    CHECK(!r.eq5_satisfied);
  }
  const TheoremReport r = theorem_report(model, Projector::identity(40), {});
  CHECK(!r.eq3_satisfied);
  CHECK(!r.eq4_satisfied);
  CHECK(!r.eq5_satisfied);
}

TEST_CASE("rho_min of one makes the general conditions unsatisfiable") {
  const UnionModel model = make_union_model(30, {3, 3}, {4, 4}, -1, 8);
  const TheoremReport r = theorem_report(model, Projector::identity(30), {});
  CHECK(r.rho_min == 1.0);
  CHECK(r.rhs_eq3 == 0.0);
  CHECK(r.rhs_eq5 == 0.0);
  CHECK(!r.eq3_satisfied);
  CHECK(!r.eq5_satisfied);
  CHECK(r.reason.find("rho_min") != std::string::npos);
  CHECK(!r.counts_ok);
}

TEST_CASE("projection below the subspace dimension is reported, not thrown") {
  const UnionModel model = make_union_model(30, {5, 5}, {40, 40}, -1, 8);
  const TheoremReport r = theorem_report(model, Projector(ProjectionKind::gaussian, 30, 3, 1), {});
  CHECK(!r.eq5_satisfied);
  CHECK(r.reason.find("condition 5") != std::string::npos);
}

TEST_CASE("condition left-hand sides are non-increasing in p") {
  double prev3 = INFINITY, prev4 = INFINITY;
  for (int p = 1; p <= 500; ++p) {
    const double l3 = ssc_condition_lhs(0.2, 5, 3, 2.0, 0.25, p);
    const double l4 = tsc_condition_lhs(0.2, 5, 0.25, p);
    CHECK(l3 <= prev3);
    CHECK(l4 <= prev4);
    prev3 = l3;
    prev4 = l4;
  }
  const UnionModel model = make_union_model(64, {4, 4, 4}, {30, 30, 30}, 1, 3);
  prev3 = prev4 = INFINITY;
  for (int p : {8, 16, 32, 64}) {
    const TheoremReport r = theorem_report(model, Projector(ProjectionKind::hadamard_sign, 64, p, 3), {});
    CHECK(r.lhs_eq3 <= prev3);
    CHECK(r.lhs_eq4 <= prev4);
    prev3 = r.lhs_eq3;
    prev4 = r.lhs_eq4;
  }
}

TEST_CASE("theorem report validates its inputs") {
  const UnionModel model = make_union_model(30, {3, 3}, {20, 20}, -1, 8);
  CHECK_THROWS_AS(theorem_report(model, Projector::identity(20), {}), DimensionError);
  CHECK_THROWS_AS(theorem_report(model, Projector::identity(30), {}, 0.0), InputError);
  CHECK_THROWS_AS(theorem_report(model, Projector::identity(30), {-1.0}), InputError);
}
