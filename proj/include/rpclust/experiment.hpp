#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rpclust/metrics.hpp"
#include "rpclust/project.hpp"
#include "rpclust/spectral.hpp"
#include "rpclust/ssc.hpp"
#include "rpclust/synth.hpp"
#include "rpclust/tsc.hpp"

namespace rpclust {

enum class Algorithm { ssc, tsc };
std::string to_string(Algorithm a);
Algorithm parse_algorithm(const std::string& name);

/// Sweep variables of a generate -> project -> cluster -> evaluate experiment.
struct ExperimentConfig {
  int m = 100;
  int L = 2;
  /// One entry per subspace, or a single entry broadcast to all L.
  std::vector<int> dims{5};
  std::vector<int> counts{50};
  /// Shared intersection dimension; negative draws independent Haar bases.
  int t = -1;
  std::uint64_t seed = 1;

  std::vector<ProjectionKind> kinds{ProjectionKind::gaussian};
  /// Target dimensions; 0 means "no projection".
  std::vector<int> p_values{0};
  std::vector<Algorithm> algorithms{Algorithm::ssc, Algorithm::tsc};
  int q = 4;
  SscConfig ssc{};
  int repetitions = 1;
  int L_max = 10;
  /// Forces L_hat when positive; otherwise the eigengap estimate is used.
  int forced_L = 0;

  // theorem checks
  double tau = 2.0;
  double c_tilde = 0.25;

  void validate() const;
};

UnionModel build_model(const ExperimentConfig& cfg, std::uint64_t seed);

struct Timing {
  double project_ms = 0.0;
  double adjacency_ms = 0.0;
  double spectral_ms = 0.0;
};

struct ClusterOutcome {
  std::vector<int> labels;
  int L_hat = 0;
  Timing timing;
  Eigen::VectorXd eigenvalues;
  std::optional<double> ce;
  std::optional<FalseConnectionReport> false_connections;
  std::vector<ColumnDiagnostics> ssc_diagnostics;
  std::string spectral_metadata;
};

struct ClusterRequest {
  Algorithm algorithm = Algorithm::tsc;
  ProjectionKind kind = ProjectionKind::gaussian;
  int p = 0;  // 0: no projection
  std::uint64_t projector_seed = 0;
  std::uint64_t spectral_seed = 0;
  int q = 4;
  SscConfig ssc{};
  int L_max = 10;
  int forced_L = 0;
};

/// Projects (unless p = 0), builds the adjacency, and runs spectral clustering.
/// CE and false connections are filled in when the data carries labels.
ClusterOutcome run_cluster(const DataSet& data, const ClusterRequest& req);

struct SweepRow {
  int p = 0;
  Algorithm algorithm = Algorithm::tsc;
  ProjectionKind kind = ProjectionKind::gaussian;
  std::uint64_t seed = 0;
  double ce = 0.0;
  long false_connections = 0;
  int L_hat = 0;
  Timing timing;
  std::string error;
};

/// One row per (p, algorithm, projection, repetition), ordered in that order.
/// The data instance of repetition r is shared across all cells; each
/// (r, p, kind) gets its own projector realization. p = 0 is computed once
/// per repetition and reported under every projection kind.
std::vector<SweepRow> run_sweep(const ExperimentConfig& cfg);

std::string sweep_csv_header();
void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);
/// Mean/std of CE and mean timings per (p, algorithm, projection) cell.
void write_sweep_summary(std::ostream& os, const std::vector<SweepRow>& rows);

/// One theorem report per p (p = 0 evaluates the identity map, p = m).
std::vector<TheoremReport> run_check(const ExperimentConfig& cfg);

/// Pairwise affinities and point counts of a model, for printing.
void describe_model(std::ostream& os, const UnionModel& model);

/// Label histogram, N and D.
void describe_dataset(std::ostream& os, const DataSet& data);

}  // namespace rpclust
