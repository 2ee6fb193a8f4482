#include "rpclust/experiment.hpp"

#include <chrono>
#include <cmath>
#include <iomanip>
#include <map>
#include <ostream>
#include <tuple>

#include "rpclust/errors.hpp"
#include "rpclust/seed.hpp"

namespace rpclust {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

std::vector<int> broadcast(const std::vector<int>& v, int L, const char* what) {
  if (static_cast<int>(v.size()) == L) return v;
  if (v.size() == 1) return std::vector<int>(L, v.front());
  throw InputError(std::string(what) + " needs 1 or L = " + std::to_string(L) + " entries");
}

}  // namespace

std::string to_string(Algorithm a) { return a == Algorithm::ssc ? "ssc" : "tsc"; }

Algorithm parse_algorithm(const std::string& name) {
  if (name == "ssc") return Algorithm::ssc;
  if (name == "tsc") return Algorithm::tsc;
  throw InputError("unknown algorithm '" + name + "'");
}

void ExperimentConfig::validate() const {
  if (m < 1 || L < 1) throw InputError("m and L must be positive");
  const auto d = broadcast(dims, L, "dims");
  const auto n = broadcast(counts, L, "counts");
  for (int v : d)
    if (v < 1 || v > m) throw DimensionError("subspace dims must lie in [1, m]");
  for (int v : n)
    if (v < 1) throw InputError("point counts must be positive");
  for (int p : p_values)
    if (p < 0 || p > m) throw DimensionError("p = " + std::to_string(p) + " outside [0, m]");
  if (repetitions < 1) throw InputError("repetitions must be >= 1");
  if (kinds.empty() || algorithms.empty() || p_values.empty())
    throw InputError("projections, algorithms and p values must be non-empty");
  if (q < 1) throw InputError("q must be >= 1");
  if (L_max < 1) throw InputError("L_max must be >= 1");
  ssc.validate();
}

UnionModel build_model(const ExperimentConfig& cfg, std::uint64_t seed) {
  cfg.validate();
  return make_union_model(cfg.m, broadcast(cfg.dims, cfg.L, "dims"), broadcast(cfg.counts, cfg.L, "counts"), cfg.t,
                          seed);
}

ClusterOutcome run_cluster(const DataSet& data, const ClusterRequest& req) {
  data.validate();
  ClusterOutcome out;
  DataSet x;
  if (req.p > 0) {
    auto t0 = Clock::now();
    const Projector proj(req.kind, data.dim(), req.p, req.projector_seed);
    x = proj.apply(data);
    out.timing.project_ms = elapsed_ms(t0);
  } else {
    x = data;
  }

  auto t1 = Clock::now();
  std::optional<Adjacency> adj;
  if (req.algorithm == Algorithm::ssc) {
    SscResult res = ssc_coefficients(x, req.ssc);
    adj.emplace(ssc_adjacency(res));
    out.ssc_diagnostics = std::move(res.diagnostics);
  } else {
    adj.emplace(tsc_adjacency(x, TscConfig{req.q}));
  }
  out.timing.adjacency_ms = elapsed_ms(t1);

  auto t2 = Clock::now();
  const int n = x.size();
  ClusteringResult cr = req.forced_L > 0
                            ? spectral_cluster(*adj, std::min(req.forced_L, n), req.spectral_seed)
                            : spectral_cluster_auto(*adj, std::min(req.L_max, n), req.spectral_seed);
  out.timing.spectral_ms = elapsed_ms(t2);

  out.labels = std::move(cr.labels);
  out.L_hat = cr.L_hat;
  out.eigenvalues = std::move(cr.eigenvalues);
  out.spectral_metadata = std::move(cr.metadata);
  if (data.labels) {
    out.ce = clustering_error(out.labels, *data.labels);
    out.false_connections = false_connections(*adj, *data.labels);
  }
  return out;
}

std::vector<SweepRow> run_sweep(const ExperimentConfig& cfg) {
  cfg.validate();
  using Key = std::tuple<int, int, int, int>;  // p, algorithm, kind, repetition
  std::map<Key, SweepRow> cells;

  for (int rep = 0; rep < cfg.repetitions; ++rep) {
    const std::uint64_t data_seed = derive_seed(cfg.seed, {static_cast<std::uint64_t>(rep)});
    std::optional<DataSet> data;
    std::string data_error;
    try {
      data = generate(build_model(cfg, data_seed));
    } catch (const std::exception& e) {
      data_error = e.what();
    }

    for (int p : cfg.p_values) {
      // p = 0 does not depend on the projector, so compute it once and fan out.
      const std::size_t kinds_to_run = p == 0 ? 1 : cfg.kinds.size();
      for (std::size_t ki = 0; ki < kinds_to_run; ++ki) {
        const ProjectionKind kind = cfg.kinds[ki];
        const std::uint64_t proj_seed = derive_seed(
            cfg.seed, {static_cast<std::uint64_t>(rep), static_cast<std::uint64_t>(p), static_cast<std::uint64_t>(kind)});
        for (Algorithm alg : cfg.algorithms) {
          SweepRow row;
          row.p = p;
          row.algorithm = alg;
          row.seed = data_seed;
          if (!data) {
            row.error = data_error;
          } else {
            ClusterRequest req;
            req.algorithm = alg;
            req.kind = kind;
            req.p = p;
            req.projector_seed = proj_seed;
            req.spectral_seed = derive_seed(proj_seed, {static_cast<std::uint64_t>(alg)});
            req.q = cfg.q;
            req.ssc = cfg.ssc;
            req.L_max = cfg.L_max;
            req.forced_L = cfg.forced_L;
            try {
              const ClusterOutcome oc = run_cluster(*data, req);
              row.ce = *oc.ce;
              row.false_connections = oc.false_connections->count;
              row.L_hat = oc.L_hat;
              row.timing = oc.timing;
            } catch (const std::exception& e) {
              row.error = e.what();
            }
          }
          const std::size_t fan = p == 0 ? cfg.kinds.size() : 1;
          for (std::size_t f = 0; f < fan; ++f) {
            SweepRow r = row;
            r.kind = p == 0 ? cfg.kinds[f] : kind;
            cells[{p, static_cast<int>(alg), static_cast<int>(r.kind), rep}] = std::move(r);
          }
        }
      }
    }
  }

  std::vector<SweepRow> rows;
  rows.reserve(cells.size());
  for (auto& [key, row] : cells) rows.push_back(std::move(row));
  return rows;
}

std::string sweep_csv_header() {
  return "p,algorithm,projection,seed,ce,false_connections,L_hat,time_project_ms,time_adjacency_ms,time_spectral_ms,"
         "error";
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << sweep_csv_header() << '\n' << std::setprecision(10);
  for (const auto& r : rows) {
    std::string err = r.error;
    for (auto& ch : err)
      if (ch == ',' || ch == '\n') ch = ';';
    os << r.p << ',' << to_string(r.algorithm) << ',' << to_string(r.kind) << ',' << r.seed << ',';
    if (r.error.empty())
      os << r.ce << ',' << r.false_connections << ',' << r.L_hat << ',' << r.timing.project_ms << ','
         << r.timing.adjacency_ms << ',' << r.timing.spectral_ms << ',';
    else
      os << ",,,,,,";
    os << err << '\n';
  }
}

void write_sweep_summary(std::ostream& os, const std::vector<SweepRow>& rows) {
  struct Acc {
    int n = 0, errors = 0;
    double ce = 0, ce2 = 0, fc = 0, lhat = 0, tp = 0, ta = 0, ts = 0;
  };
  std::map<std::tuple<int, int, int>, Acc> acc;
  for (const auto& r : rows) {
    Acc& a = acc[{r.p, static_cast<int>(r.algorithm), static_cast<int>(r.kind)}];
    if (!r.error.empty()) {
      ++a.errors;
      continue;
    }
    ++a.n;
    a.ce += r.ce;
    a.ce2 += r.ce * r.ce;
    a.fc += r.false_connections;
    a.lhat += r.L_hat;
    a.tp += r.timing.project_ms;
    a.ta += r.timing.adjacency_ms;
    a.ts += r.timing.spectral_ms;
  }
  os << "p,algorithm,projection,runs,errors,ce_mean,ce_std,false_connections_mean,L_hat_mean,time_project_ms_mean,"
        "time_adjacency_ms_mean,time_spectral_ms_mean\n"
     << std::setprecision(10);
  for (const auto& [key, a] : acc) {
    const auto [p, alg, kind] = key;
    os << p << ',' << to_string(static_cast<Algorithm>(alg)) << ',' << to_string(static_cast<ProjectionKind>(kind)) << ','
       << a.n << ',' << a.errors << ',';
    if (a.n == 0) {
      os << ",,,,,,\n";
      continue;
    }
    const double mean = a.ce / a.n;
    const double var = a.n > 1 ? std::max(0.0, (a.ce2 - a.n * mean * mean) / (a.n - 1)) : 0.0;
    os << mean << ',' << std::sqrt(var) << ',' << a.fc / a.n << ',' << a.lhat / a.n << ',' << a.tp / a.n << ','
       << a.ta / a.n << ',' << a.ts / a.n << '\n';
  }
}

std::vector<TheoremReport> run_check(const ExperimentConfig& cfg) {
  const UnionModel model = build_model(cfg, cfg.seed);
  const ProjectorCalibration cal{cfg.c_tilde};
  const ProjectionKind kind = cfg.kinds.front();
  std::vector<TheoremReport> out;
  for (int p : cfg.p_values) {
    const Projector proj = p == 0 ? Projector::identity(cfg.m)
                                  : Projector(kind, cfg.m, p,
                                              derive_seed(cfg.seed, {static_cast<std::uint64_t>(p),
                                                                     static_cast<std::uint64_t>(kind)}));
    out.push_back(theorem_report(model, proj, cal, cfg.tau, cfg.q));
  }
  return out;
}

void describe_model(std::ostream& os, const UnionModel& model) {
  os << "m=" << model.ambient_dim() << " L=" << model.num_subspaces() << " N=" << model.total_points() << '\n';
  for (int l = 0; l < model.num_subspaces(); ++l)
    os << "subspace " << l << ": d=" << model.bases[l].dim() << " n=" << model.counts[l] << '\n';
  os << std::setprecision(6);
  for (int k = 0; k < model.num_subspaces(); ++k)
    for (int l = k + 1; l < model.num_subspaces(); ++l)
      os << "aff(" << k << "," << l << ")=" << affinity(model.bases[k], model.bases[l]) << '\n';
}

void describe_dataset(std::ostream& os, const DataSet& data) {
  os << "N=" << data.size() << " D=" << data.dim() << '\n';
  if (data.labels) {
    std::map<int, int> hist;
    for (int l : *data.labels) ++hist[l];
    os << "labels:";
    for (const auto& [l, c] : hist) os << ' ' << l << ':' << c;
    os << '\n';
  }
}

}  // namespace rpclust
