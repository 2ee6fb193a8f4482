// rpclust: subspace clustering of randomly projected data.
//
//   rpclust gen     --m 100 --L 2 --d 5 --n 50 --out data.csv --labels-out labels.csv
//   rpclust cluster --data data.csv --labels labels.csv --algorithm tsc --projection gaussian --p 20
//   rpclust sweep   --p 0,8,16,32 --projections gaussian,fourier_sign --reps 20 --out sweep.csv
//   rpclust check   --p 10,50,100 --out report.csv
//   rpclust ingest  --matrix faces.csv --normalize --out data.csv

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "rpclust/dataset_io.hpp"
#include "rpclust/errors.hpp"
#include "rpclust/experiment.hpp"

using namespace rpclust;

namespace {

struct ModelFlags {
  int m = 100;
  int L = 2;
  std::vector<int> d{5};
  std::vector<int> n{50};
  int t = -1;
  std::uint64_t seed = 1;
};

void add_model_flags(CLI::App* app, ModelFlags& f) {
  app->add_option("--m", f.m, "ambient dimension")->capture_default_str();
  app->add_option("--L", f.L, "number of subspaces")->capture_default_str();
  app->add_option("--d", f.d, "subspace dimension(s), one value or L values")->delimiter(',')->capture_default_str();
  app->add_option("--n", f.n, "points per subspace, one value or L values")->delimiter(',')->capture_default_str();
  app->add_option("--t", f.t, "shared intersection dimension (negative: independent random bases)")
      ->capture_default_str();
  app->add_option("--seed", f.seed, "master seed")->capture_default_str();
}

struct SscFlags {
  std::string mode = "lasso_admm";
  double alpha = 20.0;
  double rho = 20.0;
  int max_iter = 200;
  double tol = 1e-6;
};

void add_ssc_flags(CLI::App* app, SscFlags& f) {
  app->add_option("--ssc-mode", f.mode, "exact_l1 | lasso_admm")->capture_default_str();
  app->add_option("--alpha", f.alpha, "Lasso weight multiplier")->capture_default_str();
  app->add_option("--admm-rho", f.rho, "ADMM penalty")->capture_default_str();
  app->add_option("--max-iter", f.max_iter, "ADMM iteration cap")->capture_default_str();
  app->add_option("--tol", f.tol, "ADMM absolute and relative tolerance")->capture_default_str();
}

SscConfig to_ssc(const SscFlags& f) {
  SscConfig c;
  c.mode = parse_ssc_mode(f.mode);
  c.alpha = f.alpha;
  c.admm_rho = f.rho;
  c.max_iter = f.max_iter;
  c.tol_abs = c.tol_rel = f.tol;
  return c;
}

ExperimentConfig to_config(const ModelFlags& f) {
  ExperimentConfig c;
  c.m = f.m;
  c.L = f.L;
  c.dims = f.d;
  c.counts = f.n;
  c.t = f.t;
  c.seed = f.seed;
  return c;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path + " for writing");
  return os;
}

int fail(const std::string& type, const std::string& msg, long row = -1, long column = -1) {
  std::cerr << "rpclust: error: type=" << type;
  if (row >= 0) std::cerr << " row=" << row;
  if (column >= 0) std::cerr << " column=" << column;
  std::cerr << " message=\"" << msg << "\"\n";
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Subspace clustering (SSC / TSC) of randomly projected data"};
  app.set_config("--config", "", "read flags from a TOML/INI file");
  app.require_subcommand(1);

  // gen
  ModelFlags gen_model;
  std::string gen_out = "data.csv", gen_labels = "labels.csv";
  auto* gen = app.add_subcommand("gen", "generate union-of-subspaces data");
  add_model_flags(gen, gen_model);
  gen->add_option("--out", gen_out, "data CSV (one point per row)")->capture_default_str();
  gen->add_option("--labels-out", gen_labels, "labels file")->capture_default_str();

  // cluster
  std::string cl_data, cl_labels, cl_out = "pred.csv", cl_timing, cl_adjacency, cl_diag, cl_eigs;
  std::string cl_alg = "tsc", cl_proj = "gaussian";
  int cl_p = 0, cl_q = 4, cl_L = 0, cl_Lmax = 10;
  std::uint64_t cl_seed = 1;
  SscFlags cl_ssc;
  auto* cluster = app.add_subcommand("cluster", "project, cluster and evaluate a data file");
  cluster->add_option("--data", cl_data, "data CSV")->required();
  cluster->add_option("--labels", cl_labels, "ground-truth labels (optional)");
  cluster->add_option("--algorithm", cl_alg, "ssc | tsc")->capture_default_str();
  cluster->add_option("--projection", cl_proj, "gaussian | fourier_sign | hadamard_sign")->capture_default_str();
  cluster->add_option("--p", cl_p, "target dimension, 0 = no projection")->capture_default_str();
  cluster->add_option("--seed", cl_seed, "seed")->capture_default_str();
  cluster->add_option("--q", cl_q, "TSC neighbors")->capture_default_str();
  cluster->add_option("--L", cl_L, "force the number of clusters (0 = eigengap)")->capture_default_str();
  cluster->add_option("--L-max", cl_Lmax, "largest cluster count considered by the eigengap")->capture_default_str();
  cluster->add_option("--out", cl_out, "predicted labels file")->capture_default_str();
  cluster->add_option("--timing", cl_timing, "append a timing CSV row here");
  cluster->add_option("--adjacency-out", cl_adjacency, "dense adjacency CSV");
  cluster->add_option("--diagnostics-out", cl_diag, "SSC per-column solver log");
  cluster->add_option("--eigenvalues-out", cl_eigs, "smallest Laplacian eigenvalues");
  add_ssc_flags(cluster, cl_ssc);

  // sweep
  ModelFlags sw_model;
  std::vector<std::string> sw_proj{"gaussian", "fourier_sign"}, sw_alg{"ssc", "tsc"};
  std::vector<int> sw_p{0, 8, 16, 32, 64};
  int sw_reps = 1, sw_q = 4, sw_L = 0, sw_Lmax = 10;
  std::string sw_out = "sweep.csv", sw_summary;
  SscFlags sw_ssc;
  auto* sweep = app.add_subcommand("sweep", "CE and running time as a function of p");
  add_model_flags(sweep, sw_model);
  sweep->add_option("--projections", sw_proj, "projection kinds")->delimiter(',')->capture_default_str();
  sweep->add_option("--algorithms", sw_alg, "ssc,tsc")->delimiter(',')->capture_default_str();
  sweep->add_option("--p", sw_p, "target dimensions (0 = no projection)")->delimiter(',')->capture_default_str();
  sweep->add_option("--reps", sw_reps, "repetitions per cell")->capture_default_str();
  sweep->add_option("--q", sw_q, "TSC neighbors")->capture_default_str();
  sweep->add_option("--L-force", sw_L, "force the number of clusters (0 = eigengap)")->capture_default_str();
  sweep->add_option("--L-max", sw_Lmax, "largest cluster count considered by the eigengap")->capture_default_str();
  sweep->add_option("--out", sw_out, "per-run CSV")->capture_default_str();
  sweep->add_option("--summary", sw_summary, "per-cell mean/std CSV");
  add_ssc_flags(sweep, sw_ssc);

  // check
  ModelFlags ck_model;
  std::vector<int> ck_p{0};
  std::string ck_proj = "gaussian", ck_out = "report.csv";
  double ck_c = 0.25, ck_tau = 2.0;
  int ck_q = 4;
  bool ck_calibrate = false, ck_kv = false;
  auto* check = app.add_subcommand("check", "evaluate the no-false-connection conditions");
  add_model_flags(check, ck_model);
  check->add_option("--p", ck_p, "target dimensions (0 = identity)")->delimiter(',')->capture_default_str();
  check->add_option("--projection", ck_proj, "projection kind")->capture_default_str();
  check->add_option("--c-tilde", ck_c, "JL concentration constant")->capture_default_str();
  check->add_flag("--calibrate", ck_calibrate, "estimate c-tilde per p from a distortion survey");
  check->add_option("--tau", ck_tau, "tau > 0")->capture_default_str();
  check->add_option("--q", ck_q, "TSC neighbors")->capture_default_str();
  check->add_option("--out", ck_out, "report CSV")->capture_default_str();
  check->add_flag("--key-value", ck_kv, "also print key=value records to stdout");

  // ingest
  std::string in_matrix, in_labels, in_out, in_labels_out;
  bool in_normalize = false;
  auto* ingest = app.add_subcommand("ingest", "load an external matrix (one point per row)");
  ingest->add_option("--matrix", in_matrix, "numeric CSV")->required();
  ingest->add_option("--labels", in_labels, "labels file");
  ingest->add_flag("--normalize", in_normalize, "rescale every point to unit norm");
  ingest->add_option("--out", in_out, "write the (normalized) data here");
  ingest->add_option("--labels-out", in_labels_out, "copy labels here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    return fail("UsageError", e.what());
  }

  try {
    if (*gen) {
      const ExperimentConfig cfg = to_config(gen_model);
      const UnionModel model = build_model(cfg, cfg.seed);
      const DataSet data = generate(model);
      save_dataset(data, gen_out, gen_labels);
      describe_model(std::cout, model);
    } else if (*cluster) {
      DataSet data = load_dataset(cl_data, cl_labels);
      ClusterRequest req;
      req.algorithm = parse_algorithm(cl_alg);
      req.kind = parse_projection_kind(cl_proj);
      req.p = cl_p;
      req.projector_seed = cl_seed;
      req.spectral_seed = cl_seed + 1;
      req.q = cl_q;
      req.ssc = to_ssc(cl_ssc);
      req.L_max = cl_Lmax;
      req.forced_L = cl_L;
      if (cl_p > data.dim()) throw DimensionError("p exceeds the data dimension");
      const ClusterOutcome oc = run_cluster(data, req);
      write_labels(cl_out, oc.labels);
      if (!cl_timing.empty()) {
        std::ifstream probe(cl_timing);
        const bool fresh = !probe || probe.peek() == std::ifstream::traits_type::eof();
        probe.close();
        std::ofstream os(cl_timing, std::ios::app);
        if (fresh) os << "algorithm,projection,p,seed,L_hat,time_project_ms,time_adjacency_ms,time_spectral_ms\n";
        os << cl_alg << ',' << cl_proj << ',' << cl_p << ',' << cl_seed << ',' << oc.L_hat << ','
           << oc.timing.project_ms << ',' << oc.timing.adjacency_ms << ',' << oc.timing.spectral_ms << '\n';
      }
      if (!cl_eigs.empty()) write_matrix_csv(cl_eigs, oc.eigenvalues);
      if (!cl_diag.empty() && req.algorithm == Algorithm::ssc) write_diagnostics_csv(cl_diag, oc.ssc_diagnostics);
      if (!cl_adjacency.empty()) {
        DataSet x = data;
        if (cl_p > 0) x = Projector(req.kind, data.dim(), cl_p, cl_seed).apply(data);
        const Adjacency a = req.algorithm == Algorithm::ssc ? ssc_adjacency(x, req.ssc) : tsc_adjacency(x, {cl_q});
        a.write_csv(cl_adjacency);
      }
      std::cout << "L_hat=" << oc.L_hat;
      if (oc.ce) std::cout << " ce=" << *oc.ce << " false_connections=" << oc.false_connections->count;
      std::cout << " time_project_ms=" << oc.timing.project_ms << " time_adjacency_ms=" << oc.timing.adjacency_ms
                << " time_spectral_ms=" << oc.timing.spectral_ms << '\n';
      for (const auto& d : oc.ssc_diagnostics)
        if (!d.converged || !d.feasible) std::cerr << "warning: column " << d.column << ": " << d.message << '\n';
    } else if (*sweep) {
      ExperimentConfig cfg = to_config(sw_model);
      cfg.kinds.clear();
      for (const auto& k : sw_proj) cfg.kinds.push_back(parse_projection_kind(k));
      cfg.algorithms.clear();
      for (const auto& a : sw_alg) cfg.algorithms.push_back(parse_algorithm(a));
      cfg.p_values = sw_p;
      cfg.repetitions = sw_reps;
      cfg.q = sw_q;
      cfg.forced_L = sw_L;
      cfg.L_max = sw_Lmax;
      cfg.ssc = to_ssc(sw_ssc);
      const auto rows = run_sweep(cfg);
      auto os = open_out(sw_out);
      write_sweep_csv(os, rows);
      if (!sw_summary.empty()) {
        auto ss = open_out(sw_summary);
        write_sweep_summary(ss, rows);
      }
      std::cout << "wrote " << rows.size() << " rows to " << sw_out << '\n';
    } else if (*check) {
      ExperimentConfig cfg = to_config(ck_model);
      cfg.kinds = {parse_projection_kind(ck_proj)};
      cfg.p_values = ck_p;
      cfg.c_tilde = ck_c;
      cfg.tau = ck_tau;
      cfg.q = ck_q;
      std::vector<TheoremReport> reports;
      if (ck_calibrate) {
        for (int p : ck_p) {
          ExperimentConfig one = cfg;
          one.p_values = {p};
          if (p > 0)
            one.c_tilde = calibrate_c_tilde(cfg.kinds.front(), cfg.m, p, {0.25, 0.5, 0.75}, 500, cfg.seed).c_tilde;
          reports.push_back(run_check(one).front());
        }
      } else {
        reports = run_check(cfg);
      }
      auto os = open_out(ck_out);
      os << TheoremReport::csv_header() << '\n';
      for (const auto& r : reports) {
        os << r.csv_row() << '\n';
        if (ck_kv) std::cout << r.to_key_value() << '\n';
        else
          std::cout << "p=" << r.p << " eq3=" << r.eq3_satisfied << " eq4=" << r.eq4_satisfied
                    << " eq5=" << r.eq5_satisfied << (r.reason.empty() ? "" : " reason=\"" + r.reason + "\"") << '\n';
      }
    } else if (*ingest) {
      DataSet data = load_dataset(in_matrix, in_labels);
      if (in_normalize) normalize_columns(data);
      describe_dataset(std::cout, data);
      if (!in_out.empty()) save_dataset(data, in_out, in_labels_out);
    }
  } catch (const ParseError& e) {
    return fail("ParseError", e.what(), e.row(), e.column());
  } catch (const DimensionError& e) {
    return fail("DimensionError", e.what());
  } catch (const InputError& e) {
    return fail("InputError", e.what());
  } catch (const RankError& e) {
    return fail("RankError", e.what());
  } catch (const NumericError& e) {
    return fail("NumericError", e.what());
  } catch (const std::exception& e) {
    return fail("Error", e.what());
  }
  return 0;
}
