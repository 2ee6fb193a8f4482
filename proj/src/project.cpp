#include "rpclust/project.hpp"

#include <fftw3.h>

#include <cmath>
#include <limits>
#include <mutex>
#include <numeric>
#include <sstream>

#include "rpclust/errors.hpp"
#include "rpclust/seed.hpp"

namespace rpclust {

namespace {

// The FFTW planner is not re-entrant; execution of a finished plan is.
std::mutex& fftw_planner_mutex() {
  static std::mutex mu;
  return mu;
}

std::vector<int> sample_rows(int universe, int count, Rng& rng) {
  std::vector<int> idx(universe);
  std::iota(idx.begin(), idx.end(), 0);
  for (int i = 0; i < count; ++i) {
    std::uniform_int_distribution<int> pick(i, universe - 1);
    std::swap(idx[i], idx[pick(rng)]);
  }
  idx.resize(count);
  return idx;
}

std::vector<double> sample_signs(int m, Rng& rng) {
  std::bernoulli_distribution coin(0.5);
  std::vector<double> s(m);
  for (auto& v : s) v = coin(rng) ? 1.0 : -1.0;
  return s;
}

}  // namespace

std::string to_string(ProjectionKind kind) {
  switch (kind) {
    case ProjectionKind::gaussian: return "gaussian";
    case ProjectionKind::fourier_sign: return "fourier_sign";
    case ProjectionKind::hadamard_sign: return "hadamard_sign";
  }
  return "unknown";
}

ProjectionKind parse_projection_kind(const std::string& name) {
  if (name == "gaussian" || name == "grp") return ProjectionKind::gaussian;
  if (name == "fourier_sign" || name == "frp") return ProjectionKind::fourier_sign;
  if (name == "hadamard_sign" || name == "hd") return ProjectionKind::hadamard_sign;
  throw InputError("unknown projection kind '" + name + "'");
}

int next_power_of_two(int n) {
  int k = 1;
  while (k < n) k <<= 1;
  return k;
}

void fwht(double* v, int n) {
  for (int h = 1; h < n; h <<= 1)
    for (int i = 0; i < n; i += h << 1)
      for (int j = i; j < i + h; ++j) {
        const double a = v[j];
        const double b = v[j + h];
        v[j] = a + b;
        v[j + h] = a - b;
      }
}

Projector::Projector(ProjectionKind kind, int m, int p, std::uint64_t seed)
    : kind_(kind), m_(m), p_(p), seed_(seed) {
  if (m < 1 || p < 1) throw DimensionError("projector dimensions must be positive");
  if (p > m) throw DimensionError("target dim p = " + std::to_string(p) + " exceeds source dim m = " + std::to_string(m));
  scale_ = 1.0 / std::sqrt(static_cast<double>(p));
  Rng rng(seed);
  switch (kind) {
    case ProjectionKind::gaussian: {
      transform_size_ = m;
      std::normal_distribution<double> normal(0.0, 1.0);
      dense_.resize(p, m);
      for (int j = 0; j < m; ++j)
        for (int i = 0; i < p; ++i) dense_(i, j) = scale_ * normal(rng);
      break;
    }
    case ProjectionKind::fourier_sign:
      transform_size_ = m;
      rows_ = sample_rows(m, p, rng);
      signs_ = sample_signs(m, rng);
      break;
    case ProjectionKind::hadamard_sign:
      transform_size_ = next_power_of_two(m);
      rows_ = sample_rows(transform_size_, p, rng);
      signs_ = sample_signs(m, rng);
      break;
  }
}

Projector Projector::from_matrix(Eigen::MatrixXd phi) {
  if (phi.rows() < 1 || phi.cols() < 1) throw DimensionError("override matrix must be non-empty");
  Projector pr;
  pr.kind_ = ProjectionKind::gaussian;
  pr.m_ = static_cast<int>(phi.cols());
  pr.p_ = static_cast<int>(phi.rows());
  pr.transform_size_ = pr.m_;
  pr.scale_ = 1.0;
  pr.override_ = std::move(phi);
  return pr;
}

Eigen::MatrixXd Projector::apply(const Eigen::MatrixXd& x) const {
  if (x.rows() != m_)
    throw DimensionError("projector expects dimension " + std::to_string(m_) + ", data has " +
                         std::to_string(x.rows()));
  if (override_) return *override_ * x;
  switch (kind_) {
    case ProjectionKind::gaussian: return dense_ * x;
    case ProjectionKind::fourier_sign: return apply_fourier(x);
    case ProjectionKind::hadamard_sign: return apply_hadamard(x);
  }
  return {};
}

DataSet Projector::apply(const DataSet& data) const {
  DataSet out;
  out.points = apply(data.points);
  out.labels = data.labels;
  return out;
}

Eigen::MatrixXd Projector::apply_fourier(const Eigen::MatrixXd& x) const {
  const int n = static_cast<int>(x.cols());
  Eigen::MatrixXd out(p_, n);
  if (n == 0) return out;
  const int half = m_ / 2 + 1;
  double* in = fftw_alloc_real(static_cast<std::size_t>(m_) * n);
  fftw_complex* spec = fftw_alloc_complex(static_cast<std::size_t>(half) * n);
  fftw_plan plan;
  {
    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    int len = m_;
    plan = fftw_plan_many_dft_r2c(1, &len, n, in, nullptr, 1, m_, spec, nullptr, 1, half, FFTW_ESTIMATE);
  }
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < m_; ++i) in[static_cast<std::size_t>(j) * m_ + i] = signs_[i] * x(i, j);
  fftw_execute(plan);
  // Unitary DFT (1/sqrt(m)) times sqrt(m/p) leaves 1/sqrt(p). Real parts of rows
  // k > m/2 mirror those of m - k for real input.
  std::vector<int> bins(p_);
  for (int r = 0; r < p_; ++r) bins[r] = rows_[r] < half ? rows_[r] : m_ - rows_[r];
  for (int j = 0; j < n; ++j) {
    const fftw_complex* col = spec + static_cast<std::size_t>(j) * half;
    for (int r = 0; r < p_; ++r) out(r, j) = scale_ * col[bins[r]][0];
  }
  {
    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    fftw_destroy_plan(plan);
  }
  fftw_free(spec);
  fftw_free(in);
  return out;
}

Eigen::MatrixXd Projector::apply_hadamard(const Eigen::MatrixXd& x) const {
  const int n = static_cast<int>(x.cols());
  const int big = transform_size_;
  Eigen::MatrixXd out(p_, n);
  Eigen::VectorXd buf(big);
  for (int j = 0; j < n; ++j) {
    buf.setZero();
    for (int i = 0; i < m_; ++i) buf(i) = signs_[i] * x(i, j);
    fwht(buf.data(), big);
    for (int r = 0; r < p_; ++r) out(r, j) = scale_ * buf(rows_[r]);
  }
  return out;
}

Eigen::MatrixXd Projector::materialize() const {
  return apply(Eigen::MatrixXd::Identity(m_, m_));
}

std::string Projector::record() const {
  std::ostringstream os;
  os.precision(17);
  os << "kind=" << (override_ ? std::string("explicit") : to_string(kind_)) << " m=" << m_ << " p=" << p_
     << " seed=" << seed_ << " scale=" << scale_;
  return os.str();
}

Projector Projector::from_record(const std::string& record) {
  std::istringstream is(record);
  std::string tok, kind;
  int m = -1, p = -1;
  std::uint64_t seed = 0;
  bool have_seed = false;
  while (is >> tok) {
    const auto eq = tok.find('=');
    if (eq == std::string::npos) throw InputError("malformed projector record token '" + tok + "'");
    const std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
    try {
      if (key == "kind") kind = val;
      else if (key == "m") m = std::stoi(val);
      else if (key == "p") p = std::stoi(val);
      else if (key == "seed") { seed = std::stoull(val); have_seed = true; }
    } catch (const std::logic_error&) {
      throw InputError("malformed projector record value '" + tok + "'");
    }
  }
  if (kind.empty() || m < 0 || p < 0 || !have_seed) throw InputError("incomplete projector record");
  if (kind == "explicit") throw InputError("explicit-matrix projectors cannot be rebuilt from a record");
  return Projector(parse_projection_kind(kind), m, p, seed);
}

double jl_distortion_survey(ProjectionKind kind, int m, int p, double t, int trials, std::uint64_t seed) {
  if (trials < 1) throw InputError("trials must be >= 1");
  if (!(t > 0)) throw InputError("t must be positive");
  int violations = 0;
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int k = 0; k < trials; ++k) {
    const auto ks = static_cast<std::uint64_t>(k);
    const Projector proj(kind, m, p, derive_seed(seed, {ks, 0}));
    Rng rng(derive_seed(seed, {ks, 1}));
    Eigen::VectorXd x(m);
    for (int i = 0; i < m; ++i) x(i) = normal(rng);
    x.normalize();
    const double sq = proj.apply(Eigen::MatrixXd(x)).squaredNorm();
    if (std::abs(sq - 1.0) >= t) ++violations;
  }
  return static_cast<double>(violations) / trials;
}

ProjectorCalibration calibrate_c_tilde(ProjectionKind kind, int m, int p, const std::vector<double>& ts,
                                       int trials, std::uint64_t seed) {
  ProjectorCalibration cal;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const double f = jl_distortion_survey(kind, m, p, ts[i], trials, derive_seed(seed, {i}));
    if (f > 0) best = std::min(best, -std::log(f / 2.0) / (ts[i] * ts[i] * p));
  }
  if (std::isfinite(best) && best > 0) cal.c_tilde = best;
  return cal;
}

}  // namespace rpclust
