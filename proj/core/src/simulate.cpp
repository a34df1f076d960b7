#include "sfd/simulate.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <mutex>
#include <string>

#include "sfd/errors.hpp"
#include "sfd/parallel.hpp"
#include "sfd/special.hpp"

namespace sfd {

namespace {

constexpr double kClipTolerance = 1e-6;
constexpr int kMaxEmbeddingGrowth = 8;

// The FFTW planner is not thread-safe; execution of an existing plan is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

double abs_pow(long m, double e) { return m == 0 ? 0.0 : std::pow(std::fabs(static_cast<double>(m)), e); }

}  // namespace

void NoiseSpec::validate() const {
  if (!(white_coeff >= 0.0) || !std::isfinite(white_coeff)) throw ParameterError("NoiseSpec: white_coeff must be nonnegative");
  if (!(powerlaw_coeff >= 0.0) || !std::isfinite(powerlaw_coeff)) {
    throw ParameterError("NoiseSpec: powerlaw_coeff must be nonnegative");
  }
  if (!(noise_exponent > 0.0 && noise_exponent < 1.0) && powerlaw_coeff > 0.0) {
    throw ParameterError("NoiseSpec: noise_exponent must lie in (0, 1)");
  }
  if (!(kT >= 0.0) || !std::isfinite(kT)) throw ParameterError("NoiseSpec: kT must be nonnegative");
}

NoiseSpec NoiseSpec::from_gle(const GleParams& p) {
  p.validate();
  NoiseSpec s;
  s.kT = p.kT;
  // The friction lambda1 v(t) takes the whole delta, so the symmetric noise
  // covariance needs 2 kT lambda1 to balance it.
  s.white_coeff = 2.0 * p.kT * p.lambda1;
  if (p.gamma == 1.0) {
    // t^-1 / Gamma(0) vanishes away from the origin and acts as lambda2 delta.
    s.white_coeff += 2.0 * p.kT * p.lambda2;
  } else {
    s.powerlaw_coeff = p.kT * p.lambda2;
    s.noise_exponent = p.gamma;
  }
  return s;
}

double cell_covariance(const NoiseSpec& spec, double dt, long lag) {
  if (!(dt > 0.0)) throw ParameterError("cell_covariance: dt must be positive");
  const long m = std::labs(lag);
  double c = m == 0 ? spec.white_coeff / dt : 0.0;
  if (spec.powerlaw_coeff > 0.0) {
    const double e = 2.0 - spec.noise_exponent;
    const double second_diff = abs_pow(m + 1, e) - 2.0 * abs_pow(m, e) + abs_pow(m - 1, e);
    c += spec.powerlaw_coeff * std::pow(dt, -spec.noise_exponent) * rgamma(3.0 - spec.noise_exponent) * second_diff;
  }
  return c;
}

struct NoiseSynthesizer::Plan {
  fftw_plan plan = nullptr;
};

NoiseSynthesizer::NoiseSynthesizer(const NoiseSpec& spec, double dt, std::size_t n) : n_(n) {
  spec.validate();
  if (!(dt > 0.0)) throw ParameterError("NoiseSynthesizer: dt must be positive");
  if (n < 2) throw ParameterError("NoiseSynthesizer: need at least two cells");

  std::vector<std::complex<double>> row;
  double clipped = 0.0;
  for (std::size_t half = n;; half *= 2) {
    const std::size_t m = 2 * half;
    row.assign(m, 0.0);
    for (std::size_t k = 0; k <= half; ++k) {
      const double c = cell_covariance(spec, dt, static_cast<long>(k));
      row[k] = c;
      if (k > 0 && k < half) row[m - k] = c;
    }
    {
      std::lock_guard<std::mutex> lock(planner_mutex());
      fftw_plan p = fftw_plan_dft_1d(static_cast<int>(m), reinterpret_cast<fftw_complex*>(row.data()),
                                     reinterpret_cast<fftw_complex*>(row.data()), FFTW_FORWARD, FFTW_ESTIMATE);
      fftw_execute(p);
      fftw_destroy_plan(p);
    }
    double negative = 0.0;
    double total = 0.0;
    for (const auto& v : row) {
      total += std::fabs(v.real());
      if (v.real() < 0.0) negative -= v.real();
    }
    clipped = total > 0.0 ? negative / total : 0.0;
    if (clipped <= kClipTolerance || half >= n * kMaxEmbeddingGrowth) break;
  }
  if (clipped > kClipTolerance) {
    throw SynthesisError("sample_noise: circulant embedding is not nonnegative definite (clipped fraction " +
                             std::to_string(clipped) + "); use a larger embedding or a smoother kernel",
                         clipped);
  }
  clipped_fraction_ = clipped;
  const double m = static_cast<double>(row.size());
  sqrt_eigen_.resize(row.size());
  for (std::size_t k = 0; k < row.size(); ++k) sqrt_eigen_[k] = std::sqrt(std::max(0.0, row[k].real()) / m);

  plan_ = std::make_unique<Plan>();
  std::vector<std::complex<double>> scratch(row.size());
  std::lock_guard<std::mutex> lock(planner_mutex());
  plan_->plan = fftw_plan_dft_1d(static_cast<int>(row.size()), reinterpret_cast<fftw_complex*>(scratch.data()),
                                 reinterpret_cast<fftw_complex*>(scratch.data()), FFTW_FORWARD,
                                 FFTW_ESTIMATE | FFTW_UNALIGNED);
}

NoiseSynthesizer::~NoiseSynthesizer() {
  if (plan_ && plan_->plan) {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(plan_->plan);
  }
}

void NoiseSynthesizer::generate(std::mt19937_64& rng, std::vector<double>& out) const {
  std::normal_distribution<double> normal;
  std::vector<std::complex<double>> buf(sqrt_eigen_.size());
  for (std::size_t k = 0; k < buf.size(); ++k) {
    const double re = normal(rng);
    const double im = normal(rng);
    buf[k] = {sqrt_eigen_[k] * re, sqrt_eigen_[k] * im};
  }
  fftw_execute_dft(plan_->plan, reinterpret_cast<fftw_complex*>(buf.data()), reinterpret_cast<fftw_complex*>(buf.data()));
  out.resize(n_);
  for (std::size_t i = 0; i < n_; ++i) out[i] = buf[i].real();
}

std::mt19937_64 stream_rng(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

SampledFunction sample_noise(const NoiseSpec& spec, double dt, int n, std::uint64_t seed) {
  if (n < 2) throw ParameterError("sample_noise: n must be at least 2");
  const NoiseSynthesizer synth(spec, dt, static_cast<std::size_t>(n));
  std::mt19937_64 rng = stream_rng(seed, 0);
  SampledFunction f{0.0, dt, {}};
  synth.generate(rng, f.values);
  return f;
}

TrajectoryEnsemble simulate_paths(const GleParams& p, double dt, int n_steps, int n_paths, std::uint64_t seed,
                                  const SimulateOptions& options) {
  p.validate();
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ParameterError("simulate_paths: dt must be positive");
  if (n_steps < 2) throw ParameterError("simulate_paths: n_steps must be at least 2");
  if (n_paths < 1) throw ParameterError("simulate_paths: n_paths must be positive");
  if (!(options.noise_scale >= 0.0)) throw ParameterError("simulate_paths: noise_scale must be nonnegative");

  const std::vector<double> mean = mean_displacement_grid(p, dt, n_steps);
  const std::vector<double> ig = green_integral_grid(p, dt, n_steps);
  // rw[n_steps - 1 - m] = IG((m+1) dt) - IG(m dt), reversed so the inner sum runs forward.
  std::vector<double> rw(n_steps);
  for (int m = 0; m < n_steps; ++m) rw[n_steps - 1 - m] = options.noise_scale * (ig[m + 1] - ig[m]);

  TrajectoryEnsemble e;
  e.dt = dt;
  e.n_steps = n_steps;
  e.n_paths = n_paths;
  e.seed = seed;
  e.params = p;
  e.positions.assign(static_cast<std::size_t>(n_paths) * (n_steps + 1), 0.0);

  const bool noisy = options.noise_scale > 0.0;
  std::unique_ptr<NoiseSynthesizer> synth;
  if (noisy) synth = std::make_unique<NoiseSynthesizer>(NoiseSpec::from_gle(p), dt, static_cast<std::size_t>(n_steps));

  parallel_for(
      static_cast<std::size_t>(n_paths),
      [&](std::size_t path) {
        double* x = e.positions.data() + path * (n_steps + 1);
        x[0] = p.x0;
        if (!noisy) {
          for (int i = 1; i <= n_steps; ++i) x[i] = mean[i];
          return;
        }
        std::mt19937_64 rng = stream_rng(seed, path);
        std::vector<double> xi;
        synth->generate(rng, xi);
        for (int i = 1; i <= n_steps; ++i) {
          const double* w = rw.data() + (n_steps - i);
          double acc = 0.0;
          for (int j = 0; j < i; ++j) acc += xi[j] * w[j];
          x[i] = mean[i] + acc;
        }
      },
      options.threads);
  return e;
}

MsdCurve ensemble_msd(const TrajectoryEnsemble& e) {
  if (e.n_paths < 2) throw ParameterError("ensemble_msd: need at least two paths");
  MsdCurve c;
  c.model_tag = "simulate";
  c.times.resize(e.n_steps);
  c.values.resize(e.n_steps);
  c.stderr_values.resize(e.n_steps);
  const double x0 = e.params.x0;
  const double n = e.n_paths;
  for (int i = 1; i <= e.n_steps; ++i) {
    // Welford keeps the spread accurate when all paths nearly coincide.
    double m = 0.0;
    double s = 0.0;
    for (int k = 0; k < e.n_paths; ++k) {
      const double d = e.at(k, i) - x0;
      const double y = d * d;
      const double delta = y - m;
      m += delta / (k + 1);
      s += delta * (y - m);
    }
    c.times[i - 1] = i * e.dt;
    c.values[i - 1] = m;
    c.stderr_values[i - 1] = std::sqrt(std::max(0.0, s / (n - 1.0)) / n);
  }
  return c;
}

}  // namespace sfd
