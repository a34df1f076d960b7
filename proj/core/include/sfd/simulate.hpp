#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <vector>

#include "sfd/fraccalc.hpp"
#include "sfd/gle.hpp"
#include "sfd/msd_models.hpp"

namespace sfd {

/// Stationary Gaussian noise with covariance
///   C(t) = white_coeff delta(t) + powerlaw_coeff t^-noise_exponent / Gamma(1 - noise_exponent).
struct NoiseSpec {
  double white_coeff = 0.0;
  double powerlaw_coeff = 0.0;
  double noise_exponent = 0.5;
  double kT = 1.0;

  void validate() const;
  /// FDT noise of a GLE: white 2 kT lambda1, power law kT lambda2, exponent gamma.
  static NoiseSpec from_gle(const GleParams& p);
};

/// Covariance of the cell averages of the noise over [0, dt) and
/// [lag dt, (lag+1) dt).  The power law is integrated exactly over the cell
/// pair; the white part contributes white_coeff / dt at lag 0.
double cell_covariance(const NoiseSpec& spec, double dt, long lag);

/// Circulant-embedding sampler for n consecutive noise cells.  The spectrum
/// is computed once; generate() is safe to call concurrently.
class NoiseSynthesizer {
 public:
  /// Throws SynthesisError when negative eigenvalues carry more than 1e-6 of
  /// the spectral mass even after enlarging the embedding eightfold.
  NoiseSynthesizer(const NoiseSpec& spec, double dt, std::size_t n);
  ~NoiseSynthesizer();
  NoiseSynthesizer(const NoiseSynthesizer&) = delete;
  NoiseSynthesizer& operator=(const NoiseSynthesizer&) = delete;

  std::size_t size() const noexcept { return n_; }
  std::size_t embedding_size() const noexcept { return sqrt_eigen_.size(); }
  /// Negative spectral mass removed by clipping, relative to the total.
  double clipped_fraction() const noexcept { return clipped_fraction_; }
  /// Fills out (resized to size()) with one realisation.
  void generate(std::mt19937_64& rng, std::vector<double>& out) const;

 private:
  struct Plan;
  std::size_t n_;
  std::vector<double> sqrt_eigen_;
  double clipped_fraction_ = 0.0;
  std::unique_ptr<Plan> plan_;
};

/// RNG for stream `index` of master seed `seed`; independent of scheduling.
std::mt19937_64 stream_rng(std::uint64_t seed, std::uint64_t index);

/// n noise cells starting at t0 = 0, drawn from stream 0 of `seed`.
SampledFunction sample_noise(const NoiseSpec& spec, double dt, int n, std::uint64_t seed);

struct TrajectoryEnsemble {
  double dt = 0.0;
  int n_steps = 0;
  int n_paths = 0;
  std::vector<double> positions;  ///< row-major, n_paths x (n_steps + 1)
  std::uint64_t seed = 0;
  GleParams params;

  double at(int path, int step) const {
    return positions[static_cast<std::size_t>(path) * (n_steps + 1) + step];
  }
};

struct SimulateOptions {
  /// Multiplies the noise; 0 gives the deterministic mean path.
  double noise_scale = 1.0;
  /// Worker threads; 0 means worker_count().
  unsigned threads = 0;
};

/// Paths x_i = x_mean(t_i) + sum_{j<i} xi_j [IG((i-j) dt) - IG((i-j-1) dt)],
/// with IG = int_0^t G and xi_j the noise cell averages of path j's stream.
TrajectoryEnsemble simulate_paths(const GleParams& p, double dt, int n_steps, int n_paths, std::uint64_t seed,
                                  const SimulateOptions& options = {});

/// Sample mean of (x - x0)^2 at t = dt .. n_steps dt with standard errors.
MsdCurve ensemble_msd(const TrajectoryEnsemble& e);

}  // namespace sfd
