#include <doctest.h>

#include <cmath>
#include <vector>

#include "sfd/gle.hpp"
#include "sfd/simulate.hpp"

using namespace sfd;

namespace {

// Fraction of grid points within 3 standard errors of gle::msd.
double agreement(const GleParams& p, double dt, int steps, int paths, std::uint64_t seed, int every) {
  const MsdCurve m = ensemble_msd(simulate_paths(p, dt, steps, paths, seed));
  int ok = 0;
  int total = 0;
  for (std::size_t i = every - 1; i < m.times.size(); i += every) {
    ++total;
    if (std::fabs(m.values[i] - msd(p, m.times[i])) <= 3.0 * m.stderr_values[i]) ++ok;
  }
  return static_cast<double>(ok) / total;
}

}  // namespace

TEST_CASE("ensemble MSD matches the analytic MSD") {
  GleParams od;
  od.overdamped = true;
  od.lambda1 = 1.0;
  od.lambda2 = 1.0;
  od.gamma = 0.5;
  CHECK(agreement(od, 0.05, 200, 4000, 21, 10) >= 0.95);

  GleParams free_kernel;
  free_kernel.alpha = 0.5;
  free_kernel.gamma = 0.5;
  free_kernel.force_amp = 0.3;
  free_kernel.kappa = 0.5;
  CHECK(agreement(free_kernel, 0.05, 200, 4000, 22, 10) >= 0.95);

  GleParams both = free_kernel;
  both.lambda1 = 0.2;
  CHECK(agreement(both, 0.05, 200, 4000, 23, 10) >= 0.95);
}

TEST_CASE("positions are Gaussian at a fixed time") {
  GleParams p;
  p.alpha = 0.75;
  p.gamma = 0.5;
  const int n = 10000;
  const TrajectoryEnsemble e = simulate_paths(p, 0.05, 100, n, 5);
  for (int step : {10, 100}) {
    double mean = 0.0;
    for (int i = 0; i < n; ++i) mean += e.at(i, step);
    mean /= n;
    double m2 = 0.0;
    double m3 = 0.0;
    for (int i = 0; i < n; ++i) {
      const double d = e.at(i, step) - mean;
      m2 += d * d;
      m3 += d * d * d;
    }
    m2 /= n;
    m3 /= n;
    const double skew = m3 / std::pow(m2, 1.5);
    CAPTURE(step);
    CHECK(std::fabs(skew) <= 4.0 * std::sqrt(6.0 / n));
  }
}
