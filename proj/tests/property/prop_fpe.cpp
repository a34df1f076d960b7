#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <numbers>
#include <vector>

#include "sfd/fpe.hpp"

using namespace sfd;

namespace {

const std::vector<double> kTimes{0.1, 1.0, 10.0, 100.0};

// Max-norm distance to the Gaussian of variance sigma0^2 + 2 s(t).
double time_change_error(const FpeSolution& sol, double D0, double F, DiffusionVariant v) {
  double worst = 0.0;
  for (std::size_t k = 0; k < sol.t_grid.size(); ++k) {
    const double var = sol.sigma0 * sol.sigma0 + 2.0 * integrated_diffusion(D0, F, sol.t_grid[k], v);
    for (std::size_t i = 0; i < sol.x_grid.size(); ++i) {
      const double x = sol.x_grid[i];
      const double g = std::exp(-x * x / (2.0 * var)) / std::sqrt(2.0 * std::numbers::pi * var);
      worst = std::max(worst, std::fabs(sol.density[k][i] - g));
    }
  }
  return worst;
}

}  // namespace

TEST_CASE("mass, positivity and the time-change identity") {
  for (auto v : {DiffusionVariant::paper, DiffusionVariant::matched}) {
    FpeOptions o;
    o.sigma0 = 1.0;
    const FpeSolution sol = solve_fpe(1.0, 1.0, 50.0, 2001, kTimes, v, o);
    CAPTURE(to_string(v));
    for (double m : sol.mass) CHECK(std::fabs(m - sol.mass.front()) <= 1e-8 * sol.mass.front());
    CHECK(std::fabs(sol.mass.front() - 1.0) <= 1e-8);
    for (const auto& w : sol.density) CHECK(*std::min_element(w.begin(), w.end()) >= -1e-12);
    CHECK(time_change_error(sol, 1.0, 1.0, v) <= 1e-4);
  }
}

TEST_CASE("second-order convergence in space and time") {
  FpeOptions coarse;
  coarse.sigma0 = 1.0;
  coarse.step_fraction = 0.04;
  FpeOptions fine = coarse;
  fine.step_fraction = 0.02;
  const auto v = DiffusionVariant::matched;
  const std::vector<double> times{0.1, 1.0, 10.0};
  const double e1 = time_change_error(solve_fpe(1.0, 1.0, 30.0, 201, times, v, coarse), 1.0, 1.0, v);
  const double e2 = time_change_error(solve_fpe(1.0, 1.0, 30.0, 401, times, v, fine), 1.0, 1.0, v);
  MESSAGE("errors " << e1 << " -> " << e2);
  CHECK(e1 / e2 >= 3.0);
  CHECK(e1 / e2 <= 5.0);
}
