#include <doctest.h>

#include <cmath>
#include <functional>
#include <initializer_list>

#include "sfd/fraccalc.hpp"
#include "sfd/special.hpp"

using namespace sfd;

namespace {

SampledFunction sample(const std::function<double(double)>& f, double dt, int n) {
  SampledFunction s{0.0, dt, std::vector<double>(n + 1)};
  for (int i = 0; i <= n; ++i) s.values[i] = f(i * dt);
  return s;
}

double smooth(double t) { return std::sin(2.0 * t) + t * t; }

}  // namespace

TEST_CASE("semigroup I^a I^b = I^(a+b)") {
  const SampledFunction f = sample(smooth, 1e-3, 1000);
  for (double a : {0.25, 0.5}) {
    for (double b : {0.25, 0.5}) {
      const SampledFunction two_step = frac_integral_grid(frac_integral_grid(f, a), b);
      const SampledFunction one_step = frac_integral_grid(f, a + b);
      double worst = 0.0;
      for (std::size_t i = 0; i < f.size(); ++i) worst = std::max(worst, std::fabs(two_step.values[i] - one_step.values[i]));
      CAPTURE(a);
      CAPTURE(b);
      CHECK(worst <= 1e-5);
    }
  }
}

TEST_CASE("Caputo derivative is a left inverse of the integral") {
  // f(0) = f'(0) = 0: with f'(0) != 0, I^a f ~ t^(1+a) and the L1 error at the
  // first grid points decays only like dt^a.
  struct Case {
    double (*f)(double);
    double dt;
  };
  const Case cases[] = {{[](double t) { return t * t * std::exp(-t); }, 1e-3},
                        {[](double t) { return 1.0 - std::cos(2.0 * t); }, 5e-4}};
  for (const Case& c : cases) {
    const SampledFunction f = sample(c.f, c.dt, static_cast<int>(std::lround(1.0 / c.dt)));
    for (double a : {0.25, 0.5, 0.75}) {
      const SampledFunction back = caputo_derivative_grid(frac_integral_grid(f, a), a);
      double worst = 0.0;
      for (std::size_t i = 1; i + 1 < f.size(); ++i) worst = std::max(worst, std::fabs(back.values[i] - f.values[i]));
      CAPTURE(a);
      CAPTURE(c.dt);
      CHECK(worst <= 1e-4);
    }
  }
}

TEST_CASE("convergence orders against power-rule oracles") {
  // I^a t^2 = 2 t^(2+a) / Gamma(3+a); D^a t^2 = 2 t^(2-a) / Gamma(3-a).
  for (double a : {0.3, 0.5, 0.8}) {
    auto integral_error = [a](int n) {
      const SampledFunction f = sample([](double t) { return t * t + t; }, 1.0 / n, n);
      const SampledFunction g = frac_integral_grid(f, a);
      double worst = 0.0;
      for (std::size_t i = 0; i < g.size(); ++i) {
        const double t = g.time(i);
        const double exact = 2.0 * std::pow(t, 2.0 + a) * rgamma(3.0 + a) + std::pow(t, 1.0 + a) * rgamma(2.0 + a);
        worst = std::max(worst, std::fabs(g.values[i] - exact));
      }
      return worst;
    };
    auto derivative_error = [a](int n) {
      const SampledFunction f = sample([](double t) { return t * t; }, 1.0 / n, n);
      const SampledFunction g = caputo_derivative_grid(f, a);
      double worst = 0.0;
      for (std::size_t i = 0; i < g.size(); ++i) {
        const double exact = 2.0 * std::pow(g.time(i), 2.0 - a) * rgamma(3.0 - a);
        worst = std::max(worst, std::fabs(g.values[i] - exact));
      }
      return worst;
    };
    CAPTURE(a);
    CHECK(integral_error(200) / integral_error(400) >= 3.5);
    CHECK(derivative_error(200) / derivative_error(400) >= 0.9 * std::pow(2.0, 2.0 - a));
  }
}
