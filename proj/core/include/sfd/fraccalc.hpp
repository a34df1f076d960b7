#pragma once

#include <cstddef>
#include <vector>

namespace sfd {

/// Samples of a function on the uniform grid t_i = t0 + i dt.
struct SampledFunction {
  double t0 = 0.0;
  double dt = 0.0;
  std::vector<double> values;

  double time(std::size_t i) const noexcept { return t0 + static_cast<double>(i) * dt; }
  std::size_t size() const noexcept { return values.size(); }

  /// Throws ParameterError unless dt > 0, t0 >= 0, at least two samples and
  /// every value finite.
  void validate() const;
};

/// I^order[t^mu] = coefficient * t^exponent.
struct PowerRule {
  double coefficient;
  double exponent;
};

/// Riemann-Liouville integral of a power: (Gamma(mu+1)/Gamma(mu+order+1), mu+order).
/// Throws DomainError for mu <= -1 and ParameterError for order <= 0.
PowerRule frac_integral_power(double mu, double order);

/// Caputo derivative of a power for 0 < order <= 1: t^mu -> coefficient *
/// t^(mu-order).  The derivative of a constant (mu == 0) is zero.
PowerRule caputo_derivative_power(double mu, double order);

/// I^order f on the same grid by product integration of the piecewise-linear
/// interpolant (second order for smooth f).  Requires t0 == 0, 0 < order <= 1.
SampledFunction frac_integral_grid(const SampledFunction& f, double order);

/// Caputo derivative by the L1 scheme (order 2 - order).  order == 1 falls back
/// to central differences inside and second-order one-sided differences at the
/// ends.  Requires t0 == 0, 0 < order <= 1.
SampledFunction caputo_derivative_grid(const SampledFunction& f, double order);

}  // namespace sfd
