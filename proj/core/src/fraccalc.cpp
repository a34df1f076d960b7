#include "sfd/fraccalc.hpp"

#include <cmath>
#include <string>

#include "sfd/errors.hpp"
#include "sfd/special.hpp"

namespace sfd {

namespace {

void require_order(double order, const char* op) {
  if (!(order > 0.0) || order > 1.0) {
    throw ParameterError(std::string(op) + ": order must lie in (0, 1], got " + std::to_string(order));
  }
}

void require_origin(const SampledFunction& f, const char* op) {
  f.validate();
  if (f.t0 != 0.0) throw ParameterError(std::string(op) + ": grid must start at t = 0");
}

}  // namespace

void SampledFunction::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ParameterError("SampledFunction: dt must be positive");
  if (!(t0 >= 0.0) || !std::isfinite(t0)) throw ParameterError("SampledFunction: t0 must be nonnegative");
  if (values.size() < 2) throw ParameterError("SampledFunction: at least two samples are required");
  for (double v : values) {
    if (!std::isfinite(v)) throw ParameterError("SampledFunction: values must be finite");
  }
}

PowerRule frac_integral_power(double mu, double order) {
  if (!(mu > -1.0)) throw DomainError("frac_integral_power: mu must exceed -1, got " + std::to_string(mu));
  if (!(order > 0.0)) throw ParameterError("frac_integral_power: order must be positive");
  return {std::exp(std::lgamma(mu + 1.0) - std::lgamma(mu + order + 1.0)), mu + order};
}

PowerRule caputo_derivative_power(double mu, double order) {
  require_order(order, "caputo_derivative_power");
  if (mu == 0.0) return {0.0, -order};
  if (!(mu > 0.0)) throw DomainError("caputo_derivative_power: mu must be positive");
  return {gamma_fn(mu + 1.0) * rgamma(mu + 1.0 - order), mu - order};
}

SampledFunction frac_integral_grid(const SampledFunction& f, double order) {
  require_origin(f, "frac_integral_grid");
  require_order(order, "frac_integral_grid");
  const std::size_t n_pts = f.size();
  const double a = order;
  const double a1 = a + 1.0;

  // pw[k] = k^(a+1); the interior weight for lag k is pw[k+1] - 2 pw[k] + pw[k-1].
  std::vector<double> pw(n_pts + 1);
  for (std::size_t k = 0; k <= n_pts; ++k) pw[k] = std::pow(static_cast<double>(k), a1);

  const double scale = std::pow(f.dt, a) * rgamma(a + 2.0);
  SampledFunction out{f.t0, f.dt, std::vector<double>(n_pts, 0.0)};
  for (std::size_t n = 1; n < n_pts; ++n) {
    const double dn = static_cast<double>(n);
    double acc = (pw[n - 1] - (dn - 1.0 - a) * std::pow(dn, a)) * f.values[0];
    for (std::size_t j = 1; j < n; ++j) {
      const std::size_t k = n - j;
      acc += (pw[k + 1] - 2.0 * pw[k] + pw[k - 1]) * f.values[j];
    }
    acc += f.values[n];
    out.values[n] = scale * acc;
  }
  return out;
}

SampledFunction caputo_derivative_grid(const SampledFunction& f, double order) {
  require_origin(f, "caputo_derivative_grid");
  require_order(order, "caputo_derivative_grid");
  const std::size_t n_pts = f.size();
  const auto& v = f.values;
  SampledFunction out{f.t0, f.dt, std::vector<double>(n_pts, 0.0)};

  if (order == 1.0) {
    const double h = f.dt;
    if (n_pts == 2) {
      out.values[0] = out.values[1] = (v[1] - v[0]) / h;
      return out;
    }
    out.values[0] = (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * h);
    for (std::size_t i = 1; i + 1 < n_pts; ++i) out.values[i] = (v[i + 1] - v[i - 1]) / (2.0 * h);
    const std::size_t m = n_pts - 1;
    out.values[m] = (3.0 * v[m] - 4.0 * v[m - 1] + v[m - 2]) / (2.0 * h);
    return out;
  }

  const double e = 1.0 - order;
  std::vector<double> b(n_pts);
  for (std::size_t k = 0; k < n_pts; ++k) {
    b[k] = std::pow(static_cast<double>(k + 1), e) - std::pow(static_cast<double>(k), e);
  }
  const double scale = std::pow(f.dt, -order) * rgamma(2.0 - order);
  for (std::size_t n = 1; n < n_pts; ++n) {
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) acc += b[n - j - 1] * (v[j + 1] - v[j]);
    out.values[n] = scale * acc;
  }
  return out;
}

}  // namespace sfd
