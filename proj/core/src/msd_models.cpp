#include "sfd/msd_models.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "sfd/errors.hpp"
#include "sfd/mlf.hpp"
#include "sfd/special.hpp"

namespace sfd {

namespace {

void require_time(double t, const char* op) {
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError(std::string(op) + ": t must be positive and finite");
}

}  // namespace

void PhysicalChannel::validate() const {
  if (!(l > 0.0) || !std::isfinite(l)) throw ParameterError("PhysicalChannel: l must be positive");
  if (!(theta > 0.0 && theta < 1.0)) throw ParameterError("PhysicalChannel: theta must lie strictly inside (0, 1)");
  if (!(tau > 0.0) || !std::isfinite(tau)) throw ParameterError("PhysicalChannel: tau must be positive");
}

double PhysicalChannel::D0() const {
  validate();
  return l * l * (1.0 - theta) / (2.0 * tau);
}

double PhysicalChannel::F() const {
  validate();
  return l * l * (1.0 - theta) / (theta * std::sqrt(2.0 * std::numbers::pi * tau));
}

void MsdCurve::validate() const {
  if (times.size() != values.size()) throw ParameterError("MsdCurve: times and values differ in length");
  if (!stderr_values.empty() && stderr_values.size() != times.size()) {
    throw ParameterError("MsdCurve: stderr length does not match");
  }
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!(times[i] > 0.0)) throw ParameterError("MsdCurve: times must be positive");
    if (i > 0 && !(times[i] > times[i - 1])) throw ParameterError("MsdCurve: times must increase strictly");
    if (!(values[i] >= 0.0)) throw ParameterError("MsdCurve: values must be nonnegative");
    if (!stderr_values.empty() && !(stderr_values[i] >= 0.0)) {
      throw ParameterError("MsdCurve: stderr must be nonnegative");
    }
  }
}

std::vector<double> log_grid(double t_min, double t_max, int points_per_decade) {
  if (!(t_min > 0.0) || !(t_max > t_min)) throw ParameterError("log_grid: need 0 < t_min < t_max");
  if (points_per_decade < 1) throw ParameterError("log_grid: points_per_decade must be positive");
  const double lo = std::log10(t_min);
  const double hi = std::log10(t_max);
  const int steps = std::max(1, static_cast<int>(std::lround((hi - lo) * points_per_decade)));
  std::vector<double> grid(steps + 1);
  for (int i = 0; i <= steps; ++i) grid[i] = std::pow(10.0, lo + (hi - lo) * i / steps);
  grid.front() = t_min;
  grid.back() = t_max;
  return grid;
}

MsdCurve sample_curve(const std::function<double(double)>& model, const std::vector<double>& times,
                      const std::string& tag) {
  MsdCurve c{times, std::vector<double>(times.size()), {}, tag};
  for (std::size_t i = 0; i < times.size(); ++i) c.values[i] = model(times[i]);
  c.validate();
  return c;
}

double brandani_msd(const PhysicalChannel& ch, double t) {
  ch.validate();
  require_time(t, "brandani_msd");
  const double s = t / ch.tau;
  return ch.l * ch.l * (1.0 - ch.theta) * s / (1.0 + ch.theta * std::sqrt(std::numbers::pi / 2.0) * std::sqrt(s));
}

double lin_msd(double D0, double F, double t) {
  if (!(D0 > 0.0) || !(F > 0.0)) throw ParameterError("lin_msd: D0 and F must be positive");
  require_time(t, "lin_msd");
  return 2.0 * D0 * t / (1.0 + D0 * std::sqrt(t) / F);
}

FamilyCalibration calibrate_family(const PhysicalChannel& ch, double beta, double kT) {
  ch.validate();
  if (!(beta >= 1.0) || !std::isfinite(beta)) throw DomainError("calibrate_family: beta must be at least 1");
  if (!(kT > 0.0)) throw ParameterError("calibrate_family: kT must be positive");
  const double root = std::sqrt(2.0 * ch.tau);
  const double zeta = ch.l * ch.l * (1.0 - ch.theta) * gamma_fn(beta) / (2.0 * kT * ch.tau);
  const double matched =
      ch.theta * gamma_fn(beta) * std::sqrt(std::numbers::pi) * rgamma(beta - 0.5) / root;
  const double paper = ch.theta * gamma_fn(beta - 0.5) / root;
  return {zeta, matched, paper};
}

double ml_family_msd(const PhysicalChannel& ch, double beta, double kT, double t, LambdaConvention convention) {
  require_time(t, "ml_family_msd");
  const FamilyCalibration c = calibrate_family(ch, beta, kT);
  const double lambda = convention == LambdaConvention::matched ? c.lambda_prime : c.lambda_prime_paper;
  return 2.0 * kT * c.zeta_prime * ml_kernel(MLOrder(0.5, beta), lambda, 1.0, t);
}

double three_regime_msd(double kT, double lambda2, double t) {
  if (!(kT > 0.0) || !(lambda2 > 0.0)) throw ParameterError("three_regime_msd: kT and lambda2 must be positive");
  require_time(t, "three_regime_msd");
  return 2.0 * kT * ml_kernel(MLOrder(1.5, 3.0), lambda2, 2.0, t);
}

double three_regime_lambda2(double kT, double F) {
  if (!(kT > 0.0) || !(F > 0.0)) throw ParameterError("three_regime_lambda2: kT and F must be positive");
  return kT / (F * gamma_fn(1.5));
}

std::vector<SlopePoint> local_exponent(const MsdCurve& curve) {
  curve.validate();
  const std::size_t n = curve.times.size();
  if (n < 3) throw ParameterError("local_exponent: need at least three points");
  std::vector<double> x(n), y(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(curve.values[i] > 0.0)) throw DomainError("local_exponent: values must be strictly positive");
    x[i] = std::log(curve.times[i]);
    y[i] = std::log(curve.values[i]);
  }
  // Derivative of the quadratic through three points, evaluated at one of them.
  auto quad = [&](std::size_t i0, std::size_t i1, std::size_t i2, std::size_t at) {
    const double x0 = x[i0], x1 = x[i1], x2 = x[i2], xa = x[at];
    return y[i0] * (2.0 * xa - x1 - x2) / ((x0 - x1) * (x0 - x2)) +
           y[i1] * (2.0 * xa - x0 - x2) / ((x1 - x0) * (x1 - x2)) +
           y[i2] * (2.0 * xa - x0 - x1) / ((x2 - x0) * (x2 - x1));
  };
  std::vector<SlopePoint> out(n);
  out[0] = {curve.times[0], quad(0, 1, 2, 0)};
  for (std::size_t i = 1; i + 1 < n; ++i) out[i] = {curve.times[i], quad(i - 1, i, i + 1, i)};
  out[n - 1] = {curve.times[n - 1], quad(n - 3, n - 2, n - 1, n - 1)};
  return out;
}

std::vector<RegimeInterval> regime_boundaries(const MsdCurve& curve, const std::vector<double>& targets, double tol) {
  if (!(tol >= 0.0)) throw ParameterError("regime_boundaries: tol must be nonnegative");
  const std::vector<SlopePoint> slopes = local_exponent(curve);
  std::vector<RegimeInterval> out;
  for (double target : targets) {
    bool inside = false;
    double enter = 0.0;
    for (std::size_t i = 0; i < slopes.size(); ++i) {
      const bool hit = std::fabs(slopes[i].slope - target) <= tol;
      if (hit && !inside) {
        inside = true;
        enter = slopes[i].t;
      }
      if (!hit && inside) {
        inside = false;
        out.push_back({target, enter, slopes[i - 1].t});
      }
    }
    if (inside) out.push_back({target, enter, slopes.back().t});
  }
  return out;
}

}  // namespace sfd
