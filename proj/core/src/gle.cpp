#include "sfd/gle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "sfd/errors.hpp"
#include "sfd/mlf.hpp"
#include "sfd/special.hpp"

namespace sfd {

namespace {

constexpr int kMaxSeriesTerms = 25;
constexpr double kSeriesTolerance = 1e-10;
constexpr double kGridTolerance = 1e-5;
constexpr int kFirstGrid = 512;
constexpr int kLastGrid = 8192;

void require_time(double t, const char* op) {
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError(std::string(op) + ": t must be positive and finite");
}

// t^power E_{a,beta}(-lambda2 t^a) with a = alpha - gamma + 1.
double g0_family(const GleParams& p, double beta, double power, double t) {
  if (t == 0.0) return power > 0.0 ? 0.0 : (power == 0.0 ? rgamma(beta) : std::numeric_limits<double>::infinity());
  return ml_kernel(MLOrder(p.ml_order(), beta), p.lambda2, power, t);
}

double g0(const GleParams& p, double t) { return g0_family(p, p.alpha + 1.0, p.alpha, t); }
double g0_integral(const GleParams& p, double t) { return g0_family(p, p.alpha + 2.0, p.alpha + 1.0, t); }
// I^(1-alpha) G0 and I^(1-kappa) G0.
double g0_velocity_seed(const GleParams& p, double t) { return g0_family(p, 2.0, 1.0, t); }
double g0_force_seed(const GleParams& p, double t) {
  return g0_family(p, p.alpha - p.kappa + 2.0, p.alpha - p.kappa + 1.0, t);
}
// I^(1-gamma) G0 = t^a E_{a,a+1}(-lambda2 t^a).
double g0_memory_seed(const GleParams& p, double t) {
  const double a = p.ml_order();
  return g0_family(p, a + 1.0, a, t);
}

// Product-integration weights for u -> int_0^t G0'(t-s) u(s) ds on a uniform
// grid, exact for piecewise-linear u:
//   (K u)_i = sum_{k<i} A_k u_{i-1-k} + B_k u_{i-k}.
struct ConvolutionWeights {
  std::vector<double> a;
  std::vector<double> b;
};

ConvolutionWeights convolution_weights(const GleParams& p, double h, int n) {
  std::vector<double> g(n + 1), ig(n + 1);
  for (int k = 0; k <= n; ++k) {
    g[k] = g0(p, k * h);
    ig[k] = g0_integral(p, k * h);
  }
  ConvolutionWeights w{std::vector<double>(n), std::vector<double>(n)};
  for (int k = 0; k < n; ++k) {
    const double m0 = g[k + 1] - g[k];          // int G0' over the cell
    const double bk = (ig[k + 1] - ig[k]) / h - g[k];  // int G0'(r) (r_{k+1} - r)/h dr
    w.a[k] = m0 - bk;
    w.b[k] = bk;
  }
  return w;
}

std::vector<double> convolve(const ConvolutionWeights& w, const std::vector<double>& u) {
  const std::size_t n = u.size();
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 1; i < n; ++i) {
    double acc = 0.0;
    for (std::size_t k = 0; k < i; ++k) acc += w.a[k] * u[i - 1 - k] + w.b[k] * u[i - k];
    out[i] = acc;
  }
  return out;
}

double sup_norm(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::fabs(x));
  return m;
}

struct GridSeries {
  std::vector<double> sum;
  double last_term_at_end = 0.0;
  int terms = 0;
};

// S = f0 + sum_n (-lambda1)^n K^n f0 over the whole grid.
GridSeries sum_series(const GleParams& p, const ConvolutionWeights& w, std::vector<double> seed, int max_terms) {
  GridSeries out{seed, 0.0, 0};
  std::vector<double> u = std::move(seed);
  double factor = 1.0;
  double previous = std::numeric_limits<double>::infinity();
  const int cap = std::min(max_terms, kMaxSeriesTerms);
  for (int n = 1; n <= cap; ++n) {
    u = convolve(w, u);
    factor *= -p.lambda1;
    double size = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
      const double term = factor * u[i];
      out.sum[i] += term;
      size = std::max(size, std::fabs(term));
    }
    out.terms = n;
    out.last_term_at_end = std::fabs(factor * u.back());
    if (size <= kSeriesTolerance * sup_norm(out.sum)) break;
    if (n >= 2 && size >= previous) {
      throw DivergenceError("green_series: lambda1 expansion terms stopped decreasing at term " + std::to_string(n),
                            out.sum.back(), factor * u.back());
    }
    previous = size;
  }
  return out;
}

std::vector<double> sample(const GleParams& p, double (*f)(const GleParams&, double), double h, int n) {
  std::vector<double> v(n + 1);
  for (int i = 0; i <= n; ++i) v[i] = f(p, i * h);
  return v;
}

// One grid level of the lambda1 > 0 route: mean - x0 and variance at t = n h.
MsdPoint grid_components(const GleParams& p, double t, int n) {
  const double h = t / n;
  const ConvolutionWeights w = convolution_weights(p, h, n);
  const std::vector<double> g = sum_series(p, w, sample(p, g0, h, n), kMaxSeriesTerms).sum;
  std::vector<double> j;
  if (p.lambda2 > 0.0) j = sum_series(p, w, sample(p, g0_memory_seed, h, n), kMaxSeriesTerms).sum;

  double acc = 0.0;
  double prev = 0.0;
  for (int i = 1; i <= n; ++i) {
    double f = p.lambda1 * g[i] * g[i];
    if (p.lambda2 > 0.0) f += p.lambda2 * g[i] * j[i];
    acc += 0.5 * h * (prev + f);
    prev = f;
  }

  double mean = 0.0;
  const double v0 = p.velocity();
  const double a = p.force_amplitude();
  if (v0 != 0.0) mean += v0 * sum_series(p, w, sample(p, g0_velocity_seed, h, n), kMaxSeriesTerms).sum.back();
  if (a != 0.0) mean += a * sum_series(p, w, sample(p, g0_force_seed, h, n), kMaxSeriesTerms).sum.back();
  return {mean, 2.0 * p.kT * acc, mean * mean + 2.0 * p.kT * acc};
}

MsdPoint refined_grid_components(const GleParams& p, double t) {
  MsdPoint coarse = grid_components(p, t, kFirstGrid);
  for (int n = 2 * kFirstGrid; n <= kLastGrid; n *= 2) {
    const MsdPoint fine = grid_components(p, t, n);
    const double dv = std::fabs(fine.variance - coarse.variance);
    const double dm = std::fabs(fine.mean - coarse.mean);
    const double mean_scale = std::max(std::fabs(fine.mean), std::sqrt(std::fabs(fine.variance)));
    if (dv <= kGridTolerance * std::fabs(fine.variance) && dm <= kGridTolerance * mean_scale) return fine;
    coarse = fine;
  }
  throw AccuracyError("variance: grid refinement did not settle by " + std::to_string(kLastGrid) + " points at t = " +
                          std::to_string(t),
                      coarse.variance, kGridTolerance * std::fabs(coarse.variance));
}

// int_0^t f(u) du for integrands with endpoint power behaviour and a single
// natural time scale; pieces grow geometrically past the scale. Each piece
// is shifted to start at zero: Boost 1.74 can land a left-tail node exactly
// on a left end point at or above 0.5.
template <typename F>
double integrate_scaled(F f, double t, double scale) {
  thread_local boost::math::quadrature::tanh_sinh<double> rule;
  double lo = 0.0;
  double hi = std::min(t, scale);
  double total = 0.0;
  while (true) {
    total += rule.integrate([&](double s) { return f(lo + s); }, 0.0, hi - lo, 1e-10);
    if (hi >= t) break;
    lo = hi;
    hi = std::min(t, hi * 8.0);
  }
  return total;
}

void require_fdt_damping(const GleParams& p) {
  if (p.lambda1 == 0.0 && p.lambda2 == 0.0) {
    throw ParameterError("variance: lambda1 and lambda2 are both zero (undamped motion has no FDT noise)");
  }
}

}  // namespace

void GleParams::validate() const {
  auto in_unit = [](double v) { return v > 0.0 && v <= 1.0; };
  if (!in_unit(alpha)) throw ParameterError("GleParams: alpha must lie in (0, 1]");
  if (!in_unit(gamma)) throw ParameterError("GleParams: gamma must lie in (0, 1]");
  if (!in_unit(kappa)) throw ParameterError("GleParams: kappa must lie in (0, 1]");
  if (!(lambda1 >= 0.0) || !std::isfinite(lambda1)) throw ParameterError("GleParams: lambda1 must be nonnegative");
  if (!(lambda2 >= 0.0) || !std::isfinite(lambda2)) throw ParameterError("GleParams: lambda2 must be nonnegative");
  if (!(kT > 0.0) || !std::isfinite(kT)) throw ParameterError("GleParams: kT must be positive");
  if (!std::isfinite(x0)) throw ParameterError("GleParams: x0 must be finite");
  if (v0 && !std::isfinite(*v0)) throw ParameterError("GleParams: v0 must be finite");
  if (force_amp && !std::isfinite(*force_amp)) throw ParameterError("GleParams: force amplitude must be finite");
  if (!std::isfinite(force_a1)) throw ParameterError("GleParams: force_a1 must be finite");
  if (overdamped && !(lambda1 > 0.0)) throw ParameterError("GleParams: the overdamped model needs lambda1 > 0");
}

double GleParams::velocity() const { return v0 ? *v0 : std::sqrt(kT); }

double GleParams::force_amplitude() const { return force_amp ? *force_amp : force_a1 * std::sqrt(kT); }

double green_closed(const GleParams& p, double t) {
  p.validate();
  require_time(t, "green_closed");
  if (p.overdamped) {
    const double zeta = 1.0 / p.lambda1;
    const double lambda = p.lambda2 / p.lambda1;
    const double b = 1.0 - p.gamma;
    if (b == 0.0) return zeta / (1.0 + lambda);
    return zeta * ml_kernel(MLOrder(b, 1.0), lambda, 0.0, t);
  }
  if (p.lambda1 != 0.0) {
    throw UnsupportedBranchError("green_closed: lambda1 > 0 has no closed form; use green_series or Laplace inversion");
  }
  return g0(p, t);
}

SeriesEstimate green_series(const GleParams& p, double t, int n_terms, int grid_points) {
  p.validate();
  require_time(t, "green_series");
  if (n_terms < 1) throw ParameterError("green_series: n_terms must be at least 1");
  if (grid_points < 2) throw ParameterError("green_series: grid_points must be at least 2");
  if (p.overdamped) throw UnsupportedBranchError("green_series: the overdamped model has a closed form");
  if (p.lambda1 == 0.0) return {g0(p, t), 0.0, 0};
  const double h = t / grid_points;
  const ConvolutionWeights w = convolution_weights(p, h, grid_points);
  const GridSeries s = sum_series(p, w, sample(p, g0, h, grid_points), n_terms);
  return {s.sum.back(), s.last_term_at_end, s.terms};
}

MsdPoint msd_components(const GleParams& p, double t) {
  p.validate();
  require_time(t, "msd");
  require_fdt_damping(p);

  if (p.overdamped) {
    const double zeta = 1.0 / p.lambda1;
    const double lambda = p.lambda2 / p.lambda1;
    const double b = 1.0 - p.gamma;
    const double var = b == 0.0 ? 2.0 * p.kT * zeta * t / (1.0 + lambda)
                                : 2.0 * p.kT * zeta * ml_kernel(MLOrder(b, 2.0), lambda, 1.0, t);
    return {0.0, var, var};
  }

  if (p.lambda1 > 0.0) return refined_grid_components(p, t);

  double mean = 0.0;
  const double v0 = p.velocity();
  const double a = p.force_amplitude();
  if (v0 != 0.0) mean += v0 * g0_velocity_seed(p, t);
  if (a != 0.0) mean += a * g0_force_seed(p, t);

  const double scale = std::pow(p.lambda2, -1.0 / p.ml_order());
  const double integral =
      integrate_scaled([&p](double u) { return g0(p, u) * g0_memory_seed(p, u); }, t, scale);
  const double var = 2.0 * p.kT * p.lambda2 * integral;
  return {mean, var, mean * mean + var};
}

double mean_displacement(const GleParams& p, double t) {
  p.validate();
  require_time(t, "mean_displacement");
  if (p.overdamped) return p.x0;
  if (p.lambda1 > 0.0) return p.x0 + refined_grid_components(p, t).mean;
  double mean = 0.0;
  const double v0 = p.velocity();
  const double a = p.force_amplitude();
  if (v0 != 0.0) mean += v0 * g0_velocity_seed(p, t);
  if (a != 0.0) mean += a * g0_force_seed(p, t);
  return p.x0 + mean;
}

namespace {

void require_grid(double dt, int n, const char* op) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ParameterError(std::string(op) + ": dt must be positive");
  if (n < 1) throw ParameterError(std::string(op) + ": need at least one step");
}

}  // namespace

std::vector<double> green_integral_grid(const GleParams& p, double dt, int n) {
  p.validate();
  require_grid(dt, n, "green_integral_grid");
  std::vector<double> out(n + 1, 0.0);
  if (p.overdamped) {
    const double zeta = 1.0 / p.lambda1;
    const double lambda = p.lambda2 / p.lambda1;
    const double b = 1.0 - p.gamma;
    for (int i = 1; i <= n; ++i) {
      const double t = i * dt;
      out[i] = b == 0.0 ? zeta * t / (1.0 + lambda) : zeta * ml_kernel(MLOrder(b, 2.0), lambda, 1.0, t);
    }
    return out;
  }
  if (p.lambda1 == 0.0) return sample(p, g0_integral, dt, n);
  const ConvolutionWeights w = convolution_weights(p, dt, n);
  return sum_series(p, w, sample(p, g0_integral, dt, n), kMaxSeriesTerms).sum;
}

std::vector<double> mean_displacement_grid(const GleParams& p, double dt, int n) {
  p.validate();
  require_grid(dt, n, "mean_displacement_grid");
  std::vector<double> out(n + 1, p.x0);
  if (p.overdamped) return out;
  const double v0 = p.velocity();
  const double a = p.force_amplitude();
  std::vector<double> vel, force;
  if (p.lambda1 == 0.0) {
    if (v0 != 0.0) vel = sample(p, g0_velocity_seed, dt, n);
    if (a != 0.0) force = sample(p, g0_force_seed, dt, n);
  } else {
    const ConvolutionWeights w = convolution_weights(p, dt, n);
    if (v0 != 0.0) vel = sum_series(p, w, sample(p, g0_velocity_seed, dt, n), kMaxSeriesTerms).sum;
    if (a != 0.0) force = sum_series(p, w, sample(p, g0_force_seed, dt, n), kMaxSeriesTerms).sum;
  }
  for (int i = 0; i <= n; ++i) {
    if (!vel.empty()) out[i] += v0 * vel[i];
    if (!force.empty()) out[i] += a * force[i];
  }
  return out;
}

double variance(const GleParams& p, double t) { return msd_components(p, t).variance; }

double msd(const GleParams& p, double t) { return msd_components(p, t).msd; }

}  // namespace sfd
