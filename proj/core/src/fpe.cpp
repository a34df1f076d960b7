#include "sfd/fpe.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "sfd/errors.hpp"
#include "sfd/mlf.hpp"

namespace sfd {

namespace {

constexpr double kLeakLevel = 1e-12;

struct Coefficients {
  double d_zero;  // D(0)
  double k;       // D = d_zero E_{1/2,1}(-k sqrt(t))
};

Coefficients coefficients(double D0, double F, DiffusionVariant variant) {
  if (!(D0 > 0.0) || !std::isfinite(D0)) throw ParameterError("fpe: D0 must be positive");
  if (!(F > 0.0)) throw ParameterError("fpe: F must be positive");
  const double root_pi = std::sqrt(std::numbers::pi);
  if (variant == DiffusionVariant::paper) return {D0 * root_pi, std::isinf(F) ? 0.0 : 2.0 * D0 / F};
  return {D0, std::isinf(F) ? 0.0 : 2.0 * D0 / (F * root_pi)};
}

// Half width at which a centred Gaussian falls to kLeakLevel of its peak.
double leak_width(double variance) { return std::sqrt(2.0 * variance * std::log(1.0 / kLeakLevel)); }

// Thomas algorithm for the constant-coefficient CN system with the no-flux
// rows (1 + 2r) w0 - 2r w1 and -2r w_{n-2} + (1 + 2r) w_{n-1}.
void solve_tridiagonal(double r, std::vector<double>& rhs, std::vector<double>& c_prime) {
  const std::size_t n = rhs.size();
  c_prime.resize(n);
  const double diag = 1.0 + 2.0 * r;
  double denom = diag;
  c_prime[0] = -2.0 * r / denom;
  rhs[0] /= denom;
  for (std::size_t i = 1; i < n; ++i) {
    const double lower = i + 1 == n ? -2.0 * r : -r;
    const double upper = -r;
    denom = diag - lower * c_prime[i - 1];
    c_prime[i] = upper / denom;
    rhs[i] = (rhs[i] - lower * rhs[i - 1]) / denom;
  }
  for (std::size_t i = n - 1; i-- > 0;) rhs[i] -= c_prime[i] * rhs[i + 1];
}

double trapezoid(const std::vector<double>& y, double dx) {
  double s = 0.5 * (y.front() + y.back());
  for (std::size_t i = 1; i + 1 < y.size(); ++i) s += y[i];
  return s * dx;
}

}  // namespace

const char* to_string(DiffusionVariant v) noexcept { return v == DiffusionVariant::paper ? "paper" : "matched"; }

DiffusionVariant parse_diffusion_variant(const char* text) {
  const std::string s(text);
  if (s == "paper") return DiffusionVariant::paper;
  if (s == "matched") return DiffusionVariant::matched;
  throw ParameterError("unknown diffusion variant '" + s + "' (expected paper or matched)");
}

double diffusion_coefficient(double D0, double F, double t, DiffusionVariant variant) {
  if (!(t >= 0.0)) throw DomainError("diffusion_coefficient: t must be nonnegative");
  const Coefficients c = coefficients(D0, F, variant);
  if (t == 0.0 || c.k == 0.0) return c.d_zero;
  return c.d_zero * ml_eval(MLOrder(0.5, 1.0), -c.k * std::sqrt(t));
}

double integrated_diffusion(double D0, double F, double t, DiffusionVariant variant) {
  if (!(t >= 0.0)) throw DomainError("integrated_diffusion: t must be nonnegative");
  const Coefficients c = coefficients(D0, F, variant);
  if (t == 0.0) return 0.0;
  if (c.k == 0.0) return c.d_zero * t;
  return c.d_zero * ml_kernel(MLOrder(0.5, 2.0), c.k, 1.0, t);
}

FpeSolution solve_fpe(double D0, double F, double x_half_width, int nx, const std::vector<double>& t_grid,
                      DiffusionVariant variant, const FpeOptions& options) {
  coefficients(D0, F, variant);
  if (!(x_half_width > 0.0) || !std::isfinite(x_half_width)) throw ParameterError("solve_fpe: x_half_width must be positive");
  if (nx < 8) throw ParameterError("solve_fpe: nx must be at least 8");
  if (t_grid.empty()) throw ParameterError("solve_fpe: t_grid is empty");
  for (std::size_t k = 0; k < t_grid.size(); ++k) {
    if (!(t_grid[k] > 0.0) || !std::isfinite(t_grid[k]) || (k > 0 && !(t_grid[k] > t_grid[k - 1]))) {
      throw ParameterError("solve_fpe: t_grid must be positive and strictly increasing");
    }
  }
  if (!(options.step_fraction > 0.0)) throw ParameterError("solve_fpe: step_fraction must be positive");

  const double dx = 2.0 * x_half_width / (nx - 1);
  const double sigma0 = options.sigma0 > 0.0 ? options.sigma0 : 4.0 * dx;
  if (sigma0 < 3.0 * dx * (1.0 - 1e-12)) throw ParameterError("solve_fpe: sigma0 must span at least 3 grid cells");

  const double final_var = sigma0 * sigma0 + 2.0 * integrated_diffusion(D0, F, t_grid.back(), variant);
  const double needed = leak_width(final_var);
  if (needed > x_half_width) {
    throw DomainTooSmallError("solve_fpe: domain too small; use x_half_width >= " + std::to_string(1.1 * needed),
                              1.1 * needed);
  }

  FpeSolution sol;
  sol.sigma0 = sigma0;
  sol.t_grid = t_grid;
  sol.x_grid.resize(nx);
  std::vector<double> w(nx);
  const double norm = 1.0 / (sigma0 * std::sqrt(2.0 * std::numbers::pi));
  for (int i = 0; i < nx; ++i) {
    sol.x_grid[i] = -x_half_width + i * dx;
    w[i] = norm * std::exp(-0.5 * sol.x_grid[i] * sol.x_grid[i] / (sigma0 * sigma0));
  }

  std::vector<double> rhs(nx), scratch;
  double s_now = 0.0;
  for (double t_out : t_grid) {
    const double s_out = integrated_diffusion(D0, F, t_out, variant);
    while (s_now < s_out) {
      const double ds = std::min(s_out - s_now, options.step_fraction * (sigma0 * sigma0 + 2.0 * s_now));
      const double r = 0.5 * ds / (dx * dx);
      rhs[0] = (1.0 - 2.0 * r) * w[0] + 2.0 * r * w[1];
      for (int i = 1; i + 1 < nx; ++i) rhs[i] = r * w[i - 1] + (1.0 - 2.0 * r) * w[i] + r * w[i + 1];
      rhs[nx - 1] = 2.0 * r * w[nx - 2] + (1.0 - 2.0 * r) * w[nx - 1];
      solve_tridiagonal(r, rhs, scratch);
      w.swap(rhs);
      s_now = ds >= s_out - s_now ? s_out : s_now + ds;
    }
    sol.density.push_back(w);
    sol.mass.push_back(trapezoid(w, dx));
  }

  const std::vector<double>& last = sol.density.back();
  const double peak = *std::max_element(last.begin(), last.end());
  if (std::max(std::fabs(last.front()), std::fabs(last.back())) > kLeakLevel * peak) {
    throw DomainTooSmallError("solve_fpe: density reached the boundary; use x_half_width >= " +
                                  std::to_string(1.1 * needed),
                              1.1 * std::max(needed, x_half_width));
  }
  return sol;
}

double solution_mean(const FpeSolution& sol, std::size_t k) {
  const std::vector<double>& w = sol.density.at(k);
  const double dx = sol.x_grid[1] - sol.x_grid[0];
  std::vector<double> xw(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) xw[i] = sol.x_grid[i] * w[i];
  return trapezoid(xw, dx) / sol.mass.at(k);
}

MsdCurve solution_variance(const FpeSolution& sol) {
  MsdCurve c;
  c.model_tag = "fpe";
  const double dx = sol.x_grid[1] - sol.x_grid[0];
  std::vector<double> y(sol.x_grid.size());
  for (std::size_t k = 0; k < sol.t_grid.size(); ++k) {
    const double m = solution_mean(sol, k);
    for (std::size_t i = 0; i < y.size(); ++i) {
      const double d = sol.x_grid[i] - m;
      y[i] = d * d * sol.density[k][i];
    }
    c.times.push_back(sol.t_grid[k]);
    c.values.push_back(trapezoid(y, dx) / sol.mass[k]);
  }
  return c;
}

}  // namespace sfd
