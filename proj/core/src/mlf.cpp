#include "sfd/mlf.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

extern "C" {
#include <quadmath.h>
}

#include "sfd/errors.hpp"
#include "sfd/special.hpp"

namespace sfd {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kMaxAsymptoticTerms = 20;

// Accuracy contract: 1e-10 relative up to |z| = 100, 1e-12 absolute beyond.
double accuracy_target(double value, double x) {
  if (x <= 100.0) return std::max(1e-10 * std::fabs(value), 1e-14);
  return 1e-12;
}

double log_gamma_positive(double v) {
  int sign = 0;
  return ::lgamma_r(v, &sign);
}

// Neumaier's variant of compensated summation.
template <typename Real>
class CompensatedSum {
 public:
  void add(Real v) {
    const Real t = sum_ + v;
    if (fabs_(sum_) >= fabs_(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  Real value() const { return sum_ + comp_; }

 private:
  static Real fabs_(Real v) { return v < 0 ? -v : v; }
  Real sum_ = 0;
  Real comp_ = 0;
};

// Natural log of the largest series term |z|^n / Gamma(alpha n + beta).
double taylor_peak_log(double alpha, double beta, double x) {
  double best = -log_gamma_positive(beta);
  if (x <= 0.0) return best;
  // The terms peak near n ~ x^(1/alpha) at roughly exp(x^(1/alpha)); skip the
  // scan once that is far beyond any threshold in use.
  const double growth = std::pow(x, 1.0 / alpha);
  if (growth > 200.0) return growth;
  const double lx = std::log(x);
  double prev = best;
  for (int n = 1; n < 100000; ++n) {
    const double lm = n * lx - log_gamma_positive(alpha * n + beta);
    best = std::max(best, lm);
    if (lm < prev && lm < best - 40.0) break;
    prev = lm;
  }
  return best;
}

void require_negative(double z, const char* route) {
  if (!(z < 0.0)) {
    throw DomainError(std::string(route) + ": requires a negative argument");
  }
}

// alpha == 1: E_{1,beta}(-x) = exp(-x)/Gamma(beta) * sum_n c_n x^n/n!, with
// c_0 = 1 and c_n = (beta-1)/(beta-1+n).  All terms past n = 0 share a sign,
// so the sum has no cancellation once x is moderately large.
MLEvaluation kummer_alpha_one(double beta, double x) {
  const double bm1 = beta - 1.0;
  CompensatedSum<double> sum;
  sum.add(1.0);
  double term = 1.0;
  double abs_total = 1.0;
  int n = 1;
  for (; n < 100000; ++n) {
    term *= x / n;
    const double c = bm1 / (bm1 + n);
    const double contribution = c * term;
    sum.add(contribution);
    abs_total += std::fabs(contribution);
    if (n > x && std::fabs(contribution) <= 1e-18 * std::fabs(sum.value())) break;
    if (contribution == 0.0 && n > x) break;
  }
  const double scale = rgamma(beta) * std::exp(-x);
  const double value = scale * sum.value();
  const double bound = std::fabs(scale) * abs_total * 4.0 * kEps + std::fabs(value) * 4.0 * kEps;
  return {value, bound, MLMethod::kummer};
}

}  // namespace

MLOrder::MLOrder(double alpha, double beta) : alpha_(alpha), beta_(beta) {
  if (!std::isfinite(alpha) || !(alpha > 0.0) || alpha > 2.0) {
    throw ParameterError("Mittag-Leffler order alpha must lie in (0, 2], got " + std::to_string(alpha));
  }
  if (!std::isfinite(beta) || !(beta > 0.0)) {
    throw ParameterError("Mittag-Leffler order beta must be positive, got " + std::to_string(beta));
  }
}

const char* to_string(MLMethod method) noexcept {
  switch (method) {
    case MLMethod::zero_argument: return "zero_argument";
    case MLMethod::taylor: return "taylor";
    case MLMethod::asymptotic: return "asymptotic";
    case MLMethod::kummer: return "kummer";
    case MLMethod::integral: return "integral";
  }
  return "unknown";
}

MLEvaluation ml_taylor(const MLOrder& order, double z) {
  const double alpha = order.alpha();
  const double beta = order.beta();
  if (z == 0.0) return {rgamma(beta), 0.0, MLMethod::zero_argument};
  const double x = std::fabs(z);
  const double lx = std::log(x);
  const bool alternating = z < 0.0;

  CompensatedSum<double> sum;
  double peak = 0.0;
  double abs_sum = 0.0;
  double prev = std::numeric_limits<double>::infinity();
  int n = 0;
  for (; n < 200000; ++n) {
    const double arg = alpha * n + beta;
    double mag;
    if (arg < 170.0 && n * lx < 700.0) {
      mag = std::pow(x, n) * rgamma(arg);
    } else {
      mag = std::exp(n * lx - log_gamma_positive(arg));
    }
    if (!std::isfinite(mag)) {
      throw DomainError("ml_taylor: series terms overflow at z = " + std::to_string(z));
    }
    sum.add(alternating && (n % 2 == 1) ? -mag : mag);
    abs_sum += mag;
    peak = std::max(peak, mag);
    const bool past_peak = mag < prev;
    prev = mag;
    if (n > 2 && past_peak &&
        (mag <= 1e-18 * peak || mag <= 1e-18 * std::fabs(sum.value()))) {
      break;
    }
  }
  const double value = sum.value();
  // Each term carries a few ulps from pow and tgamma.
  const double bound = 8.0 * kEps * abs_sum + 4.0 * kEps * std::fabs(value);
  return {value, bound, MLMethod::taylor};
}

MLEvaluation ml_taylor_extended(const MLOrder& order, double z) {
  using quad = __float128;
  // Built without Q literals, which -Wpedantic rejects.
  const quad quad_max = static_cast<quad>(std::numeric_limits<double>::infinity());
  const quad quad_eps = static_cast<quad>(std::ldexp(1.0, -112));
  const quad quad_tiny = static_cast<quad>(1e-38);
  const quad alpha = order.alpha();
  const quad beta = order.beta();
  if (z == 0.0) return {rgamma(order.beta()), 0.0, MLMethod::zero_argument};
  const quad x = std::fabs(z);
  const quad lx = logq(x);
  const bool alternating = z < 0.0;

  CompensatedSum<quad> sum;
  quad peak = 0;
  quad prev = quad_max;
  for (int n = 0; n < 400000; ++n) {
    const quad arg = alpha * n + beta;
    quad mag;
    if (arg < 1700 && n * lx < 11000) {
      mag = powq(x, n) / tgammaq(arg);
    } else {
      mag = expq(n * lx - lgammaq(arg));
    }
    sum.add(alternating && (n % 2 == 1) ? -mag : mag);
    if (mag > peak) peak = mag;
    const bool past_peak = mag < prev;
    prev = mag;
    const quad s = sum.value();
    if (n > 2 && past_peak && (mag <= quad_tiny * peak || mag <= quad_tiny * (s < 0 ? -s : s))) break;
  }
  const quad value = sum.value();
  const quad abs_value = value < 0 ? -value : value;
  const double bound =
      static_cast<double>(4 * quad_eps * (peak + abs_value)) + std::fabs(static_cast<double>(value)) * kEps;
  return {static_cast<double>(value), bound, MLMethod::taylor};
}

MLEvaluation ml_asymptotic(const MLOrder& order, double z) {
  require_negative(z, "ml_asymptotic");
  const double alpha = order.alpha();
  const double beta = order.beta();
  const double x = -z;

  // Algebraic part: sum_{n>=1} (-1)^(n-1) x^-n / Gamma(beta - n alpha).
  CompensatedSum<double> sum;
  double abs_sum = 0.0;
  double last_nonzero = std::numeric_limits<double>::infinity();
  double omitted = 0.0;
  int n = 1;
  for (; n <= kMaxAsymptoticTerms; ++n) {
    const double rg = rgamma(beta - n * alpha);
    if (rg == 0.0) continue;
    const double mag = std::fabs(rg) * std::pow(x, -n);
    if (mag > last_nonzero) {
      omitted = mag;
      break;
    }
    last_nonzero = mag;
    abs_sum += mag;
    sum.add((n % 2 == 1 ? 1.0 : -1.0) * rg * std::pow(x, -n));
  }
  if (n > kMaxAsymptoticTerms) {
    // Stopped by the cap: the bound is the next term that does not vanish.
    for (int m = kMaxAsymptoticTerms + 1; m <= kMaxAsymptoticTerms + 40; ++m) {
      const double rg = rgamma(beta - m * alpha);
      if (rg != 0.0) {
        omitted = std::fabs(rg) * std::pow(x, -m);
        break;
      }
    }
  }

  double value = sum.value();
  // Near alpha = 1 the optimally truncated remainder runs to a few times the
  // first omitted term.
  double bound = 5.0 * omitted + 8.0 * kEps * abs_sum;

  // Optimal truncation leaves a remainder near exp(-x^(1/alpha)), which is not
  // small next to the residue pair as alpha -> 1.
  const double root = std::pow(x, 1.0 / alpha);
  bound += (10.0 / alpha) * std::pow(x, (1.0 - beta) / alpha) * std::exp(-root);
  if (alpha > 1.0) {
    // Residues at the two conjugate poles u^alpha = -x of the Hankel integrand.
    const double phase = std::numbers::pi / alpha;
    const double amplitude =
        (2.0 / alpha) * std::pow(x, (1.0 - beta) / alpha) * std::exp(root * std::cos(phase));
    value += amplitude * std::cos(root * std::sin(phase) + phase * (1.0 - beta));
  } else if (alpha == 1.0) {
    const double exponential = std::exp(-x) * std::pow(x, 1.0 - beta);
    if (beta == std::floor(beta)) {
      value += cos_pi(beta - 1.0) * exponential;
    } else {
      bound += exponential;
    }
  }
  bound += 4.0 * kEps * std::fabs(value);
  return {value, bound, MLMethod::asymptotic};
}

MLEvaluation ml_integral(const MLOrder& order, double z) {
  require_negative(z, "ml_integral");
  const double alpha = order.alpha();
  if (alpha == 1.0) {
    throw UnsupportedBranchError("ml_integral: alpha == 1 puts the pole on the cut; use the Kummer route");
  }
  const double x = -z;

  // The integrand behaves like r^(alpha-b) at the origin.  Lower beta by
  // multiples of alpha until b <= max(1, alpha), so the exponent stays at or
  // above alpha - 1 and well clear of -1, then climb back with
  //   E_{a,b+a}(z) = (E_{a,b}(z) - 1/Gamma(b)) / z.
  double b = order.beta();
  int reductions = 0;
  const double ceiling = std::max(1.0, alpha);
  while (b > ceiling) {
    b -= alpha;
    ++reductions;
  }

  const double sin_b = sin_pi(b);
  const double sin_ba = sin_pi(b - alpha);
  const double cos_a = cos_pi(alpha);
  const double sin_a = sin_pi(alpha);
  const double inv_alpha = 1.0 / alpha;

  // Integrand without its r^(alpha-b) factor.
  auto regular = [=](double r) -> double {
    const double ra = std::pow(r, alpha);
    const double num = ra * sin_b + x * sin_ba;
    const double re = ra + x * cos_a;
    const double im = x * sin_a;
    const double den = re * re + im * im;
    return std::exp(-r) * num / (std::numbers::pi * den);
  };
  const double p = alpha - b;
  auto kernel = [=](double r) -> double { return r > 0.0 ? std::pow(r, p) * regular(r) : 0.0; };

  // Split at the near-resonance r^alpha = -x cos(pi alpha) when it exists.
  double split = std::min(std::max(1.0, std::pow(x, inv_alpha)), 40.0);
  if (cos_a < 0.0) {
    const double peak = std::pow(-x * cos_a, inv_alpha);
    if (peak > 1e-2 && peak < 40.0) split = peak;
  }

  thread_local boost::math::quadrature::tanh_sinh<double> finite_rule;
  thread_local boost::math::quadrature::exp_sinh<double> tail_rule;
  constexpr double tol = 1e-14;
  double err_head = 0.0, l1_head = 0.0, err_tail = 0.0, l1_tail = 0.0;
  double head;
  if (p < 0.0) {
    // r = s^(1/q), q = p + 1, turns r^p dr into ds/q and removes the
    // endpoint singularity, which otherwise hides mass below r ~ 1e-300.
    const double q = p + 1.0;
    auto smooth = [=](double s) -> double { return s > 0.0 ? regular(std::pow(s, 1.0 / q)) / q : 0.0; };
    head = finite_rule.integrate(smooth, 0.0, std::pow(split, q), tol, &err_head, &l1_head);
  } else {
    head = finite_rule.integrate(kernel, 0.0, split, tol, &err_head, &l1_head);
  }
  const double tail =
      tail_rule.integrate(kernel, split, std::numeric_limits<double>::infinity(), tol, &err_tail, &l1_tail);

  double value = head + tail;
  double bound = err_head + err_tail + 8.0 * kEps * (l1_head + l1_tail);

  if (alpha > 1.0) {
    const double root = std::pow(x, inv_alpha);
    const double phase = std::numbers::pi * inv_alpha;
    const double amplitude =
        (2.0 / alpha) * std::pow(x, (1.0 - b) * inv_alpha) * std::exp(root * std::cos(phase));
    value += amplitude * std::cos(root * std::sin(phase) + phase * (1.0 - b));
    bound += 8.0 * kEps * std::fabs(amplitude);
  }

  for (int k = 0; k < reductions; ++k) {
    value = (value - rgamma(b)) / z;
    bound = (bound + kEps * std::fabs(rgamma(b))) / x;
    b += alpha;
  }
  return {value, bound, MLMethod::integral};
}

MLEvaluation ml_evaluate(const MLOrder& order, double z) {
  if (std::isnan(z)) throw ParameterError("ml_eval: argument is NaN");
  if (z == 0.0) return {rgamma(order.beta()), 0.0, MLMethod::zero_argument};
  if (z > 0.0) {
    if (order.alpha() < 0.5) {
      throw ParameterError("ml_eval: positive arguments are supported only for alpha >= 1/2");
    }
    return ml_taylor(order, z);
  }
  if (std::isinf(z)) return {0.0, 0.0, MLMethod::asymptotic};

  const double x = -z;
  // Direct summation while the largest term stays within 100 of unity.
  if (taylor_peak_log(order.alpha(), order.beta(), x) <= std::log(100.0)) {
    return ml_taylor(order, z);
  }
  const MLEvaluation asym = ml_asymptotic(order, z);
  if (asym.error_bound <= 0.01 * accuracy_target(asym.value, x)) return asym;

  MLEvaluation mid = order.alpha() == 1.0 ? kummer_alpha_one(order.beta(), x) : ml_integral(order, z);
  if (asym.error_bound < mid.error_bound) mid = asym;
  if (!(mid.error_bound <= accuracy_target(mid.value, x))) {
    throw AccuracyError("ml_eval: E_{" + std::to_string(order.alpha()) + "," + std::to_string(order.beta()) +
                            "}(" + std::to_string(z) + ") missed its accuracy target",
                        mid.value, mid.error_bound);
  }
  return mid;
}

double ml_eval(const MLOrder& order, double z) { return ml_evaluate(order, z).value; }

double ml_kernel(const MLOrder& order, double lambda, double power, double t) {
  if (!(t > 0.0)) throw DomainError("ml_kernel: t must be positive");
  if (!(lambda >= 0.0)) throw DomainError("ml_kernel: lambda must be nonnegative");
  const double z = lambda == 0.0 ? 0.0 : -lambda * std::pow(t, order.alpha());
  return std::pow(t, power) * ml_eval(order, z);
}

}  // namespace sfd
