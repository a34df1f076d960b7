#include "sfd/special.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace sfd {

namespace {

bool is_nonpositive_integer(double x) { return x <= 0.0 && x == std::floor(x); }

}  // namespace

double gamma_fn(double x) {
  if (is_nonpositive_integer(x)) return std::numeric_limits<double>::infinity();
  return std::tgamma(x);
}

double rgamma(double x) {
  if (is_nonpositive_integer(x)) return 0.0;
  if (x > 171.6) return 0.0;
  if (x < -170.0) {
    // 1/Gamma(x) = sin(pi x) Gamma(1 - x) / pi; overflows to +-inf here.
    return sin_pi(x) * std::tgamma(1.0 - x) / std::numbers::pi;
  }
  return 1.0 / std::tgamma(x);
}

double sin_pi(double x) {
  if (x == std::floor(x)) return 0.0;
  // Reduce to [-1, 1) so that the argument of std::sin stays small.
  double r = std::fmod(x, 2.0);
  if (r >= 1.0) r -= 2.0;
  if (r < -1.0) r += 2.0;
  if (r == 0.5) return 1.0;
  if (r == -0.5) return -1.0;
  return std::sin(std::numbers::pi * r);
}

double cos_pi(double x) {
  if (x - 0.5 == std::floor(x - 0.5)) return 0.0;
  double r = std::fmod(std::fabs(x), 2.0);
  if (r == 0.0) return 1.0;
  if (r == 1.0) return -1.0;
  return std::cos(std::numbers::pi * r);
}

}  // namespace sfd
