#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sfd/fraccalc.hpp"

namespace sfd {

/// Parameters of the fractional GLE
///   D^(alpha+1) x + int gamma(t-u) v(u) du = f(t) + xi(t)
/// with kernel gamma(t) = lambda1 delta(t) + lambda2 t^-gamma / Gamma(1-gamma),
/// force f(t) = a t^-kappa / Gamma(1-kappa) and FDT noise <xi xi> = kT gamma.
struct GleParams {
  double alpha = 1.0;
  double gamma = 0.5;
  double lambda1 = 0.0;
  double lambda2 = 1.0;
  double kappa = 1.0;
  /// Force amplitude a; unset means a1 sqrt(kT) with a1 = force_a1.
  std::optional<double> force_amp;
  double force_a1 = 1.0;
  double kT = 1.0;
  double x0 = 0.0;
  /// Initial velocity; unset means sqrt(kT) (equipartition).
  std::optional<double> v0;
  /// Drop the fractional acceleration (G~ = 1/(lambda1 s + lambda2 s^gamma)).
  bool overdamped = false;

  void validate() const;
  double velocity() const;
  double force_amplitude() const;
  /// Order of the Mittag-Leffler functions in G0: alpha - gamma + 1.
  double ml_order() const noexcept { return alpha - gamma + 1.0; }
};

/// Closed-form Green function: G0 when lambda1 == 0, or the overdamped
/// zeta E_{1-gamma,1}(-lambda t^(1-gamma)) with zeta = 1/lambda1,
/// lambda = lambda2/lambda1.  Throws UnsupportedBranchError otherwise.
double green_closed(const GleParams& p, double t);

struct SeriesEstimate {
  double value;
  double error_bound;  ///< magnitude of the last term kept
  int terms;           ///< number of correction terms summed
};

/// Green function by the lambda1 expansion
///   G = G0 + sum_n (-lambda1)^n G0 * (G0')^{*n},
/// with every convolution done by product integration against exact cell
/// moments of G0' = t^(alpha-1) E_{a,alpha}(-lambda2 t^a).  Truncates at
/// min(n_terms, 25) or once a term drops below 1e-10 of the sum.  Throws
/// DivergenceError if a term fails to decrease.
SeriesEstimate green_series(const GleParams& p, double t, int n_terms = 25, int grid_points = 2048);

/// x_mean(t) = x0 + v0 I^(1-alpha) G + a I^(1-kappa) G.  Closed form for
/// lambda1 == 0; lambda1 series on a refined grid otherwise; x0 when overdamped.
double mean_displacement(const GleParams& p, double t);

/// FDT variance 2 kT int_0^t G(u) [lambda1 G(u) + lambda2 I^(1-gamma) G(u)] du,
/// which equals 2 kT {int G - int G D^alpha G} without the cancellation
/// between the two integrals at short times.
double variance(const GleParams& p, double t);

/// int_0^(i dt) G(u) du for i = 0..n.  Closed forms when lambda1 == 0 or in
/// overdamped mode; otherwise the lambda1 series evaluated on this grid.
std::vector<double> green_integral_grid(const GleParams& p, double dt, int n);

/// x_mean(i dt) for i = 0..n, using the same routes as green_integral_grid.
std::vector<double> mean_displacement_grid(const GleParams& p, double dt, int n);

/// (x_mean - x0)^2 + variance.
double msd(const GleParams& p, double t);

struct MsdPoint {
  double mean;      ///< x_mean - x0
  double variance;
  double msd;
};

/// Mean, variance and MSD at one time, sharing the grid work when lambda1 > 0.
MsdPoint msd_components(const GleParams& p, double t);

enum class CaseTag { case1, case2, case3, case3a, case3b };

const char* to_string(CaseTag tag) noexcept;
CaseTag parse_case_tag(const std::string& text);

enum class Regime { short_time, long_time };

const char* to_string(Regime regime) noexcept;

/// One limiting law quantity ~ prefactor * t^exponent (or ~ log t).
struct AsymptoticLaw {
  std::string quantity;              ///< "msd", "variance" or "mean"
  Regime regime;
  double exponent;
  std::optional<double> prefactor;   ///< absent when only the exponent is known
  bool logarithmic = false;          ///< quantity ~ log t (exponent is 0)
  std::string condition;
};

struct AsymptoticOptions {
  /// Case 2 noise C(t) = c t^-noise_exponent; defaults to gamma (FDT).
  std::optional<double> noise_exponent;
  /// Case 3a: use Gamma(1-gamma) in the long-time prefactor instead of Gamma(1+gamma).
  bool paper_literal_case3a = false;
};

/// Leading short- and long-time laws for the named case.  Throws
/// ParameterError when the parameters do not fit the case.
std::vector<AsymptoticLaw> asymptotic_laws(const GleParams& p, CaseTag tag,
                                           const AsymptoticOptions& options = {});

}  // namespace sfd
