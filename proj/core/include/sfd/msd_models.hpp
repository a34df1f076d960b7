#pragma once

#include <functional>
#include <string>
#include <vector>

namespace sfd {

/// Pore model: jump length l, fractional occupancy theta, mean time between
/// jumps tau.  D0 and F are derived on demand.
struct PhysicalChannel {
  double l = 1.0;
  double theta = 0.5;
  double tau = 1.0;

  void validate() const;
  /// Self-diffusion coefficient l^2 (1 - theta) / (2 tau).
  double D0() const;
  /// SFD mobility l^2 (1 - theta) / (theta sqrt(2 pi tau)); long-time R^2 = 2 F sqrt(t).
  double F() const;
};

/// R^2(t) samples with optional standard errors.
struct MsdCurve {
  std::vector<double> times;
  std::vector<double> values;
  std::vector<double> stderr_values;  ///< empty when not available
  std::string model_tag;

  /// Throws ParameterError on mismatched lengths, non-increasing or
  /// non-positive times, or negative values.
  void validate() const;
};

/// Log-uniform grid from t_min to t_max inclusive.
std::vector<double> log_grid(double t_min, double t_max, int points_per_decade = 20);

/// Evaluates model(t) on the grid.
MsdCurve sample_curve(const std::function<double(double)>& model, const std::vector<double>& times,
                      const std::string& tag);

/// l^2 (1-theta) (t/tau) / (1 + theta sqrt(pi/2) sqrt(t/tau)).
double brandani_msd(const PhysicalChannel& ch, double t);

/// 2 D0 t / (1 + D0 sqrt(t) / F).
double lin_msd(double D0, double F, double t);

enum class LambdaConvention {
  matched,  ///< long-time limit equals 2 F sqrt(t) for every beta
  paper,    ///< theta Gamma(beta - 1/2) / sqrt(2 tau)
};

struct FamilyCalibration {
  double zeta_prime;
  double lambda_prime;        ///< matched
  double lambda_prime_paper;  ///< literal formula, for comparison
};

/// zeta' = l^2 (1-theta) Gamma(beta) / (2 kT tau);
/// matched lambda' = theta Gamma(beta) sqrt(pi) / (Gamma(beta - 1/2) sqrt(2 tau)).
/// Throws DomainError for beta < 1.
FamilyCalibration calibrate_family(const PhysicalChannel& ch, double beta, double kT);

/// 2 kT zeta' t E_{1/2,beta}(-lambda' sqrt(t)).
double ml_family_msd(const PhysicalChannel& ch, double beta, double kT, double t,
                     LambdaConvention convention = LambdaConvention::matched);

/// 2 kT t^2 E_{3/2,3}(-lambda2 t^(3/2)): ballistic, then normal, then SFD.
double three_regime_msd(double kT, double lambda2, double t);

/// lambda2 that makes the three-regime long-time limit equal 2 F sqrt(t).
double three_regime_lambda2(double kT, double F);

struct SlopePoint {
  double t;
  double slope;
};

/// d log R^2 / d log t: three-point nonuniform differences inside, one-sided
/// second-order differences at the two ends.  Needs >= 3 positive values.
std::vector<SlopePoint> local_exponent(const MsdCurve& curve);

struct RegimeInterval {
  double exponent;
  double t_enter;
  double t_exit;
};

/// Maximal runs of grid points with |slope - target| <= tol, for each target.
std::vector<RegimeInterval> regime_boundaries(const MsdCurve& curve, const std::vector<double>& targets, double tol);

}  // namespace sfd
