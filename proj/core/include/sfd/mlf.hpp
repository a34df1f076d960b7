#pragma once

namespace sfd {

/// Orders (alpha, beta) of the two-parameter Mittag-Leffler function
///   E_{alpha,beta}(z) = sum_n z^n / Gamma(alpha n + beta).
/// Construction validates 0 < alpha <= 2 and beta > 0.
class MLOrder {
 public:
  MLOrder(double alpha, double beta);

  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }

 private:
  double alpha_;
  double beta_;
};

enum class MLMethod {
  zero_argument,  ///< z == 0, exactly 1/Gamma(beta)
  taylor,         ///< compensated power series
  asymptotic,     ///< optimally truncated large-argument expansion
  kummer,         ///< alpha == 1: exp(-x) times a positive-term confluent series
  integral,       ///< collapsed Hankel contour, plus pole residues for alpha > 1
};

const char* to_string(MLMethod method) noexcept;

struct MLEvaluation {
  double value;
  double error_bound;  ///< absolute
  MLMethod method;
};

/// Evaluates E_{alpha,beta}(z) for real z.  Negative arguments are the
/// production domain; positive z is accepted for alpha >= 1/2 only.
/// Throws AccuracyError when the mid-range quadrature misses its tolerance.
MLEvaluation ml_evaluate(const MLOrder& order, double z);

/// Value-only shorthand for ml_evaluate.
double ml_eval(const MLOrder& order, double z);

/// t^power * E_{alpha,beta}(-lambda t^alpha); t > 0, lambda >= 0.
double ml_kernel(const MLOrder& order, double lambda, double power, double t);

// Individual evaluation routes.  ml_evaluate picks among them; they are
// exposed for cross-checking one against another.

/// Power series in double precision with Neumaier summation.  The error bound
/// scales with the largest term, so it degrades quickly for large negative z.
MLEvaluation ml_taylor(const MLOrder& order, double z);

/// Power series summed in binary128; usable wherever the largest term stays
/// below ~1e20 times the result.
MLEvaluation ml_taylor_extended(const MLOrder& order, double z);

/// Large-argument expansion for z < 0, truncated at the smallest term (at most
/// 20 terms).  For alpha > 1 the two pole contributions
/// (2/alpha) Re[exp(u) u^(1-beta)], u = |z|^(1/alpha) exp(i pi/alpha), are
/// included; for alpha == 1 and integer beta the exact exponential term is
/// included.  error_bound is the first omitted term.
MLEvaluation ml_asymptotic(const MLOrder& order, double z);

/// Integral representation for z < 0 (alpha != 1): the Hankel contour of the
/// reciprocal-Gamma representation collapsed onto the negative real axis.
MLEvaluation ml_integral(const MLOrder& order, double z);

}  // namespace sfd
