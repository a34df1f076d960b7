#pragma once

#include <complex>
#include <functional>

namespace sfd {

/// Coefficients of the GLE transfer function
///   G~(s) = 1 / (s^(alpha+1) + lambda1 s + lambda2 s^gamma)
/// or, in overdamped mode, 1 / (lambda1 s + lambda2 s^gamma).
struct TransferSpec {
  double alpha = 1.0;
  double gamma = 1.0;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  bool overdamped = false;
  /// Permit lambda1 == lambda2 == 0 (free motion, G = t^alpha / Gamma(alpha+1)).
  bool allow_free = false;

  void validate() const;
};

/// Principal-branch evaluation of G~(s).  Throws DomainError for s == 0 or s
/// on the negative real axis.
std::complex<double> transfer_eval(const TransferSpec& spec, std::complex<double> s);

using Transform = std::function<std::complex<double>(std::complex<double>)>;

/// Fixed-Talbot estimate of the inverse transform at t with `nodes` quadrature
/// points on the full contour (only nodes/2 transform evaluations are needed
/// because of conjugate symmetry).  No convergence check.
double talbot(const Transform& transform, double t, int nodes);

/// talbot() plus a refinement check against a 3/4-size rule; a relative
/// disagreement above 1e-6 throws AccuracyError carrying both estimates'
/// best value and their difference.  Requires t > 0 and nodes >= 16.
double invert_at(const Transform& transform, double t, int nodes = 64);

/// Inverse transform of a GLE transfer function, i.e. the Green function G(t).
double invert_at(const TransferSpec& spec, double t, int nodes = 64);

}  // namespace sfd
