#pragma once

#include <vector>

#include "sfd/msd_models.hpp"

namespace sfd {

enum class DiffusionVariant {
  /// D0 sqrt(pi) E_{1/2,1}(-(2 D0 / F) sqrt(t)); D(0) = D0 sqrt(pi).
  paper,
  /// D0 E_{1/2,1}(-(2 D0 / (F sqrt(pi))) sqrt(t)); D(0) = D0, D ~ F / (2 sqrt(t)).
  matched,
};

const char* to_string(DiffusionVariant v) noexcept;
DiffusionVariant parse_diffusion_variant(const char* text);

/// Time-dependent diffusion coefficient.  F = +infinity gives D = D(0).
double diffusion_coefficient(double D0, double F, double t, DiffusionVariant variant);

/// s(t) = int_0^t D(u) du = D(0) t E_{1/2,2}(-k sqrt(t)) by termwise integration.
double integrated_diffusion(double D0, double F, double t, DiffusionVariant variant);

struct FpeSolution {
  std::vector<double> x_grid;
  std::vector<double> t_grid;
  std::vector<std::vector<double>> density;  ///< density[k][i] = W(x_i, t_k)
  std::vector<double> mass;
  double sigma0 = 0.0;  ///< standard deviation of the initial Gaussian
};

struct FpeOptions {
  /// Initial standard deviation; 0 selects 4 grid cells.  Must be at least 3 cells.
  double sigma0 = 0.0;
  /// Crank-Nicolson substeps in effective time satisfy
  /// ds <= step_fraction (sigma0^2 + 2 s).
  double step_fraction = 0.01;
};

/// dW/dt = D(t) d2W/dx2 on [-x_half_width, x_half_width] with no-flux ends,
/// from a centred Gaussian.  Each step uses the exact average of D over the
/// step, so the scheme is Crank-Nicolson in s(t).  Throws DomainTooSmallError
/// when the solution would reach (or reaches) 1e-12 of its peak at the ends.
FpeSolution solve_fpe(double D0, double F, double x_half_width, int nx, const std::vector<double>& t_grid,
                      DiffusionVariant variant, const FpeOptions& options = {});

/// Trapezoidal first moment of one slice.
double solution_mean(const FpeSolution& sol, std::size_t k);

/// Trapezoidal central second moment per output time (normalised by mass).
MsdCurve solution_variance(const FpeSolution& sol);

}  // namespace sfd
