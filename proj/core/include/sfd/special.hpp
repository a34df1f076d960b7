#pragma once

namespace sfd {

/// Gamma function.  Returns +infinity at the poles (zero and negative
/// integers) and for arguments beyond the double range.
double gamma_fn(double x);

/// 1/Gamma(x); exactly zero at the poles of Gamma.
double rgamma(double x);

/// sin(pi x) with exact zeros at the integers.
double sin_pi(double x);

/// cos(pi x) with exact zeros at the half-integers.
double cos_pi(double x);

}  // namespace sfd
