#pragma once

#include <stdexcept>
#include <string>

namespace sfd {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid input: bad parameter values, inconsistent case tags, malformed grids.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the mathematical domain of an operation (e.g. a
/// non-integrable power, s on the branch cut).
class DomainError : public ParameterError {
 public:
  using ParameterError::ParameterError;
};

/// The requested evaluation route does not apply to these parameters.
class UnsupportedBranchError : public ParameterError {
 public:
  using ParameterError::ParameterError;
};

/// A numerical method could not certify its result.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Accuracy target missed; carries the best available estimate and a bound on
/// its error.
class AccuracyError : public NumericalError {
 public:
  AccuracyError(const std::string& what, double estimate, double error_bound)
      : NumericalError(what), estimate_(estimate), error_bound_(error_bound) {}

  double estimate() const noexcept { return estimate_; }
  double error_bound() const noexcept { return error_bound_; }

 private:
  double estimate_;
  double error_bound_;
};

/// Series whose terms stopped decreasing.
class DivergenceError : public NumericalError {
 public:
  DivergenceError(const std::string& what, double partial_sum, double last_term)
      : NumericalError(what), partial_sum_(partial_sum), last_term_(last_term) {}

  double partial_sum() const noexcept { return partial_sum_; }
  double last_term() const noexcept { return last_term_; }

 private:
  double partial_sum_;
  double last_term_;
};

/// Circulant embedding produced too much negative spectral mass.
class SynthesisError : public NumericalError {
 public:
  SynthesisError(const std::string& what, double clipped_fraction)
      : NumericalError(what), clipped_fraction_(clipped_fraction) {}

  double clipped_fraction() const noexcept { return clipped_fraction_; }

 private:
  double clipped_fraction_;
};

/// Truncated spatial domain lets probability reach the boundary.
class DomainTooSmallError : public NumericalError {
 public:
  DomainTooSmallError(const std::string& what, double suggested_half_width)
      : NumericalError(what), suggested_half_width_(suggested_half_width) {}

  double suggested_half_width() const noexcept { return suggested_half_width_; }

 private:
  double suggested_half_width_;
};

}  // namespace sfd
