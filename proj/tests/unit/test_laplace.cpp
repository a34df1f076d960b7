#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "sfd/errors.hpp"
#include "sfd/laplace.hpp"
#include "sfd/mlf.hpp"

using namespace sfd;
using cd = std::complex<double>;

TEST_CASE("transfer_eval examples") {
  TransferSpec a{1.0, 1.0, 1.0, 0.0, false, false};
  CHECK(std::abs(transfer_eval(a, 2.0) - cd(1.0 / 6.0)) <= 1e-15);
  TransferSpec b{0.5, 0.5, 0.0, 1.0, false, false};
  CHECK(std::abs(transfer_eval(b, 1.0) - cd(0.5)) <= 1e-15);
  TransferSpec c{1.0, 0.5, 1.0, 1.0, true, false};
  CHECK(std::abs(transfer_eval(c, 4.0) - cd(1.0 / 6.0)) <= 1e-15);
}

TEST_CASE("transfer_eval domain") {
  TransferSpec b{0.5, 0.5, 0.0, 1.0, false, false};
  CHECK_THROWS_AS(transfer_eval(b, 0.0), DomainError);
  CHECK_THROWS_AS(transfer_eval(b, -1.0), DomainError);
  TransferSpec none{0.5, 0.5, 0.0, 0.0, false, false};
  CHECK_THROWS_AS(none.validate(), ParameterError);
  none.allow_free = true;
  CHECK_NOTHROW(none.validate());
  TransferSpec bad_alpha{1.5, 0.5, 0.0, 1.0, false, false};
  CHECK_THROWS_AS(bad_alpha.validate(), ParameterError);
}

TEST_CASE("invert_at examples") {
  for (double t : {0.1, 1.0, 10.0}) {
    CHECK(std::fabs(invert_at([](cd s) { return 1.0 / s; }, t) - 1.0) <= 1e-9);
  }
  CHECK(std::fabs(invert_at([](cd s) { return 1.0 / (s * s + 1.0); }, std::numbers::pi / 2) - 1.0) <= 1e-8);
  const double g = invert_at([](cd s) { return 1.0 / (std::pow(s, 1.5) + s); }, 1.0);
  CHECK(std::fabs(g - ml_kernel(MLOrder(0.5, 1.5), 1.0, 0.5, 1.0)) <= 1e-7);
}

TEST_CASE("free motion inverts to t^alpha / Gamma(alpha+1)") {
  TransferSpec free{0.5, 0.5, 0.0, 0.0, false, true};
  CHECK(invert_at(free, 2.0) == doctest::Approx(std::pow(2.0, 0.5) / std::tgamma(1.5)).epsilon(1e-9));
}

TEST_CASE("invert_at preconditions") {
  auto f = [](cd s) { return 1.0 / s; };
  CHECK_THROWS_AS(invert_at(f, 0.0), DomainError);
  CHECK_THROWS_AS(invert_at(f, 1.0, 8), ParameterError);
  // A transform with an essential singularity defeats the refinement check.
  CHECK_THROWS_AS(invert_at([](cd s) { return std::exp(-100.0 * std::sqrt(s)) * std::exp(50.0 * s); }, 1.0), AccuracyError);
}
