#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <initializer_list>

#include "sfd/mlf.hpp"
#include "sfd/special.hpp"

using namespace sfd;

TEST_CASE("series and asymptotic expansion share an overlap window") {
  for (double alpha : {0.5, 0.75, 1.0, 1.5}) {
    for (double beta : {1.0, 2.0, 3.0}) {
      CAPTURE(alpha);
      CAPTURE(beta);
      // Scan upward; the series must still be resolvable in binary128 where
      // the expansion has already converged.
      int agreeing = 0;
      // Stop where x^(1/alpha) leaves the binary128 range of the series.
      for (double x = 2.0; std::pow(x, 1.0 / alpha) <= 40.0; x *= 1.1) {
        const MLEvaluation a = ml_asymptotic(MLOrder(alpha, beta), -x);
        const MLEvaluation s = ml_taylor_extended(MLOrder(alpha, beta), -x);
        if (std::fabs(a.value - s.value) <= 1e-8 * std::fabs(s.value)) ++agreeing;
      }
      CHECK(agreeing >= 1);
    }
  }
}

TEST_CASE("recurrence E(a,b) = z E(a,a+b) + 1/Gamma(b)") {
  for (double alpha : {0.3, 0.5, 0.75, 0.9, 1.0, 1.25, 1.5, 2.0}) {
    for (double beta : {0.5, 1.0, 1.5, 2.0, 3.0}) {
      for (double z : {-0.3, -2.0, -7.0, -15.0, -40.0, -90.0}) {
        const double lhs = ml_eval(MLOrder(alpha, beta), z);
        const double shifted = z * ml_eval(MLOrder(alpha, alpha + beta), z);
        const double rhs = shifted + rgamma(beta);
        // Relative to the largest term, since the right side cancels.
        const double scale = std::max({std::fabs(lhs), std::fabs(shifted), std::fabs(rgamma(beta))});
        CAPTURE(alpha);
        CAPTURE(beta);
        CAPTURE(z);
        CHECK(std::fabs(lhs - rhs) <= 1e-10 * scale);
      }
    }
  }
}

TEST_CASE("complete monotonicity for alpha <= 1, beta >= alpha") {
  for (double alpha : {0.2, 0.5, 0.8, 1.0}) {
    for (double beta : {alpha, 1.0, 1.7, 3.0}) {
      const MLOrder order(alpha, beta);
      double prev = ml_eval(order, 0.0);
      CHECK(prev > 0.0);
      for (double x = 0.25; x <= 100.0; x += 0.25) {
        const double v = ml_eval(order, -x);
        CAPTURE(alpha);
        CAPTURE(beta);
        CAPTURE(x);
        CHECK(v > 0.0);
        CHECK(v < prev);
        prev = v;
      }
    }
  }
}

TEST_CASE("zero argument gives 1/Gamma(beta) exactly") {
  for (double alpha : {0.1, 0.5, 1.0, 2.0}) {
    for (double beta : {0.2, 1.0, 2.5, 7.0}) {
      CHECK(ml_eval(MLOrder(alpha, beta), 0.0) == rgamma(beta));
    }
  }
}
