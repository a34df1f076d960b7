#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <initializer_list>
#include <string>

#include "sfd/msd_models.hpp"

using namespace sfd;

namespace {

struct Model {
  std::string name;
  std::function<double(double)> msd;
};

void check_limits(const PhysicalChannel& ch, const Model& m) {
  const double D0 = ch.D0();
  const double F = ch.F();
  const double tc = (F / D0) * (F / D0);  // 2 D0 t = 2 F sqrt t
  CAPTURE(m.name);
  CAPTURE(ch.theta);
  CHECK(m.msd(1e-4 * tc) / (2.0 * D0 * 1e-4 * tc) == doctest::Approx(1.0).epsilon(0.01));
  CHECK(m.msd(1e6 * tc) / (2.0 * F * std::sqrt(1e6 * tc)) == doctest::Approx(1.0).epsilon(0.01));
}

}  // namespace

TEST_CASE("every model matches both asymptotes") {
  for (const PhysicalChannel& ch : {PhysicalChannel{1.0, 0.5, 1.0}, PhysicalChannel{2.0, 0.2, 3.0},
                                    PhysicalChannel{0.5, 0.9, 0.1}}) {
    check_limits(ch, {"brandani", [&](double t) { return brandani_msd(ch, t); }});
    check_limits(ch, {"lin", [&](double t) { return lin_msd(ch.D0(), ch.F(), t); }});
    for (double beta : {1.0, 1.5, 2.0, 3.0}) {
      check_limits(ch, {"ml_family beta " + std::to_string(beta), [&](double t) { return ml_family_msd(ch, beta, 1.3, t); }});
    }

    // Three regimes: ballistic kT t^2 instead of 2 D0 t; crossover kT t^2 = 2 F sqrt t.
    const double kT = 0.7;
    const double lambda2 = three_regime_lambda2(kT, ch.F());
    const double tc = std::pow(2.0 * ch.F() / kT, 2.0 / 3.0);
    CHECK(three_regime_msd(kT, lambda2, 1e-4 * tc) / (kT * 1e-8 * tc * tc) == doctest::Approx(1.0).epsilon(0.01));
    CHECK(three_regime_msd(kT, lambda2, 1e6 * tc) / (2.0 * ch.F() * std::sqrt(1e6 * tc)) == doctest::Approx(1.0).epsilon(0.01));
  }
}

TEST_CASE("curves increase and local exponents stay in (0, 2]") {
  const PhysicalChannel ch{1.0, 0.5, 1.0};
  const auto grid = log_grid(1e-4, 1e6);
  const MsdCurve curves[] = {
      sample_curve([&](double t) { return brandani_msd(ch, t); }, grid, "brandani"),
      sample_curve([&](double t) { return lin_msd(ch.D0(), ch.F(), t); }, grid, "lin"),
      sample_curve([&](double t) { return ml_family_msd(ch, 1.0, 1.0, t); }, grid, "ml1"),
      sample_curve([&](double t) { return ml_family_msd(ch, 2.0, 1.0, t); }, grid, "ml2"),
      sample_curve([&](double t) { return ml_family_msd(ch, 3.0, 1.0, t); }, grid, "ml3"),
      sample_curve([](double t) { return three_regime_msd(1.0, 1.0, t); }, grid, "three_regime"),
  };
  for (const MsdCurve& c : curves) {
    CAPTURE(c.model_tag);
    for (std::size_t i = 1; i < c.values.size(); ++i) CHECK(c.values[i] > c.values[i - 1]);
    for (const SlopePoint& s : local_exponent(c)) CHECK((s.slope > 0.0 && s.slope <= 2.0 + 1e-9));
  }
}

TEST_CASE("Brandani and beta = 2 family gap") {
  const PhysicalChannel ch{1.0, 0.5, 1.0};
  double gap = 0.0;
  double at = 0.0;
  for (double t : log_grid(1e-3, 1e3)) {
    const double b = brandani_msd(ch, t);
    const double rel = std::fabs(ml_family_msd(ch, 2.0, 1.0, t) - b) / b;
    if (rel > gap) {
      gap = rel;
      at = t;
    }
  }
  MESSAGE("largest relative gap " << gap << " at t = " << at);
  CHECK(gap < 1.0);
}
