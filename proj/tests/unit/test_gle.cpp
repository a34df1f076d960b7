#include <doctest.h>

#include <cmath>
#include <complex>
#include <initializer_list>

#include "sfd/errors.hpp"
#include "sfd/gle.hpp"
#include "sfd/laplace.hpp"
#include "sfd/mlf.hpp"
#include "sfd/special.hpp"

using namespace sfd;

namespace {

GleParams half_half(double lambda1 = 0.0) {
  GleParams p;
  p.alpha = 0.5;
  p.gamma = 0.5;
  p.lambda1 = lambda1;
  p.lambda2 = 1.0;
  return p;
}

GleParams overdamped(double kT = 1.0) {
  GleParams p;
  p.overdamped = true;
  p.lambda1 = 1.0;
  p.lambda2 = 1.0;
  p.gamma = 0.5;
  p.kT = kT;
  return p;
}

const AsymptoticLaw& find(const std::vector<AsymptoticLaw>& laws, const std::string& q, Regime r) {
  for (const auto& l : laws) {
    if (l.quantity == q && l.regime == r) return l;
  }
  FAIL("law not found: " << q);
  return laws.front();
}

}  // namespace

TEST_CASE("GleParams validation") {
  GleParams p;
  CHECK_NOTHROW(p.validate());
  p.alpha = 1.5;
  CHECK_THROWS_AS(p.validate(), ParameterError);
  p = GleParams{};
  p.kT = 0.0;
  CHECK_THROWS_AS(p.validate(), ParameterError);
  p = GleParams{};
  p.lambda1 = -1.0;
  CHECK_THROWS_AS(p.validate(), ParameterError);
  p = GleParams{};
  p.overdamped = true;
  CHECK_THROWS_AS(p.validate(), ParameterError);  // needs lambda1 > 0
  p = GleParams{};
  p.kT = 4.0;
  CHECK(p.velocity() == 2.0);
  CHECK(p.force_amplitude() == 2.0);
  p.force_a1 = 0.5;
  CHECK(p.force_amplitude() == 1.0);
}

TEST_CASE("green_closed examples") {
  const double t = 1e-8;
  CHECK(green_closed(half_half(), t) / (std::sqrt(t) * rgamma(1.5)) == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(green_closed(overdamped(), 1.0) == doctest::Approx(0.42758357615580700441).epsilon(1e-12));
  GleParams p;
  p.alpha = 1.0;
  p.gamma = 0.5;
  p.lambda2 = 1.0;
  CHECK(green_closed(p, 1.0) == doctest::Approx(0.73748224790189471418).epsilon(1e-12));
  CHECK_THROWS_AS(green_closed(half_half(0.1), 1.0), UnsupportedBranchError);
  CHECK_THROWS_AS(green_closed(half_half(), 0.0), DomainError);
}

TEST_CASE("green_series examples") {
  const SeriesEstimate zero = green_series(half_half(), 1.0);
  CHECK(zero.value == green_closed(half_half(), 1.0));
  CHECK(zero.terms == 0);

  const GleParams p = half_half(0.1);
  const SeriesEstimate s = green_series(p, 1.0);
  const double talbot_value = invert_at(TransferSpec{0.5, 0.5, 0.1, 1.0, false, false}, 1.0);
  CHECK(std::fabs(s.value - talbot_value) <= 1e-5 * std::fabs(talbot_value));
  CHECK(s.error_bound <= 1e-8);

  // First correction -lambda1 (G0 * G0')(t); its transform is
  // -lambda1 s / (s^(alpha+1) + lambda2 s^gamma)^2.
  const SeriesEstimate one = green_series(p, 1.0, 1);
  const double conv = invert_at(
      [](std::complex<double> z) {
        const auto d = std::pow(z, 1.5) + std::pow(z, 0.5);
        return z / (d * d);
      },
      1.0);
  CHECK(std::fabs((one.value - green_closed(half_half(), 1.0)) - (-0.1 * conv)) <= 1e-6);

  CHECK_THROWS_AS(green_series(p, 1.0, 0), ParameterError);
  CHECK_THROWS_AS(green_series(overdamped(), 1.0), UnsupportedBranchError);
}

TEST_CASE("green_series reports divergence") {
  GleParams p = half_half(30.0);
  p.lambda2 = 0.01;
  CHECK_THROWS_AS(green_series(p, 20.0, 25, 256), DivergenceError);
}

TEST_CASE("mean_displacement examples") {
  GleParams p = half_half();
  p.v0 = 0.0;
  p.force_amp = 0.0;
  p.x0 = 3.0;
  for (double t : {0.01, 1.0, 100.0}) CHECK(mean_displacement(p, t) == 3.0);

  p.x0 = 0.0;
  p.v0 = 1.0;
  const double t = 1e-6;
  CHECK(mean_displacement(p, t) / t == doctest::Approx(1.0).epsilon(1e-3));
  p.force_amp = 1.0;
  p.kappa = 1.0;
  CHECK(mean_displacement(p, t) / (t + std::sqrt(t) * rgamma(1.5)) == doctest::Approx(1.0).epsilon(1e-4));

  GleParams q = overdamped();
  q.x0 = 1.5;
  CHECK(mean_displacement(q, 2.0) == 1.5);
}

TEST_CASE("variance examples") {
  CHECK(variance(overdamped(0.5), 1.0) == doctest::Approx(0.55596274325131957831).epsilon(1e-12));
  for (double t : {1e-4, 1e-5, 1e-6}) {
    CHECK(variance(overdamped(), t) / (2.0 * t) == doctest::Approx(1.0).epsilon(0.01));
  }
  const double t = 1e-6;
  const double short_law = 2.0 * std::pow(t, 2.5) / (2.5 * std::tgamma(1.5) * std::tgamma(2.0));
  CHECK(variance(half_half(), t) / short_law == doctest::Approx(1.0).epsilon(0.01));
  GleParams none = half_half();
  none.lambda2 = 0.0;
  CHECK_THROWS_AS(variance(none, 1.0), ParameterError);
}

TEST_CASE("msd examples") {
  GleParams p = half_half();
  p.v0 = 0.0;
  p.force_amp = 0.0;
  CHECK(msd(p, 2.0) == variance(p, 2.0));
  CHECK(msd(overdamped(), 2.0) == variance(overdamped(), 2.0));

  GleParams q = half_half();
  q.kappa = 1.0;
  q.force_amp = 1.0;
  const double t = 1e-7;
  CHECK(msd(q, t) / (t * rgamma(1.5) * rgamma(1.5)) == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("grid helpers agree with the pointwise routes") {
  const GleParams p = half_half();
  const auto ig = green_integral_grid(p, 0.05, 40);
  CHECK(ig[0] == 0.0);
  // int G0 = t^(alpha+1) E_{a,alpha+2}(-lambda2 t^a).
  CHECK(ig[40] == doctest::Approx(ml_kernel(MLOrder(1.0, 2.5), 1.0, 1.5, 2.0)).epsilon(1e-13));
  const auto mean = mean_displacement_grid(p, 0.05, 40);
  CHECK(mean[40] == doctest::Approx(mean_displacement(p, 2.0)).epsilon(1e-13));

  const auto od = green_integral_grid(overdamped(), 0.1, 10);
  CHECK(od[10] == doctest::Approx(ml_kernel(MLOrder(0.5, 2.0), 1.0, 1.0, 1.0)).epsilon(1e-13));

  // lambda1 > 0: one grid level of the series against the refined route.
  GleParams q = half_half(0.1);
  q.force_amp = 0.0;
  const auto grid_mean = mean_displacement_grid(q, 1.0 / 1024, 1024);
  CHECK(grid_mean.back() == doctest::Approx(mean_displacement(q, 1.0)).epsilon(1e-4));
  const auto ig_q = green_integral_grid(q, 1.0 / 1024, 1024);
  const double ig_talbot = invert_at(
      [](std::complex<double> s) { return 1.0 / (s * (std::pow(s, 1.5) + 0.1 * s + std::sqrt(s))); }, 1.0);
  CHECK(ig_q.back() == doctest::Approx(ig_talbot).epsilon(1e-5));
}

TEST_CASE("asymptotic_laws examples") {
  GleParams c3 = half_half();
  c3.force_amp = 0.0;
  const auto laws = asymptotic_laws(c3, CaseTag::case3);
  const AsymptoticLaw& lng = find(laws, "msd", Regime::long_time);
  CHECK(lng.exponent == 0.5);
  CHECK(*lng.prefactor == doctest::Approx(2.0 / std::tgamma(1.5)).epsilon(1e-14));

  GleParams s3 = half_half();
  s3.alpha = 0.75;
  s3.kappa = 0.5;
  s3.force_amp = 0.0;
  s3.v0 = 1.0;
  const AsymptoticLaw& sh = find(asymptotic_laws(s3, CaseTag::case3), "msd", Regime::short_time);
  CHECK(sh.exponent == 2.0);
  CHECK(*sh.prefactor == doctest::Approx(1.0));

  GleParams b = half_half();
  b.kappa = 1.0;
  const auto lb = asymptotic_laws(b, CaseTag::case3b);
  const AsymptoticLaw& bs = find(lb, "msd", Regime::short_time);
  CHECK(bs.exponent == 1.0);
  CHECK(*bs.prefactor == doctest::Approx(rgamma(1.5) * rgamma(1.5)).epsilon(1e-14));
  const AsymptoticLaw& bl = find(lb, "msd", Regime::long_time);
  CHECK(bl.exponent == 0.5);
  CHECK(*bl.prefactor == doctest::Approx(2.0 * rgamma(1.5)).epsilon(1e-14));

  for (double zeta : {0.5, 0.9}) {
    GleParams c2 = half_half();
    c2.force_amp = 0.0;
    c2.gamma = (2.0 * zeta + 1.0) / 4.0;
    const auto l2 = asymptotic_laws(c2, CaseTag::case2, {zeta, false});
    CHECK(find(l2, "msd", Regime::long_time).exponent == doctest::Approx(0.5).epsilon(1e-14));
    CHECK_FALSE(find(l2, "msd", Regime::long_time).prefactor.has_value());
  }
  GleParams c2 = half_half();
  c2.force_amp = 0.0;
  CHECK(find(asymptotic_laws(c2, CaseTag::case2, {1.0, false}), "msd", Regime::long_time).logarithmic);

  GleParams c1;
  c1.lambda1 = 2.0;
  c1.lambda2 = 0.0;
  const auto l1 = asymptotic_laws(c1, CaseTag::case1);
  CHECK(find(l1, "msd", Regime::long_time).exponent == 1.0);
  CHECK(*find(l1, "variance", Regime::long_time).prefactor == doctest::Approx(1.0));  // 2 kT / lambda1
}

TEST_CASE("asymptotic_laws rejects mismatched cases") {
  CHECK_THROWS_AS(asymptotic_laws(half_half(), CaseTag::case1), ParameterError);
  GleParams forced;
  forced.lambda1 = 1.0;
  forced.lambda2 = 0.0;
  forced.force_amp = 1.0;
  CHECK_THROWS_AS(asymptotic_laws(forced, CaseTag::case1), ParameterError);
  CHECK_THROWS_AS(asymptotic_laws(half_half(), CaseTag::case3a), ParameterError);
  CHECK_THROWS_AS(asymptotic_laws(overdamped(), CaseTag::case3), ParameterError);
  CHECK_THROWS_AS(asymptotic_laws(half_half(0.1), CaseTag::case3b), ParameterError);
  CHECK_THROWS_AS(parse_case_tag("case9"), ParameterError);
  CHECK(parse_case_tag("case3a") == CaseTag::case3a);
}

TEST_CASE("case 3a prefactor variants") {
  const auto d = asymptotic_laws(overdamped(), CaseTag::case3a);
  const auto l = asymptotic_laws(overdamped(), CaseTag::case3a, {std::nullopt, true});
  const double ratio = *find(l, "msd", Regime::long_time).prefactor / *find(d, "msd", Regime::long_time).prefactor;
  CHECK(ratio == doctest::Approx(std::tgamma(1.5) / std::tgamma(0.5)).epsilon(1e-14));
  CHECK(*find(d, "msd", Regime::short_time).prefactor == 2.0);
}

TEST_CASE("variance quadrature far from the origin") {
  // Pieces starting above 0.5 once tripped an end-point assertion in the
  // tanh-sinh rule.
  GleParams p;
  p.alpha = 0.75;
  p.gamma = 0.5;
  p.lambda2 = 1.0;
  p.force_amp = 0.0;
  for (double t : {1e6, 3e6, 1e7}) {
    const double ratio = variance(p, t) / (2.0 * p.kT * std::sqrt(t) / std::tgamma(1.5));
    CHECK(ratio == doctest::Approx(1.0).epsilon(0.01));
  }
}
