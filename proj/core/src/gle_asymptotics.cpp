#include <cmath>
#include <string>
#include <vector>

#include "sfd/errors.hpp"
#include "sfd/gle.hpp"
#include "sfd/special.hpp"

namespace sfd {

namespace {

// A power law c t^e; c == 0 marks an absent contribution.
struct Power {
  double exponent = 0.0;
  double coefficient = 0.0;
};

// Keeps the smallest (short time) or largest (long time) exponent and adds
// coefficients of exactly equal exponents.
Power dominant(const std::vector<Power>& terms, Regime regime) {
  Power best;
  bool found = false;
  for (const Power& p : terms) {
    if (p.coefficient == 0.0) continue;
    if (!found) {
      best = p;
      found = true;
    } else if (p.exponent == best.exponent) {
      best.coefficient += p.coefficient;
    } else if ((regime == Regime::short_time) == (p.exponent < best.exponent)) {
      best = p;
    }
  }
  return best;
}

std::string compare(double lhs, double rhs, const std::string& l, const std::string& r) {
  if (lhs < rhs) return l + " < " + r;
  if (lhs > rhs) return l + " > " + r;
  return l + " = " + r;
}

AsymptoticLaw law(const std::string& quantity, Regime regime, const Power& p, const std::string& condition) {
  return {quantity, regime, p.exponent, p.coefficient, false, condition};
}

// Laws shared by Cases 1, 3 and 3b: expand G~ around s = infinity (short) and
// s = 0 (long) and square the mean.
std::vector<AsymptoticLaw> generic_laws(const GleParams& p) {
  const double al = p.alpha;
  const double ga = p.gamma;
  const double ka = p.kappa;
  const double v0 = p.velocity();
  const double a = p.force_amplitude();
  const double two_kt = 2.0 * p.kT;
  std::vector<AsymptoticLaw> out;

  // Short time: G ~ t^alpha / Gamma(alpha+1).
  const Power mean_short = dominant({{1.0, v0}, {al - ka + 1.0, a * rgamma(al - ka + 2.0)}}, Regime::short_time);
  const Power var_short = dominant(
      {{2.0 * al + 1.0, two_kt * p.lambda1 / (2.0 * al + 1.0) * rgamma(al + 1.0) * rgamma(al + 1.0)},
       {2.0 * al - ga + 2.0, two_kt * p.lambda2 / (2.0 * al - ga + 2.0) * rgamma(al + 1.0) * rgamma(al - ga + 2.0)}},
      Regime::short_time);

  // Long time: the kernel term with the smallest power of s dominates.
  double lam = p.lambda2;
  double ge = ga;
  if (p.lambda2 == 0.0) {
    lam = p.lambda1;
    ge = 1.0;
  } else if (ga == 1.0) {
    lam = p.lambda1 + p.lambda2;
  }
  const Power mean_long = dominant({{ge - al, v0 * rgamma(ge - al + 1.0) / lam},
                                    {ge - ka, a * rgamma(ge - ka + 1.0) / lam}},
                                   Regime::long_time);
  const Power var_long{ge, two_kt * rgamma(ge + 1.0) / lam};

  std::string mean_tag_short;
  if (a == 0.0) {
    mean_tag_short = "a = 0";
  } else if (v0 == 0.0) {
    mean_tag_short = "v0 = 0";
  } else {
    mean_tag_short = compare(al, ka, "alpha", "kappa");
  }
  const std::string var_tag_short = p.lambda1 > 0.0 ? "lambda1 > 0" : "lambda1 = 0";
  const std::string long_tag = p.lambda2 == 0.0 ? "lambda2 = 0" : "lambda2 > 0";

  if (mean_short.coefficient != 0.0) out.push_back(law("mean", Regime::short_time, mean_short, mean_tag_short));
  out.push_back(law("variance", Regime::short_time, var_short, var_tag_short));
  if (mean_long.coefficient != 0.0) out.push_back(law("mean", Regime::long_time, mean_long, long_tag));
  out.push_back(law("variance", Regime::long_time, var_long, long_tag));

  const Power sq_short{2.0 * mean_short.exponent, mean_short.coefficient * mean_short.coefficient};
  const Power msd_short = dominant({sq_short, var_short}, Regime::short_time);
  std::string msd_tag_short = mean_tag_short;
  if (sq_short.coefficient != 0.0) {
    msd_tag_short += "; " + compare(sq_short.exponent, var_short.exponent, "mean^2 exponent", "variance exponent");
  }
  out.push_back(law("msd", Regime::short_time, msd_short, msd_tag_short));

  const Power sq_long{2.0 * mean_long.exponent, mean_long.coefficient * mean_long.coefficient};
  const Power msd_long = dominant({sq_long, var_long}, Regime::long_time);
  std::string msd_tag_long = long_tag;
  if (sq_long.coefficient != 0.0 && mean_long.exponent == ge - al) {
    // The velocity term sets the mean: compare gamma with 2 alpha.
    msd_tag_long += "; " + compare(ge, 2.0 * al, ge == ga ? "gamma" : "1", "2 alpha");
  } else if (sq_long.coefficient != 0.0) {
    msd_tag_long += "; " + compare(sq_long.exponent, ge, "mean^2 exponent", "variance exponent");
  }
  out.push_back(law("msd", Regime::long_time, msd_long, msd_tag_long));
  return out;
}

void require(bool ok, CaseTag tag, const std::string& what) {
  if (!ok) throw ParameterError(std::string("asymptotic_laws(") + to_string(tag) + "): " + what);
}

}  // namespace

const char* to_string(CaseTag tag) noexcept {
  switch (tag) {
    case CaseTag::case1: return "case1";
    case CaseTag::case2: return "case2";
    case CaseTag::case3: return "case3";
    case CaseTag::case3a: return "case3a";
    case CaseTag::case3b: return "case3b";
  }
  return "unknown";
}

CaseTag parse_case_tag(const std::string& text) {
  for (CaseTag t : {CaseTag::case1, CaseTag::case2, CaseTag::case3, CaseTag::case3a, CaseTag::case3b}) {
    if (text == to_string(t)) return t;
  }
  throw ParameterError("unknown case tag '" + text + "'");
}

const char* to_string(Regime regime) noexcept {
  return regime == Regime::short_time ? "short" : "long";
}

std::vector<AsymptoticLaw> asymptotic_laws(const GleParams& p, CaseTag tag, const AsymptoticOptions& options) {
  p.validate();
  const bool no_force = !p.force_amp || *p.force_amp == 0.0;
  switch (tag) {
    case CaseTag::case1: {
      require(!p.overdamped, tag, "the model must not be overdamped");
      require(p.lambda1 > 0.0 && p.lambda2 == 0.0, tag, "needs lambda1 > 0 and lambda2 = 0");
      require(no_force, tag, "the case has no external force (a must be 0)");
      GleParams q = p;
      q.force_amp = 0.0;
      return generic_laws(q);
    }
    case CaseTag::case2: {
      require(!p.overdamped, tag, "the model must not be overdamped");
      require(p.lambda1 == 0.0 && p.lambda2 > 0.0, tag, "needs lambda1 = 0 and lambda2 > 0");
      require(no_force, tag, "the case has no external force (a must be 0)");
      const double zeta = options.noise_exponent.value_or(p.gamma);
      require(zeta > 0.0 && zeta <= 1.0, tag, "noise exponent must lie in (0, 1]");
      std::vector<AsymptoticLaw> out;
      if (p.alpha >= zeta / 2.0) {
        out.push_back({"msd", Regime::short_time, 2.0, std::nullopt, false, "alpha >= zeta/2"});
      } else {
        out.push_back({"msd", Regime::short_time, 2.0 + 2.0 * p.alpha - zeta, std::nullopt, false, "alpha < zeta/2"});
      }
      if (p.gamma > zeta / 2.0) {
        out.push_back({"msd", Regime::long_time, 2.0 * p.gamma - zeta, std::nullopt, false, "gamma > zeta/2"});
      } else if (p.gamma == zeta / 2.0) {
        out.push_back({"msd", Regime::long_time, 0.0, std::nullopt, true, "gamma = zeta/2"});
      } else {
        out.push_back({"msd", Regime::long_time, 0.0, std::nullopt, false, "gamma < zeta/2"});
      }
      return out;
    }
    case CaseTag::case3:
      require(!p.overdamped, tag, "the model must not be overdamped");
      require(p.lambda2 > 0.0, tag, "needs lambda2 > 0");
      return generic_laws(p);
    case CaseTag::case3b:
      require(!p.overdamped, tag, "the model must not be overdamped");
      require(p.lambda1 == 0.0 && p.lambda2 > 0.0, tag, "needs lambda1 = 0 and lambda2 > 0");
      return generic_laws(p);
    case CaseTag::case3a: {
      require(p.overdamped, tag, "the model must be overdamped");
      require(p.lambda2 > 0.0 && p.gamma < 1.0, tag, "needs lambda2 > 0 and gamma < 1");
      const double zeta = 1.0 / p.lambda1;
      const double lambda = p.lambda2 / p.lambda1;
      const double two_kt_zeta = 2.0 * p.kT * zeta;
      const double g = options.paper_literal_case3a ? gamma_fn(1.0 - p.gamma) : gamma_fn(1.0 + p.gamma);
      const std::string tag_long = options.paper_literal_case3a ? "Gamma(1-gamma) prefactor" : "Gamma(1+gamma) prefactor";
      std::vector<AsymptoticLaw> out;
      for (const char* q : {"variance", "msd"}) {
        out.push_back({q, Regime::short_time, 1.0, two_kt_zeta, false, "overdamped"});
        out.push_back({q, Regime::long_time, p.gamma, two_kt_zeta / (lambda * g), false, tag_long});
      }
      return out;
    }
  }
  throw ParameterError("asymptotic_laws: unknown case");
}

}  // namespace sfd
