#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

using namespace rikit;

namespace {

// phi(t)^p / t * int_0^t phi^{-p}, by quadrature.
double b_ratio(const std::function<double(double)>& phi, double p, double t) {
  const double inner = oracle::integrate([&](double s) { return std::pow(phi(s), -p); }, 0.0, t);
  return std::pow(phi(t), p) * inner / t;
}

// Quasi-concave on (0, inf): increasing with phi(t)/t decreasing.
std::vector<FundamentalFn> assorted_phis() {
  return {FundamentalFn::power(0.5),
          FundamentalFn::power(0.3).capped(4.0),
          FundamentalFn::power_log(0.5, 0.5),
          FundamentalFn::power_log(0.25, -0.25),
          FundamentalFn::max_of({FundamentalFn::power(0.2), FundamentalFn::power(0.7)}),
          FundamentalFn::sampled({0.5, 1.0, 3.0, 8.0}, {1.0, 1.5, 2.2, 2.6}, 2.6)};
}

}  // namespace

TEST(Zippin, PowersAreExact) {
  for (double p : {1.0, 1.5, 2.0, 4.0}) {
    const IndexReport r = zippin_upper(FundamentalFn::power(1.0 / p));
    EXPECT_TRUE(r.beta_exact);
    EXPECT_DOUBLE_EQ(r.beta_upper, 1.0 / p);
  }
  const IndexReport c = zippin_upper(FundamentalFn::power(0.0, 2.0));
  EXPECT_DOUBLE_EQ(c.beta_upper, 0.0);
  for (const auto& [s, k] : c.k_samples) EXPECT_DOUBLE_EQ(k, 1.0) << s;
}

TEST(Zippin, MaxOfTwoPowersFollowsTheLargerExponent) {
  for (auto [q, s0] : {std::pair{2.0, 4.0}, {1.5, 3.0}, {3.0, 8.0}}) {
    const FundamentalFn phi =
        FundamentalFn::max_of({FundamentalFn::power(1.0 / q), FundamentalFn::power(1.0 / s0)});
    const IndexReport r = zippin_upper(phi);
    EXPECT_FALSE(r.beta_exact);
    EXPECT_NEAR(r.beta_upper, 1.0 / q, 1e-6);
  }
  // Capping turns t^{1/2} into a numeric case with the same local growth.
  EXPECT_NEAR(zippin_upper(FundamentalFn::power(0.5).capped(1.0)).beta_upper, 0.5, 1e-6);
}

TEST(Zippin, DilationGrowthBetweenOneAndS) {
  for (const auto& phi : assorted_phis()) {
    for (const auto& [s, k] : zippin_upper(phi).k_samples) {
      EXPECT_GE(k, 1.0 - 1e-12);
      EXPECT_LE(k, s * (1.0 + 1e-12));
    }
  }
}

TEST(Boyd, LebesgueAndLorentzClosedForm) {
  for (double p : {1.0, 2.0, 3.5}) {
    const IndexReport r = boyd_upper_lowerbound(NormSpec::lp(p));
    EXPECT_TRUE(r.alpha_exact);
    EXPECT_DOUBLE_EQ(r.alpha_lower, 1.0 / p);
  }
  EXPECT_DOUBLE_EQ(boyd_upper_lowerbound(NormSpec::lorentz(4.0, 2.0)).alpha_lower, 0.25);
}

TEST(Boyd, IndicatorCandidatesOnWeakMarcinkiewicz) {
  for (double p : {1.5, 2.0, 3.0}) {
    const NormSpec spec = NormSpec::weak_marcinkiewicz(FundamentalFn::power(1.0 / p));
    const IndexReport r = boyd_upper_lowerbound(spec, {indicator(1.0), indicator(0.25)});
    EXPECT_TRUE(r.lower_bound_only);
    // The dilated indicator of (0, a) is the indicator of (0, s a), whose norm is (s a)^{1/p}.
    for (const auto& [s, h] : r.h_samples) EXPECT_NEAR(h, std::pow(s, 1.0 / p), 1e-12 * h);
    EXPECT_NEAR(r.alpha_lower, 1.0 / p, 1e-12);
  }
}

TEST(Boyd, ZeroCandidatesRejected) {
  const NormSpec spec = NormSpec::weak_marcinkiewicz(FundamentalFn::power(0.5));
  try {
    boyd_upper_lowerbound(spec, {make_grid_fn({0.0, 1.0}, {ExtReal(0.0)}, 0.0)});
    FAIL() << "expected DegenerateInput";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegenerateInput);
  }
}

TEST(CriterionB, PowerClosedForms) {
  for (auto [p, q] : {std::pair{1.0, 2.0}, {1.0, 4.0}, {2.0, 3.0}, {2.0, 4.0}}) {
    EXPECT_NEAR(criterion_B(FundamentalFn::power(1.0 / q), p).value.value(), q / (q - p), 1e-12);
  }
  EXPECT_TRUE(criterion_B(FundamentalFn::power(0.5), 2.0).value.is_inf());
  EXPECT_TRUE(criterion_B(FundamentalFn::power(1.0 / 3.0), 4.0).value.is_inf());
  EXPECT_DOUBLE_EQ(criterion_B(FundamentalFn::power(0.5), 1.0).value.value(), 2.0);
}

TEST(CriterionB, NumericPathAgreesWithPowers) {
  // capped() disables the closed form while leaving phi unchanged on (0, 1].
  for (auto [p, q] : {std::pair{1.0, 2.0}, {1.0, 4.0}, {2.0, 3.0}, {2.0, 4.0}}) {
    const CriterionB b = criterion_B(FundamentalFn::power(1.0 / q).capped(8.0), p);
    ASSERT_FALSE(b.grid.empty());
    EXPECT_NEAR(b.value.value(), q / (q - p), 1e-4 * q / (q - p));
  }
  // Linear near the origin: phi^{-p} is not integrable there.
  const FundamentalFn lin = FundamentalFn::sampled({1.0, 2.0}, {1.0, 1.5}, 1.5);
  EXPECT_TRUE(criterion_B(lin, 1.0).value.is_inf());
}

TEST(CriterionB, NonPowerAgainstQuadrature) {
  struct Case {
    FundamentalFn phi;
    std::function<double(double)> f;
    double p;
  };
  const std::vector<Case> cases{
      {FundamentalFn::power_log(0.5, 1.0), [](double t) { return std::sqrt(t) * (1.0 + std::fabs(std::log(t))); }, 1.0},
      {FundamentalFn::power_log(0.25, -0.5),
       [](double t) { return std::pow(t, 0.25) / std::sqrt(1.0 + std::fabs(std::log(t))); }, 2.0},
      {FundamentalFn::max_of({FundamentalFn::power(0.5), FundamentalFn::power(0.25)}),
       [](double t) { return std::max(std::sqrt(t), std::pow(t, 0.25)); }, 1.0},
  };
  for (const auto& c : cases) {
    const double lib = criterion_B(c.phi, c.p).value.value();
    double best = 0.0;
    for (int j = 0; j <= 240; ++j) best = std::max(best, b_ratio(c.f, c.p, std::exp2(-j / 4.0)));
    EXPECT_GE(lib, best * (1.0 - 1e-6));
    EXPECT_NEAR(lib, best, 1e-3 * best);
  }
}

TEST(MPhi, ClosedFormsAndNumeric) {
  for (auto [p, q] : {std::pair{1.0, 2.0}, {2.0, 3.0}, {1.5, 4.0}}) {
    const double expect = std::pow(q / (q - p), 1.0 / p);
    EXPECT_NEAR(m_phi_norm(FundamentalFn::power(1.0 / q), p).value.value(), expect, 1e-12);
    EXPECT_NEAR(m_phi_norm(FundamentalFn::power(1.0 / q).capped(4.0), p).value.value(), expect, 1e-3 * expect);
  }
  EXPECT_DOUBLE_EQ(m_phi_norm(FundamentalFn::power(0.0, 3.0), 2.0).value.value(), 1.0);
  EXPECT_TRUE(m_phi_norm(FundamentalFn::power(0.5), 2.0).value.is_inf());
  EXPECT_TRUE(m_phi_norm(FundamentalFn::power(0.5).capped(4.0), 2.0).value.is_inf());
}

TEST(DensityReport, LorentzBelowItsExponent) {
  const CriteriaReport r = density_criteria_report(NormSpec::lorentz(3.0, 2.0), 2.0, false);
  EXPECT_EQ(r.at("v").verdict, Verdict::True);
  EXPECT_EQ(r.at("iv").verdict, Verdict::True);
  EXPECT_EQ(r.at("ix").verdict, Verdict::True);
  EXPECT_EQ(r.overall, Verdict::True);
  EXPECT_TRUE(r.complete_conditions.empty());
  EXPECT_EQ(r.conditions.size(), 9u);
}

TEST(DensityReport, CompleteSpaceVariant) {
  const CriteriaReport a = density_criteria_report(NormSpec::lp(2.0), 2.0, true);
  ASSERT_EQ(a.complete_conditions.size(), 4u);
  EXPECT_EQ(a.complete_conditions[0].id, "i");
  EXPECT_EQ(a.complete_conditions[0].verdict, Verdict::True);
  EXPECT_EQ(a.at("iv").verdict, Verdict::False);
  EXPECT_EQ(a.overall, Verdict::True);

  const CriteriaReport b = density_criteria_report(NormSpec::lorentz(3.0, 2.0), 2.0, true);
  EXPECT_EQ(b.complete_conditions[0].verdict, Verdict::True);
}

TEST(DensityReport, WeakTypeSpaceWarns) {
  for (const NormSpec& spec :
       {NormSpec::weak_marcinkiewicz(FundamentalFn::power(0.5)), NormSpec::lorentz_inf(2.0)}) {
    const CriteriaReport r = density_criteria_report(spec, 2.0, false);
    EXPECT_NE(r.overall, Verdict::True);
    bool found = false;
    for (const auto& w : r.warnings) found = found || w.find("L^{p,inf}-type space") != std::string::npos;
    EXPECT_TRUE(found);
  }
}

TEST(DensityReport, ImplicationsCoherentOverSweep) {
  std::vector<NormSpec> specs{NormSpec::lp(1.0), NormSpec::lp(2.0), NormSpec::lp(4.0),
                              NormSpec::lorentz(3.0, 1.0), NormSpec::lorentz(2.0, 4.0),
                              NormSpec::lorentz_inf(3.0)};
  for (const auto& phi : assorted_phis()) {
    specs.push_back(NormSpec::lambda(phi));
    specs.push_back(NormSpec::lambda_q(phi, 2.0));
    specs.push_back(NormSpec::marcinkiewicz(phi));
  }
  for (const auto& s : specs) {
    for (double p : {1.0, 1.5, 2.0, 3.0}) {
      for (bool complete : {false, true}) {
        const CriteriaReport r = density_criteria_report(s, p, complete);
        const auto bad = implication_violations(r);
        EXPECT_TRUE(bad.empty()) << io::to_shorthand(s) << " p=" << p << " " << (bad.empty() ? "" : bad[0]);
      }
    }
  }
}

TEST(DensityReport, WeakBoundednessFromCriterionB) {
  // sup_{t<1} M_p u*(t) phi(t) <= B^{1/p} sup_t u*(t) phi(t): bound u* by A / phi under the average.
  std::mt19937_64 g(31);
  std::uniform_real_distribution<double> v(0.0, 4.0), w(0.01, 0.4);
  const std::vector<std::pair<FundamentalFn, double>> cases{
      {FundamentalFn::power_log(0.5, 1.0), 1.0},
      {FundamentalFn::power_log(0.25, -0.5), 2.0},
      {FundamentalFn::max_of({FundamentalFn::power(0.5), FundamentalFn::power(0.25)}), 1.0}};
  for (const auto& [phi, p] : cases) {
    const double B = criterion_B(phi, p).value.value();
    for (int rep = 0; rep < 20; ++rep) {
      WeightedSamples u;
      for (int i = 0; i < 8; ++i) {
        u.values.push_back(v(g));
        u.weights.push_back(w(g));
      }
      const GridFn us = decreasing_rearrangement(u);
      double A = 0.0;
      for (std::size_t i = 0; i < us.cells(); ++i) A = std::max(A, us.values[i].value() * phi(us.hi(i)));
      for (int k = 1; k < 100; ++k) {
        const double t = 0.01 * k;
        EXPECT_LE(maximal_decreasing(us, p, t).value() * phi(t), std::pow(B, 1.0 / p) * A * (1.0 + 1e-3));
      }
    }
  }
}
