#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"

using namespace rikit;

namespace {

WeightedSamples random_samples(std::mt19937_64& g, std::size_t n) {
  std::uniform_real_distribution<double> val(-5.0, 5.0), wt(0.1, 2.0);
  std::uniform_int_distribution<int> coin(0, 3);
  WeightedSamples u;
  for (std::size_t i = 0; i < n; ++i) {
    // Quantized values so that ties occur regularly.
    u.values.push_back(coin(g) == 0 ? std::round(val(g)) : val(g));
    u.weights.push_back(wt(g));
  }
  return u;
}

}  // namespace

TEST(Distribution, TwoSampleExample) {
  WeightedSamples u{{1.0, 3.0}, {0.5, 0.5}};
  EXPECT_DOUBLE_EQ(distribution(u, 2.0), 0.5);
  EXPECT_DOUBLE_EQ(distribution(u, 3.5), 0.0);
  WeightedSamples c{{2.0, 2.0, 2.0}, {0.2, 0.3, 0.4}};
  EXPECT_NEAR(distribution(c, 1.0), 0.9, 1e-15);
}

TEST(DecreasingRearrangement, Examples) {
  const GridFn a = decreasing_rearrangement(WeightedSamples{{1.0, 3.0}, {0.5, 0.5}});
  EXPECT_DOUBLE_EQ(a(0.25).value(), 3.0);
  EXPECT_DOUBLE_EQ(a(0.75).value(), 1.0);
  EXPECT_DOUBLE_EQ(a(1.5).value(), 0.0);

  const GridFn b = decreasing_rearrangement(WeightedSamples{{-2.0, 1.0}, {1.0, 1.0}});
  EXPECT_DOUBLE_EQ(b(0.5).value(), 2.0);
  EXPECT_DOUBLE_EQ(b(1.5).value(), 1.0);
  EXPECT_DOUBLE_EQ(b(2.5).value(), 0.0);

  const GridFn c = decreasing_rearrangement(WeightedSamples{{4.0, 4.0}, {0.5, 1.5}});
  EXPECT_DOUBLE_EQ(c(1.9).value(), 4.0);
  EXPECT_DOUBLE_EQ(c(2.1).value(), 0.0);
}

TEST(DecreasingRearrangement, MatchesGeneralizedInverseOracle) {
  std::mt19937_64 g(7);
  for (int rep = 0; rep < 200; ++rep) {
    const WeightedSamples u = random_samples(g, 1 + rep % 12);
    const GridFn us = decreasing_rearrangement(u);
    ASSERT_TRUE(us.is_decreasing());
    const double W = u.total_weight();
    for (int k = 1; k < 60; ++k) {
      const double t = W * (k + 0.37) / 50.0;  // off the break points, where the conventions differ
      EXPECT_NEAR(us(t).value(), oracle::rearrangement_at(u.values, u.weights, t), 1e-12) << "t=" << t;
    }
  }
}

TEST(DecreasingRearrangement, Equimeasurable) {
  std::mt19937_64 g(11);
  for (int rep = 0; rep < 100; ++rep) {
    const WeightedSamples u = random_samples(g, 2 + rep % 10);
    const GridFn us = decreasing_rearrangement(u);
    std::vector<double> levels{0.0};
    for (double x : u.values) levels.push_back(std::fabs(x));
    for (double x : u.values) levels.push_back(0.5 * std::fabs(x));
    for (double s : levels) {
      double m = 0.0;
      for (std::size_t i = 0; i < us.cells(); ++i) {
        if (us.values[i].value() > s) m += us.width(i);
      }
      EXPECT_NEAR(m, oracle::distribution(u.values, u.weights, s), 1e-12);
    }
  }
}

TEST(DecreasingRearrangement, Cavalieri) {
  std::mt19937_64 g(13);
  for (int rep = 0; rep < 100; ++rep) {
    const WeightedSamples u = random_samples(g, 1 + rep % 15);
    const GridFn us = decreasing_rearrangement(u);
    double integral_ustar = 0.0;
    for (std::size_t i = 0; i < us.cells(); ++i) integral_ustar += us.values[i].value() * us.width(i);
    // int_0^inf mu(s) ds: mu is a step function in s with jumps at the |values|.
    std::vector<double> lv{0.0};
    for (double x : u.values) lv.push_back(std::fabs(x));
    std::sort(lv.begin(), lv.end());
    double integral_mu = 0.0;
    for (std::size_t k = 0; k + 1 < lv.size(); ++k) {
      integral_mu += oracle::distribution(u.values, u.weights, lv[k]) * (lv[k + 1] - lv[k]);
    }
    const double l1 = oracle::lp(u.values, u.weights, 1.0);
    EXPECT_NEAR(integral_ustar, l1, 1e-9 * std::max(1.0, l1));
    EXPECT_NEAR(integral_mu, l1, 1e-9 * std::max(1.0, l1));
  }
}

TEST(DecreasingRearrangement, MonotoneUnderPointwiseOrder) {
  std::mt19937_64 g(17);
  std::uniform_real_distribution<double> shrink(0.0, 1.0);
  for (int rep = 0; rep < 100; ++rep) {
    const WeightedSamples v = random_samples(g, 1 + rep % 9);
    WeightedSamples u = v;
    for (auto& x : u.values) x *= shrink(g);
    const GridFn us = decreasing_rearrangement(u), vs = decreasing_rearrangement(v);
    for (int k = 1; k < 40; ++k) {
      const double t = v.total_weight() * (k - 0.5) / 39.0;
      EXPECT_LE(us(t).value(), vs(t).value() + 1e-15);
    }
  }
}

TEST(StarStar, Examples) {
  const GridFn chi = indicator(1.0);
  EXPECT_DOUBLE_EQ(star_star(chi, 2.0).value(), 0.5);
  EXPECT_DOUBLE_EQ(star_star(chi, 0.5).value(), 1.0);
  const GridFn c = indicator(3.0, 2.5);
  EXPECT_DOUBLE_EQ(star_star(c, 1.7).value(), 2.5);
}

TEST(StarStar, DominatesAndDecreases) {
  std::mt19937_64 g(19);
  for (int rep = 0; rep < 50; ++rep) {
    const GridFn us = decreasing_rearrangement(random_samples(g, 1 + rep % 8));
    double prev = std::numeric_limits<double>::infinity();
    for (int k = 1; k < 80; ++k) {
      const double t = 0.05 * k;
      const double ss = star_star(us, t).value();
      EXPECT_GE(ss + 1e-12, us(t).value());
      EXPECT_LE(ss, prev + 1e-12);
      prev = ss;
    }
  }
}

TEST(StarStar, Subadditive) {
  std::mt19937_64 g(23);
  for (int rep = 0; rep < 50; ++rep) {
    WeightedSamples u = random_samples(g, 6), v = random_samples(g, 6);
    v.weights = u.weights;
    WeightedSamples sum = u;
    for (std::size_t i = 0; i < sum.values.size(); ++i) sum.values[i] += v.values[i];
    const GridFn a = decreasing_rearrangement(u), b = decreasing_rearrangement(v),
                 c = decreasing_rearrangement(sum);
    for (int k = 1; k < 40; ++k) {
      const double t = 0.1 * k;
      EXPECT_LE(star_star(c, t).value(), star_star(a, t).value() + star_star(b, t).value() + 1e-12);
    }
  }
}

TEST(StarStar, InfiniteCellGivesMarker) {
  GridFn f = make_grid_fn({0.0, 1.0, 2.0}, {ExtReal::infinity(), ExtReal(1.0)}, 0.0);
  EXPECT_TRUE(star_star(f, 1.5).is_inf());
}

TEST(SuperlevelFamily, Examples) {
  const SuperlevelSet a = superlevel_family(WeightedSamples{{3.0, 1.0}, {0.5, 0.5}}, 0.5);
  EXPECT_EQ(a.indices, std::vector<std::size_t>{0});
  EXPECT_DOUBLE_EQ(a.level, 3.0);
  EXPECT_TRUE(superlevel_family(WeightedSamples{{3.0, 1.0}, {0.5, 0.5}}, 0.0).indices.empty());
  const SuperlevelSet t = superlevel_family(WeightedSamples{{2.0, 2.0}, {1.0, 1.0}}, 1.0);
  EXPECT_EQ(t.indices, std::vector<std::size_t>{0});
}

TEST(SuperlevelFamily, SandwichOnRandomAttainableTargets) {
  std::mt19937_64 g(29);
  for (int rep = 0; rep < 100; ++rep) {
    const WeightedSamples u = random_samples(g, 2 + rep % 10);
    // Attainable targets: the measure of every strict superlevel set.
    for (double x : u.values) {
      const double t = oracle::distribution(u.values, u.weights, std::fabs(x));
      const SuperlevelSet A = superlevel_family(u, t);
      const double level = oracle::rearrangement_at(u.values, u.weights, t);
      double m = 0.0;
      std::set<std::size_t> in(A.indices.begin(), A.indices.end());
      for (std::size_t i = 0; i < u.values.size(); ++i) {
        const double a = std::fabs(u.values[i]);
        if (a > level) EXPECT_TRUE(in.count(i)) << "strict superlevel point missing";
        if (in.count(i)) {
          EXPECT_GE(a, level);
          m += u.weights[i];
        }
      }
      EXPECT_NEAR(m, t, 1e-12);
    }
  }
}

TEST(SuperlevelFamily, NotAttainableCarriesNeighbours) {
  const WeightedSamples u{{1.0, 1.0}, {1.0, 1.0}};
  try {
    superlevel_family(u, 0.5);
    FAIL() << "expected NotAttainable";
  } catch (const NotAttainable& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotAttainable);
    EXPECT_DOUBLE_EQ(e.below(), 0.0);
    EXPECT_DOUBLE_EQ(e.above(), 1.0);
  }
}
