#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "copclust/copula_models.hpp"
#include "copclust/error.hpp"
#include "copclust/ksample_test.hpp"
#include "copclust/permutation.hpp"
#include "copclust/pseudo_obs.hpp"
#include "copclust/rng.hpp"
#include "oracles.hpp"

using namespace copclust;

namespace {

CoefficientTable table(std::vector<double> rho, std::size_t n, int p = 2) {
  CoefficientTable t;
  t.indices = enumerate_H(rho.size(), p);
  t.rho_hat = std::move(rho);
  t.n = n;
  return t;
}

Matrix draw(Family f, double tau, std::size_t n, std::uint64_t seed, int p = 2) {
  return sample(CopulaSpec{f, tau, p, 4.0}, n, seed);
}

Matrix rows(const Matrix& m, std::size_t from, std::size_t to) {
  Matrix out(to - from, m.cols());
  for (std::size_t i = from; i < to; ++i)
    for (std::size_t c = 0; c < m.cols(); ++c) out(i - from, c) = m(i, c);
  return out;
}

}  // namespace

TEST(KSample, ChiSquareTail) {
  EXPECT_DOUBLE_EQ(chi2_1_upper_tail(0.0), 1.0);
  EXPECT_NEAR(chi2_1_upper_tail(3.841458820694124), 0.05, 1e-12);
  EXPECT_NEAR(chi2_1_upper_tail(6.634896601021214), 0.01, 1e-12);
  EXPECT_NEAR(chi2_1_upper_tail(1.0), 0.31731050786291415, 1e-14);
}

TEST(KSample, Differences) {
  const auto a = table({0.4, 0.1}, 10), b = table({0.1, 0.1}, 10);
  const auto r = pair_differences(a, b);
  EXPECT_NEAR(r[0], 0.3, 1e-15);
  EXPECT_EQ(r[1], 0.0);
  for (double x : pair_differences(a, a)) EXPECT_EQ(x, 0.0);
  EXPECT_THROW(pair_differences(a, table({0.1, 0.1}, 10, 3)), InputError);
}

TEST(KSample, DifferencesSmallUnderNull) {
  const auto idx = enumerate_up_to_degree(3, 2);
  int ok = 0;
  for (std::uint64_t s = 0; s < 100; ++s) {
    const auto a = estimate(pseudo_observations(draw(Family::clayton, 0.5, 500, 2 * s + 1)), idx, false);
    const auto b = estimate(pseudo_observations(draw(Family::clayton, 0.5, 500, 2 * s + 2)), idx, false);
    double worst = 0.0;
    for (double r : pair_differences(a, b)) worst = std::max(worst, std::abs(r));
    ok += worst <= 8.0 / std::sqrt(500.0);
  }
  EXPECT_GE(ok, 99);
}

TEST(KSample, StatisticPath) {
  const auto a = table({0.3, 0.0, 0.0}, 100), b = table({0.0, 0.0, 0.0}, 100);
  const auto V = pair_statistic_path(a, b, Pairing::independent);
  for (double v : V) EXPECT_NEAR(v, 4.5, 1e-12);
  for (double v : pair_statistic_path(a, a, Pairing::independent)) EXPECT_EQ(v, 0.0);
  EXPECT_THROW(pair_statistic_path(a, table({0, 0, 0}, 90), Pairing::paired), InputError);
  EXPECT_DOUBLE_EQ(effective_size(100, 100, Pairing::independent), 50.0);
  EXPECT_DOUBLE_EQ(effective_size(100, 100, Pairing::paired), 100.0);
  EXPECT_NEAR(effective_size(100, 300, Pairing::independent), 75.0, 1e-12);
}

TEST(KSample, SelectD) {
  PenaltyConfig cfg;
  const double n4 = std::exp(4.0);  // q_n = 4 with alpha = 1
  EXPECT_EQ(select_D(std::vector<double>{0, 0, 0}, n4, cfg), 1u);
  EXPECT_EQ(select_D(std::vector<double>{10, 10.5, 11}, n4, cfg), 1u);
  EXPECT_EQ(select_D(std::vector<double>{1, 30, 31}, n4, cfg), 2u);
}

TEST(KSample, SelectionPropertyFuzz) {
  std::mt19937_64 eng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int rep = 0; rep < 500; ++rep) {
    const double q = 0.5 + 5 * u(eng);
    const std::size_t len = 1 + eng() % 12;
    std::vector<double> path;
    double acc = 0.0;
    bool small = true;
    const bool force_small = rep % 2 == 0;
    for (std::size_t k = 0; k < len; ++k) {
      double inc = force_small ? q * u(eng) * 0.999 : 3 * q * u(eng);
      small = small && (k == 0 || inc < q);
      acc += inc;
      path.push_back(acc);
    }
    const std::size_t D = penalized_argmax(path, q);
    ASSERT_GE(D, 1u);
    ASSERT_LE(D, len);
    for (std::size_t k = 1; k <= len; ++k) {
      EXPECT_GE(path[D - 1] - D * q, path[k - 1] - k * q);
      if (k < D) EXPECT_GT(path[D - 1] - D * q, path[k - 1] - k * q);
    }
    if (small) EXPECT_EQ(D, 1u);
  }
}

TEST(KSample, Sigma2UnderIndependence) {
  const auto idx = enumerate_H(1, 2);
  const auto a = estimate(pseudo_observations(draw(Family::independence, 0, 2000, 1)), idx, true);
  const auto b = estimate(pseudo_observations(draw(Family::independence, 0, 2000, 2)), idx, true);
  EXPECT_NEAR(estimate_sigma2(a, b, idx[0], Pairing::independent), 1.0, 0.1);
  EXPECT_NEAR(estimate_sigma2(a, b, idx[0], Pairing::independent, VarianceMethod::plugin_products),
              1.0, 0.1);
}

TEST(KSample, Sigma2Weights) {
  const auto idx = enumerate_H(2, 2);
  const auto a = estimate(pseudo_observations(draw(Family::clayton, 0.3, 200, 1)), idx, true);
  const auto b = estimate(pseudo_observations(draw(Family::gumbel, 0.3, 200, 2)), idx, true);
  const auto c = estimate(pseudo_observations(draw(Family::gumbel, 0.3, 600, 3)), idx, true);
  for (auto m : {VarianceMethod::rank_corrected, VarianceMethod::plugin_products}) {
    const Matrix& wa = m == VarianceMethod::rank_corrected ? a.influence : a.products;
    const Matrix& wb = m == VarianceMethod::rank_corrected ? b.influence : b.products;
    const Matrix& wc = m == VarianceMethod::rank_corrected ? c.influence : c.products;
    const double sa = oracle::variance(wa.column(1)), sb = oracle::variance(wb.column(1)),
                 sc = oracle::variance(wc.column(1));
    EXPECT_NEAR(estimate_sigma2(a, b, idx[1], Pairing::independent, m), (sa + sb) / 2, 1e-12);
    EXPECT_NEAR(estimate_sigma2(a, c, idx[1], Pairing::independent, m),
                (600 * sa + 200 * sc) / 800, 1e-12);
    std::vector<double> diff(200);
    for (std::size_t i = 0; i < 200; ++i) diff[i] = wa(i, 1) - wb(i, 1);
    EXPECT_NEAR(estimate_sigma2(a, b, idx[1], Pairing::paired, m), oracle::variance(diff), 1e-12);
  }
  CoefficientTable bare = a;
  bare.products = Matrix();
  bare.influence = Matrix();
  EXPECT_THROW(estimate_sigma2(bare, b, idx[0], Pairing::independent), InputError);
}

TEST(KSample, IdenticalPairedSamples) {
  const auto data = draw(Family::frank, 0.4, 300, 9);
  PenaltyConfig cfg;
  const auto t = summarize(data, cfg);
  EXPECT_EQ(estimate_sigma2(t, t, t.indices[0], Pairing::paired), kVarianceFloor);
  for (double level : {0.05, 0.5, 0.99}) {
    cfg.level = level;
    const auto r = pair_test(t, t, Pairing::paired, cfg);
    EXPECT_EQ(r.statistic, 0.0);
    EXPECT_EQ(r.D_selected, 1u);
    EXPECT_FALSE(r.reject);
  }
}

TEST(KSample, PairResultInvariants) {
  PenaltyConfig cfg;
  for (std::uint64_t s = 0; s < 30; ++s) {
    const auto a = summarize(draw(Family::clayton, 0.6, 150, 3 * s + 1), cfg);
    const auto b = summarize(draw(Family::gumbel, 0.6, 210, 3 * s + 2), cfg);
    const auto r = pair_test(a, b, Pairing::independent, cfg);
    for (std::size_t k = 1; k < r.V_at_k.size(); ++k) {
      EXPECT_LE(r.V_at_k[k - 1], r.V_at_k[k]);
      EXPECT_LE(r.standardized[k - 1], r.standardized[k]);
    }
    EXPECT_GE(r.D_selected, 1u);
    EXPECT_GT(r.sigma2_hat, 0.0);
    EXPECT_EQ(r.selected_index, a.indices.front());
    EXPECT_EQ(r.statistic, r.standardized[r.D_selected - 1]);
    EXPECT_EQ(r.reject, r.p_value < cfg.level);
  }
}

TEST(KSample, LevelOnHalvesOfOneSample) {
  PenaltyConfig cfg;
  int rejections = 0;
  for (std::uint64_t s = 0; s < 500; ++s) {
    const auto m = draw(Family::clayton, 0.5, 1000, derive_seed(77, {s}));
    const auto a = summarize(rows(m, 0, 500), cfg), b = summarize(rows(m, 500, 1000), cfg);
    rejections += pair_test(a, b, Pairing::independent, cfg).reject;
  }
  const double rate = rejections / 500.0;
  EXPECT_GE(rate, 0.02);
  EXPECT_LE(rate, 0.08);
}

TEST(KSample, PowerGumbelVersusClayton) {
  PenaltyConfig cfg;
  int rejections = 0;
  for (std::uint64_t s = 0; s < 200; ++s) {
    const auto a = summarize(draw(Family::gumbel, 0.8, 500, derive_seed(5, {s, 0})), cfg);
    const auto b = summarize(draw(Family::clayton, 0.9, 500, derive_seed(5, {s, 1})), cfg);
    rejections += pair_test(a, b, Pairing::independent, cfg).reject;
  }
  EXPECT_GE(rejections, 198);
}

TEST(KSample, GroupOfTwoEqualsPair) {
  PenaltyConfig cfg;
  for (std::uint64_t s = 0; s < 20; ++s) {
    const std::vector<CoefficientTable> t{summarize(draw(Family::joe, 0.5, 120, 2 * s), cfg),
                                          summarize(draw(Family::frank, 0.5, 120, 2 * s + 1), cfg)};
    const auto g = group_test(t, Pairing::independent, cfg);
    const auto p = pair_test(t[0], t[1], Pairing::independent, cfg);
    EXPECT_EQ(g.s_selected, 1u);
    EXPECT_EQ(g.statistic, p.statistic);
    EXPECT_EQ(g.p_value, p.p_value);
    EXPECT_EQ(g.reject, p.reject);
  }
  EXPECT_THROW(group_test(std::vector<CoefficientTable>{summarize(draw(Family::joe, 0.5, 50, 1), cfg)},
                          Pairing::independent, cfg),
               InputError);
}

TEST(KSample, GroupEmbeddingMonotone) {
  PenaltyConfig cfg;
  std::vector<CoefficientTable> t;
  for (std::uint64_t k = 0; k < 5; ++k) t.push_back(summarize(draw(Family::clayton, 0.4, 200, 40 + k), cfg));
  const auto g = group_test(t, Pairing::independent, cfg);
  ASSERT_EQ(g.embedded_V.size(), 10u);
  for (std::size_t k = 1; k < 10; ++k) EXPECT_LE(g.embedded_V[k - 1], g.embedded_V[k]);
  EXPECT_GE(g.s_selected, 1u);
  EXPECT_LE(g.s_selected, 10u);
  EXPECT_EQ(g.statistic, g.embedded_V[g.s_selected - 1]);
}

TEST(KSample, GroupLevelThreeSameCopula) {
  PenaltyConfig cfg;
  int rejections = 0;
  for (std::uint64_t s = 0; s < 200; ++s) {
    std::vector<CoefficientTable> t;
    for (std::uint64_t k = 0; k < 3; ++k)
      t.push_back(summarize(draw(Family::clayton, 0.5, 500, derive_seed(11, {s, k})), cfg));
    rejections += group_test(t, Pairing::independent, cfg).reject;
  }
  EXPECT_LE(rejections / 200.0, 0.10);
}

TEST(KSample, GroupPowerWithOneOutlier) {
  PenaltyConfig cfg;
  int rejections = 0;
  for (std::uint64_t s = 0; s < 200; ++s) {
    std::vector<CoefficientTable> t;
    t.push_back(summarize(draw(Family::clayton, 0.9, 500, derive_seed(12, {s, 0})), cfg));
    t.push_back(summarize(draw(Family::clayton, 0.9, 500, derive_seed(12, {s, 1})), cfg));
    t.push_back(summarize(draw(Family::gumbel, 0.9, 500, derive_seed(12, {s, 2})), cfg));
    rejections += group_test(t, Pairing::independent, cfg).reject;
  }
  EXPECT_GE(rejections / 200.0, 0.95);
}

TEST(KSample, PenaltyConfigValidation) {
  PenaltyConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.alpha_factor = 0.0;
  EXPECT_THROW(cfg.validate(), InputError);
  cfg = {};
  cfg.d_max = 7;
  EXPECT_THROW(cfg.validate(), InputError);
  cfg = {};
  cfg.level = 1.0;
  EXPECT_THROW(cfg.validate(), InputError);
  cfg = {};
  cfg.calibration = Calibration::permutation;
  cfg.permutation_B = 50;
  EXPECT_THROW(cfg.validate(), InputError);
  cfg = {};
  cfg.bound = SelectionBound::coefficient_count;
  cfg.d_max = 4;
  EXPECT_EQ(cfg.indices(3), enumerate_H(4, 3));
}
