#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "conceptkit/datasets.hpp"
#include "conceptkit/error.hpp"
#include "conceptkit/levelset.hpp"
#include "conceptkit/rng.hpp"
#include "conceptkit/vae.hpp"

using namespace conceptkit;

namespace {

Eigen::MatrixXd normal_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = rng.normal();
  }
  return m;
}

}  // namespace

TEST(LevelSet, CircleMembership) {
  const auto circle = make_level_set("circle", 1.0, 1e-9);
  EXPECT_TRUE(level_membership(circle, Eigen::Vector2d(1, 0)).member);
  EXPECT_TRUE(level_membership(circle, Eigen::Vector2d(std::sqrt(0.5), std::sqrt(0.5))).member);
  const auto out = level_membership(circle, Eigen::Vector2d(2, 0));
  EXPECT_FALSE(out.member);
  EXPECT_DOUBLE_EQ(out.residual, 3.0);
  EXPECT_THROW(level_membership(circle, Eigen::Vector3d(1, 0, 0)), InputError);
  EXPECT_THROW(level_membership(circle, Eigen::Vector2d(std::nan(""), 0)), InputError);
  EXPECT_THROW(make_level_set("circle", 1.0, 0.0), InputError);
  EXPECT_THROW(builtin_field("wobble"), InputError);
}

TEST(LevelSet, ResidualIsContinuousAcrossTheBoundary) {
  const auto circle = make_level_set("circle", 1.0, 1e-3);
  for (int k = 0; k < 64; ++k) {
    const double t = 2.0 * std::numbers::pi * k / 64.0;
    const Eigen::Vector2d dir(std::cos(t), std::sin(t));
    EXPECT_TRUE(level_membership(circle, dir).member);
    // radius 1 + d gives residual 2d + d^2
    for (double d : {1e-2, 1e-4, 1e-6}) {
      const double r = level_membership(circle, (1.0 + d) * dir).residual;
      EXPECT_NEAR(r, 2.0 * d + d * d, 1e-12);
    }
  }
}

TEST(Vae, InitRejectsBadShapes) {
  EXPECT_THROW(VaeModel::init({2, 2, 4, 4}, 0), InputError);
  EXPECT_THROW(VaeModel::init({2, 0, 4, 4}, 0), InputError);
  EXPECT_THROW(VaeModel::init({3, 1, 0, 4}, 0), InputError);
  const auto m = VaeModel::init({3, 2, 4, 5}, 1);
  EXPECT_EQ(m, VaeModel::init({3, 2, 4, 5}, 1));
  EXPECT_EQ(m.flatten().size(), static_cast<Eigen::Index>(m.parameter_count()));
  // 4*3+4 + 2*(2*4+2) + 5*2+5 + 3*5+3
  EXPECT_EQ(m.parameter_count(), 16U + 20U + 15U + 18U);
}

TEST(Vae, KlExamples) {
  EXPECT_EQ(gaussian_kl(Eigen::Vector2d::Zero(), Eigen::Vector2d::Zero()), 0.0);
  EXPECT_DOUBLE_EQ(gaussian_kl(Eigen::VectorXd::Constant(1, 1.0), Eigen::VectorXd::Zero(1)), 0.5);
  // 0.5 (exp(lv) - 1 - lv) for mu = 0
  EXPECT_NEAR(gaussian_kl(Eigen::VectorXd::Zero(1), Eigen::VectorXd::Constant(1, 1.0)), 0.5 * (std::exp(1.0) - 2.0),
              1e-15);
}

TEST(Vae, ZeroNoiseSamplesTheMean) {
  const auto m = VaeModel::init({3, 2, 4, 4}, 2);
  const Eigen::Vector3d x(0.3, -1.0, 0.7);
  const auto f = vae_forward(m, x, Eigen::Vector2d::Zero());
  EXPECT_EQ(f.z, f.mu);
  EXPECT_EQ(f.mu, encode_mean(m, x));
  EXPECT_EQ(f.reconstruction, decode(m, f.mu));
}

TEST(Vae, BetaZeroDropsKl) {
  Rng rng(3);
  const auto m = VaeModel::init({3, 1, 4, 4}, 3);
  const auto batch = normal_matrix(rng, 5, 3), noise = normal_matrix(rng, 5, 1);
  const auto l0 = vae_loss(m, batch, noise, 0.0);
  EXPECT_EQ(l0.total, l0.recon);
  const auto l2 = vae_loss(m, batch, noise, 2.0);
  EXPECT_NEAR(l2.total, l2.recon + 2.0 * l2.kl, 1e-14);
}

TEST(Vae, GradientMatchesCentralDifferences) {
  Rng rng(4);
  const auto model = VaeModel::init({3, 2, 4, 4}, 5);
  const auto batch = normal_matrix(rng, 6, 3), noise = normal_matrix(rng, 6, 2);
  const double beta = 0.7, h = 1e-4;
  const Eigen::VectorXd analytic = vae_gradient(model, batch, noise, beta).grad.flatten();
  const Eigen::VectorXd theta = model.flatten();
  Eigen::VectorXd numeric(theta.size());
  VaeModel probe = model;
  for (Eigen::Index i = 0; i < theta.size(); ++i) {
    Eigen::VectorXd t = theta;
    t[i] += h;
    probe.assign(t);
    const double up = vae_loss(probe, batch, noise, beta).total;
    t[i] -= 2.0 * h;
    probe.assign(t);
    const double dn = vae_loss(probe, batch, noise, beta).total;
    numeric[i] = (up - dn) / (2.0 * h);
  }
  const double rel = (analytic - numeric).norm() / std::max(1e-12, analytic.norm() + numeric.norm());
  EXPECT_LT(rel, 1e-3);
  for (Eigen::Index i = 0; i < theta.size(); ++i) EXPECT_NEAR(analytic[i], numeric[i], 1e-5) << "parameter " << i;
}

TEST(Vae, TrainingLowersLossOnMoons) {
  const auto data = gen_two_moons(200, 0.05, 0);
  VaeTrainConfig cfg;
  cfg.epochs = 60;
  const auto result = vae_train(VaeModel::init({2, 1, 16, 16}, 0), data.points, cfg);
  ASSERT_EQ(result.loss_history.size(), 60U);
  EXPECT_LT(result.loss_history.back(), result.loss_history.front());
  EXPECT_TRUE(result.model.all_finite());
  const auto again = vae_train(VaeModel::init({2, 1, 16, 16}, 0), data.points, cfg);
  EXPECT_EQ(result.loss_history, again.loss_history);
}

TEST(Vae, ZeroEpochsReturnsInitialModel) {
  const auto data = gen_two_moons(20, 0.05, 0);
  const auto init = VaeModel::init({2, 1, 8, 8}, 9);
  VaeTrainConfig cfg;
  cfg.epochs = 0;
  const auto result = vae_train(init, data.points, cfg);
  EXPECT_EQ(result.model, init);
  EXPECT_TRUE(result.loss_history.empty());
}

TEST(Vae, HugeStepDiverges) {
  const auto data = gen_two_moons(50, 0.05, 0);
  VaeTrainConfig cfg;
  cfg.lr = 1e6;
  cfg.epochs = 50;
  EXPECT_THROW(vae_train(VaeModel::init({2, 1, 8, 8}, 0), data.points, cfg), DivergenceError);
}

TEST(Vae, InterpolationEndpoints) {
  const auto m = VaeModel::init({2, 1, 8, 8}, 1);
  const Eigen::Vector2d a(0.0, 1.0), b(1.0, -0.5);
  const auto two = latent_interpolate(m, a, b, 2);
  ASSERT_EQ(two.rows(), 2);
  EXPECT_NEAR((two.row(0).transpose() - decode(m, encode_mean(m, a))).norm(), 0.0, 1e-14);
  EXPECT_NEAR((two.row(1).transpose() - decode(m, encode_mean(m, b))).norm(), 0.0, 1e-14);
  const auto same = latent_interpolate(m, a, a, 5);
  for (Eigen::Index r = 1; r < same.rows(); ++r) EXPECT_EQ(same.row(r), same.row(0));
  EXPECT_THROW(latent_interpolate(m, a, b, 1), InputError);
}
