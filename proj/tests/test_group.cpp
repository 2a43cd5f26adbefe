#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "conceptkit/datasets.hpp"
#include "conceptkit/error.hpp"
#include "conceptkit/group.hpp"
#include "conceptkit/invariance.hpp"
#include "conceptkit/levelset.hpp"
#include "conceptkit/rng.hpp"

using namespace conceptkit;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<Eigen::VectorXd> random_plane_points(std::uint64_t seed, int n) {
  Rng rng(seed);
  std::vector<Eigen::VectorXd> pts;
  for (int i = 0; i < n; ++i) pts.emplace_back(Eigen::Vector2d(rng.uniform(-2, 2), rng.uniform(-2, 2)));
  return pts;
}

std::vector<Eigen::VectorXd> torus_rows(const TorusOrbits& t) {
  std::vector<Eigen::VectorXd> out;
  for (Eigen::Index r = 0; r < t.points.rows(); ++r) out.push_back(t.points.row(r).transpose());
  return out;
}

}  // namespace

TEST(Group, TrivialCyclicGroup) {
  const auto g = GroupSpec::cyclic(1);
  EXPECT_EQ(g.order(), 1U);
  const auto report = verify_group(g);
  EXPECT_TRUE(report.passed);
  EXPECT_TRUE(report.exhaustive);
  EXPECT_EQ(report.triples_checked, 1U);
}

TEST(Group, CyclicFourExhaustive) {
  const auto report = verify_group(GroupSpec::cyclic(4));
  EXPECT_TRUE(report.passed);
  EXPECT_EQ(report.triples_checked, 64U);
  EXPECT_EQ(report.violation_count, 0U);
}

TEST(Group, CorruptedTableFails) {
  // row 1 is not a translate of Z4: 1*1 = 2 but 1*2 = 0
  const auto g = GroupSpec::from_table({{0, 1, 2, 3}, {1, 2, 0, 3}, {2, 3, 0, 1}, {3, 0, 1, 2}});
  const auto report = verify_group(g);
  EXPECT_FALSE(report.passed);
  EXPECT_GT(report.violation_count, 0U);
  ASSERT_FALSE(report.violations.empty());
  EXPECT_FALSE(report.violations.front().witness.empty());
}

TEST(Group, TableErrors) {
  EXPECT_THROW(GroupSpec::from_table({}), InputError);
  EXPECT_THROW(GroupSpec::from_table({{0, 1}, {1}}), InputError);
  EXPECT_THROW(GroupSpec::from_table({{0, 5}, {1, 0}}), InputError);
  EXPECT_THROW(GroupSpec::cyclic(0), InputError);
}

TEST(Group, ProductElementsAndLaws) {
  const auto g = GroupSpec::product({GroupSpec::cyclic(2), GroupSpec::cyclic(3)});
  EXPECT_EQ(g.order(), 6U);
  EXPECT_EQ(g.elements().size(), 6U);
  EXPECT_EQ(g.elements()[1], (GroupElement{0, 1}));
  EXPECT_TRUE(g.same(g.compose({1, 2}, {1, 2}), {0, 1}));
  EXPECT_TRUE(verify_group(g).passed);
}

TEST(Group, SampledRotationsPassAndAreSeeded) {
  Rng rng(5);
  std::vector<double> angles;
  for (int i = 0; i < 20; ++i) angles.push_back(rng.uniform(0, 2 * kPi));
  const auto g = GroupSpec::rotation(angles);
  GroupCheckOptions opts;
  opts.sample_budget = 500;
  const auto a = verify_group(g, opts), b = verify_group(g, opts);
  EXPECT_TRUE(a.passed);
  EXPECT_FALSE(a.exhaustive);
  EXPECT_EQ(a.triples_checked, b.triples_checked);
}

TEST(Action, RotationSatisfiesActionLaws) {
  const auto action = rotation_action(GroupSpec::cyclic(8));
  const auto r = check_action_laws(action, random_plane_points(1, 20), action.group.elements(), 1e-12);
  EXPECT_TRUE(r.passed);
  EXPECT_EQ(r.samples, 20U * (1U + 64U));
}

TEST(Invariance, NormIsRotationInvariant) {
  const auto action = rotation_action(GroupSpec::cyclic(12));
  const auto r = check_invariance(action, norm_map(2), random_plane_points(2, 50), action.group.elements(), 1e-9);
  EXPECT_TRUE(r.passed);
  EXPECT_LE(r.max_deviation, 1e-9);
}

TEST(Invariance, IdentityIsNotInvariant) {
  const auto action = rotation_action(GroupSpec::cyclic(4));
  const auto r = check_invariance(action, identity_map(2), random_plane_points(3, 10), action.group.elements(), 1e-9);
  EXPECT_FALSE(r.passed);
  EXPECT_GT(r.max_deviation, 1.0);
  EXPECT_EQ(r.worst_point.size(), 2);
}

TEST(Invariance, DimensionMismatchIsAnInputError) {
  const auto action = rotation_action(GroupSpec::cyclic(4));
  EXPECT_THROW(check_invariance(action, norm_map(3), random_plane_points(0, 2), action.group.elements(), 1e-9),
               InputError);
  EXPECT_THROW(check_invariance(action, norm_map(2), random_plane_points(0, 2), action.group.elements(), 0.0),
               InputError);
}

TEST(Equivariance, TrivialPsiReducesToInvariance) {
  const auto action = rotation_action(GroupSpec::cyclic(6));
  const auto pts = random_plane_points(4, 30);
  for (const auto& phi : {norm_map(2), identity_map(2)}) {
    const auto inv = check_invariance(action, phi, pts, action.group.elements(), 1e-9);
    const auto eq = check_equivariance(action, phi, trivial_psi(phi.output_dim), pts, action.group.elements(), 1e-9);
    EXPECT_EQ(inv.passed, eq.passed);
    EXPECT_DOUBLE_EQ(inv.max_deviation, eq.max_deviation);
  }
}

TEST(Equivariance, IdentityMapWithSameAction) {
  const auto action = rotation_action(GroupSpec::cyclic(6));
  const auto r = check_equivariance(action, identity_map(2), psi_from_action(action), random_plane_points(5, 30),
                                    action.group.elements(), 1e-12);
  EXPECT_TRUE(r.passed);
}

TEST(Equivariance, PolarAngleShifts) {
  const auto action = rotation_action(GroupSpec::cyclic(8));
  const auto r = check_equivariance(action, polar_angle_map(), angle_shift_psi(action.group),
                                    random_plane_points(6, 30), action.group.elements(), 1e-9);
  EXPECT_TRUE(r.passed);
}

TEST(Equivariance, PlanarNormFailsWithSameAction) {
  const auto action = rotation_action(GroupSpec::cyclic(4));
  const auto r = check_equivariance(action, planar_norm_map(2), psi_from_action(action), random_plane_points(7, 10),
                                    action.group.elements(), 1e-6);
  EXPECT_FALSE(r.passed);
}

TEST(Homomorphism, RotationPsiAndBrokenPsi) {
  const auto action = rotation_action(GroupSpec::cyclic(5));
  const auto vs = random_plane_points(8, 10);
  EXPECT_TRUE(check_homomorphism(action.group, psi_from_action(action), vs, action.group.elements(), 1e-12).passed);
  EquivariantAction doubled{"doubled", 2, [](const GroupElement& g, const Eigen::VectorXd& v) -> Eigen::VectorXd {
                              return (1.0 + g[0]) * v;
                            }};
  EXPECT_FALSE(check_homomorphism(action.group, doubled, vs, action.group.elements(), 1e-9).passed);
}

TEST(Lie, RadialFieldsHaveZeroResidual) {
  std::vector<Eigen::Vector2d> pts;
  Rng rng(9);
  for (int i = 0; i < 50; ++i) pts.emplace_back(rng.uniform(-2, 2), rng.uniform(-2, 2));
  EXPECT_LT(lie_rotation_residual(builtin_field("circle").f, pts).max_residual, 1e-6);
  // d/dtheta of x = -y, so the residual at (x, y) is |y|
  const auto lin = lie_rotation_residual(builtin_field("coordinate-x").f, pts);
  for (std::size_t i = 0; i < pts.size(); ++i) EXPECT_NEAR(lin.residuals[i], std::abs(pts[i].y()), 1e-6);
  // saddle x^2 - y^2 -> -4xy
  const auto sad = lie_rotation_residual(builtin_field("saddle").f, pts);
  for (std::size_t i = 0; i < pts.size(); ++i) EXPECT_NEAR(sad.residuals[i], 4 * std::abs(pts[i].x() * pts[i].y()), 1e-5);
}

TEST(Disentangle, TorusIdentityPasses) {
  const auto torus = gen_torus_orbits(8, 8, 0, 0);
  ASSERT_EQ(torus.points.rows(), 64);
  const auto action = block_rotation_action(torus.group);
  const auto r = check_disentangled(action, identity_map(4), ProductDecomposition::equal_blocks(2, 2),
                                    torus_rows(torus), 1e-9);
  EXPECT_TRUE(r.passed);
  EXPECT_LE(r.leakage, 1e-9);
  ASSERT_EQ(r.factors.size(), 2U);
  for (const auto& f : r.factors) EXPECT_TRUE(f.non_degenerate);
}

TEST(Disentangle, MixedBlocksLeak) {
  const auto torus = gen_torus_orbits(8, 8, 0, 0);
  const auto action = block_rotation_action(torus.group);
  const auto r = check_disentangled(action, block_mixing_map(4, kPi / 4), ProductDecomposition::equal_blocks(2, 2),
                                    torus_rows(torus), 1e-3);
  EXPECT_FALSE(r.passed);
  EXPECT_GT(r.leakage, 1e-3);
}

TEST(Disentangle, ConstantMapIsDegenerate) {
  const auto torus = gen_torus_orbits(4, 4, 0, 0);
  const auto action = block_rotation_action(torus.group);
  const RepresentationMap zero{"zero", 4, 4, [](const Eigen::VectorXd&) -> Eigen::VectorXd {
                                 return Eigen::VectorXd::Zero(4);
                               }, {}};
  const auto r = check_disentangled(action, zero, ProductDecomposition::equal_blocks(2, 2), torus_rows(torus), 1e-9);
  EXPECT_FALSE(r.passed);
  EXPECT_EQ(r.leakage, 0.0);
  EXPECT_FALSE(r.factors[0].non_degenerate);
}

TEST(Disentangle, DecompositionValidation) {
  ProductDecomposition overlap{{{0, 2}, {1, 4}}};
  EXPECT_THROW(overlap.validate(4), InputError);
  ProductDecomposition gap{{{0, 1}, {2, 4}}};
  EXPECT_THROW(gap.validate(4), InputError);
  EXPECT_NO_THROW(ProductDecomposition::equal_blocks(2, 2).validate(4));
}
