#include <gtest/gtest.h>

#include <cmath>

#include "conceptkit/boxes.hpp"
#include "conceptkit/datasets.hpp"
#include "conceptkit/error.hpp"
#include "conceptkit/hyperbolic.hpp"
#include "conceptkit/lattice.hpp"
#include "conceptkit/rng.hpp"
#include "conceptkit/taxonomy.hpp"

using namespace conceptkit;

namespace {

Eigen::VectorXd v2(double x, double y) { return Eigen::Vector2d(x, y); }

Box box2(double x0, double y0, double x1, double y1) { return {v2(x0, y0), v2(x1, y1)}; }

// arcosh(1 + 2|u-v|^2 / ((1-|u|^2)(1-|v|^2))) evaluated directly.
double distance_by_formula(const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
  const double num = 2.0 * (u - v).squaredNorm();
  const double den = (1.0 - u.squaredNorm()) * (1.0 - v.squaredNorm());
  const double x = 1.0 + num / den;
  return std::log(x + std::sqrt(x * x - 1.0));
}

}  // namespace

TEST(Taxonomy, StructureAndErrors) {
  const auto t = Taxonomy::from_edges({{"cat", "mammal"}, {"dog", "mammal"}, {"mammal", "animal"}, {"cat", "mammal"}});
  EXPECT_EQ(t.num_nodes(), 4U);
  EXPECT_EQ(t.edges().size(), 3U);
  const auto cat = *t.index("cat"), animal = *t.index("animal"), dog = *t.index("dog");
  EXPECT_TRUE(t.is_descendant_or_self(cat, animal));
  EXPECT_FALSE(t.is_descendant_or_self(cat, dog));
  EXPECT_EQ(t.ancestors(cat).size(), 2U);
  EXPECT_EQ(t.ancestor_pairs().size(), 5U);
  EXPECT_EQ(t.leaves().size(), 2U);
  EXPECT_THROW(Taxonomy::from_edges({{"a", "b"}, {"b", "c"}, {"c", "a"}}), InputError);
  EXPECT_THROW(Taxonomy::from_edges({{"a", "a"}}), InputError);
}

TEST(Poincare, DistanceMatchesFormula) {
  Rng rng(1);
  for (int i = 0; i < 500; ++i) {
    Eigen::VectorXd u(3), v(3);
    for (int k = 0; k < 3; ++k) {
      u[k] = rng.uniform(-0.55, 0.55);
      v[k] = rng.uniform(-0.55, 0.55);
    }
    EXPECT_NEAR(poincare_distance(u, v), distance_by_formula(u, v), 1e-10);
    EXPECT_NEAR(poincare_distance(u, v), poincare_distance(v, u), 1e-14);
  }
  EXPECT_EQ(poincare_distance(v2(0.3, 0.1), v2(0.3, 0.1)), 0.0);
  // from the origin: 2 artanh(r)
  EXPECT_NEAR(poincare_distance(v2(0, 0), v2(0.5, 0)), 2.0 * std::atanh(0.5), 1e-12);
  EXPECT_THROW(poincare_distance(v2(1.0, 0), v2(0, 0)), DomainError);
  EXPECT_THROW(poincare_distance(v2(0.1, 0), Eigen::Vector3d(0, 0, 0)), InputError);
}

TEST(Poincare, GradientMatchesFiniteDifferences) {
  Rng rng(2);
  const double h = 1e-6;
  for (int i = 0; i < 100; ++i) {
    Eigen::VectorXd u(2), v(2);
    for (int k = 0; k < 2; ++k) {
      u[k] = rng.uniform(-0.6, 0.6);
      v[k] = rng.uniform(-0.6, 0.6);
    }
    const auto g = poincare_distance_grad(u, v);
    for (int k = 0; k < 2; ++k) {
      Eigen::VectorXd up = u, dn = u;
      up[k] += h;
      dn[k] -= h;
      const double fd = (distance_by_formula(up, v) - distance_by_formula(dn, v)) / (2.0 * h);
      EXPECT_NEAR(g[k], fd, 1e-5 * std::max(1.0, std::abs(fd)));
    }
  }
}

TEST(Poincare, ProjectionKeepsPointsInside) {
  const auto p = project_to_ball(v2(3, 4));
  EXPECT_LE(p.norm(), 1.0 - kBallEpsilon + 1e-15);
  EXPECT_EQ(project_to_ball(v2(0.1, 0.2)), v2(0.1, 0.2));
}

TEST(Poincare, SingleEdgePullsPairTogether) {
  const auto t = Taxonomy::from_edges({{"child", "parent"}});
  PoincareConfig cfg;
  cfg.epochs = 100;
  const auto result = train_poincare(t, cfg);
  const double trained = result.embedding.distance(0, 1);
  Rng rng(99);
  const Eigen::VectorXd random_point = v2(rng.uniform(-0.9, 0.9) / std::sqrt(2.0), rng.uniform(-0.9, 0.9) / std::sqrt(2.0));
  EXPECT_LT(trained, poincare_distance(result.embedding.points.row(0).transpose(), random_point));
}

TEST(Poincare, TreeStaysInBallAndIsDeterministic) {
  const auto tree = gen_tree(3, 2);
  const auto a = train_poincare(tree, PoincareConfig{});
  const auto b = train_poincare(tree, PoincareConfig{});
  EXPECT_EQ(a.embedding.points, b.embedding.points);
  for (Eigen::Index r = 0; r < a.embedding.points.rows(); ++r) {
    EXPECT_LE(a.embedding.points.row(r).norm(), 1.0 - kBallEpsilon);
  }
  EXPECT_EQ(a.loss_history.size(), PoincareConfig{}.epochs);
  PoincareConfig bad;
  bad.lr = 0.0;
  EXPECT_THROW(train_poincare(tree, bad), InputError);
}

TEST(Box, LatticeOperations) {
  const auto a = box2(0, 0, 1, 1), b = box2(2, 2, 3, 3);
  EXPECT_EQ(*box_meet(a, a), a);
  EXPECT_EQ(box_join(a, a), a);
  EXPECT_FALSE(box_meet(a, b).has_value());
  EXPECT_EQ(box_volume(box_meet(a, b)), 0.0);
  EXPECT_EQ(box_join(a, b), box2(0, 0, 3, 3));
  const auto inner = box2(0.2, 0.3, 0.5, 0.9);
  EXPECT_TRUE(box_contains(a, inner));
  EXPECT_EQ(box_join(inner, a), a);
  EXPECT_EQ(*box_meet(inner, a), inner);
  EXPECT_DOUBLE_EQ(box_volume(inner), 0.3 * 0.6);
  EXPECT_THROW(box_meet(a, Box{Eigen::Vector3d(0, 0, 0), Eigen::Vector3d(1, 1, 1)}), InputError);
  EXPECT_THROW(box_volume(box2(1, 0, 0, 1)), InputError);
}

TEST(Box, SingleEdgeContainment) {
  const auto t = Taxonomy::from_edges({{"child", "parent"}});
  const auto result = fit_boxes(t, BoxConfig{});
  EXPECT_TRUE(box_contains(result.embedding.box("parent"), result.embedding.box("child")));
}

TEST(Box, SevenNodeTreeBeatsRandomInit) {
  const auto tree = gen_tree(2, 2);
  const auto init = init_boxes(tree, BoxConfig{});
  const double baseline = containment_accuracy(init);
  const auto trained = fit_boxes(tree, BoxConfig{});
  EXPECT_GE(containment_accuracy(trained.embedding), 0.9);
  EXPECT_GT(containment_accuracy(trained.embedding), baseline);
  EXPECT_LT(trained.loss_history.back(), trained.loss_history.front());
}

TEST(Box, ContainmentContextShape) {
  const auto tree = gen_tree(2, 2);
  const auto trained = fit_boxes(tree, BoxConfig{});
  const auto ctx = containment_context(trained.embedding);
  EXPECT_EQ(ctx.num_objects(), 4U);
  EXPECT_EQ(ctx.num_attributes(), 7U);
  // every leaf sits in the root box and its own box
  const auto root = *ctx.attribute_index("n0");
  for (std::size_t o = 0; o < ctx.num_objects(); ++o) {
    EXPECT_TRUE(ctx.incident(o, root));
    EXPECT_TRUE(ctx.incident(o, *ctx.attribute_index(ctx.objects()[o])));
  }
}
