#pragma once

// Poincare-ball embeddings of is-a hierarchies trained by Riemannian SGD.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "conceptkit/taxonomy.hpp"

namespace conceptkit {

inline constexpr double kBallEpsilon = 1e-5;

/// arcosh(1 + 2|u-v|^2 / ((1-|u|^2)(1-|v|^2))). Both points must lie in the open unit ball.
double poincare_distance(const Eigen::VectorXd& u, const Eigen::VectorXd& v);

/// Euclidean gradient of poincare_distance with respect to u. The gradient with
/// respect to v is poincare_distance_grad(v, u).
Eigen::VectorXd poincare_distance_grad(const Eigen::VectorXd& u, const Eigen::VectorXd& v);

/// Pulls x back to norm 1 - eps when it reaches or crosses that radius.
Eigen::VectorXd project_to_ball(const Eigen::VectorXd& x, double eps = kBallEpsilon);

struct HyperbolicEmbedding {
  Taxonomy taxonomy;
  Eigen::MatrixXd points;  // one row per taxonomy node

  std::size_t dim() const noexcept { return static_cast<std::size_t>(points.cols()); }
  Eigen::VectorXd point(const std::string& node) const;
  double distance(std::size_t a, std::size_t b) const;
};

struct PoincareConfig {
  std::size_t dim = 2;
  std::size_t epochs = 200;
  double lr = 0.3;
  std::size_t negatives = 10;
  std::size_t burn_in = 10;  // epochs run at lr / 10
  std::uint64_t seed = 0;
};

struct PoincareResult {
  HyperbolicEmbedding embedding;
  std::vector<double> loss_history;
};

/// Each child -> parent edge is a positive; negatives are drawn uniformly from
/// nodes that are neither the child, nor its ancestors, nor its descendants.
/// The per-edge loss is the softmax cross-entropy of -distance over the
/// positive and its negatives.
PoincareResult train_poincare(const Taxonomy& taxonomy, const PoincareConfig& config);

/// For each edge, 1 + the number of other nodes strictly closer to the child
/// than its parent; averaged over edges.
double mean_parent_rank(const HyperbolicEmbedding& embedding);

}  // namespace conceptkit
