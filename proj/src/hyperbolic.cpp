#include "conceptkit/hyperbolic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "conceptkit/error.hpp"
#include "conceptkit/rng.hpp"

namespace conceptkit {

namespace {

void require_in_ball(const Eigen::VectorXd& x) {
  if (!x.allFinite() || x.squaredNorm() >= 1.0) throw DomainError("point lies outside the open unit ball");
}

}  // namespace

double poincare_distance(const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
  if (u.size() != v.size()) throw InputError("poincare_distance dimension mismatch");
  require_in_ball(u);
  require_in_ball(v);
  const double alpha = 1.0 - u.squaredNorm();
  const double beta = 1.0 - v.squaredNorm();
  const double gamma = 1.0 + 2.0 * (u - v).squaredNorm() / (alpha * beta);
  return std::acosh(std::max(1.0, gamma));
}

Eigen::VectorXd poincare_distance_grad(const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
  if (u.size() != v.size()) throw InputError("poincare_distance_grad dimension mismatch");
  require_in_ball(u);
  require_in_ball(v);
  const double uu = u.squaredNorm();
  const double vv = v.squaredNorm();
  const double alpha = 1.0 - uu;
  const double beta = 1.0 - vv;
  const double gamma = 1.0 + 2.0 * (u - v).squaredNorm() / (alpha * beta);
  const double root = std::sqrt(std::max(gamma * gamma - 1.0, 1e-15));
  const double coef = 4.0 / (beta * root);
  return coef * (((vv - 2.0 * u.dot(v) + 1.0) / (alpha * alpha)) * u - v / alpha);
}

Eigen::VectorXd project_to_ball(const Eigen::VectorXd& x, double eps) {
  const double limit = 1.0 - eps;
  const double n = x.norm();
  if (n < limit) return x;
  Eigen::VectorXd y = x * (limit / n);
  while (y.norm() > limit) y *= 1.0 - 1e-15;
  return y;
}

Eigen::VectorXd HyperbolicEmbedding::point(const std::string& node) const {
  auto i = taxonomy.index(node);
  if (!i) throw InputError("unknown taxonomy node '" + node + "'");
  return points.row(static_cast<Eigen::Index>(*i)).transpose();
}

double HyperbolicEmbedding::distance(std::size_t a, std::size_t b) const {
  return poincare_distance(points.row(static_cast<Eigen::Index>(a)).transpose(),
                           points.row(static_cast<Eigen::Index>(b)).transpose());
}

PoincareResult train_poincare(const Taxonomy& taxonomy, const PoincareConfig& config) {
  if (taxonomy.num_nodes() < 2) throw InputError("poincare training needs at least two nodes");
  if (!(config.lr > 0.0)) throw InputError("learning rate must be positive");
  if (config.dim < 1) throw InputError("dimension must be at least 1");

  const std::size_t n = taxonomy.num_nodes();
  const auto D = static_cast<Eigen::Index>(config.dim);

  // Per node, the candidates a negative may be drawn from.
  std::vector<std::vector<std::size_t>> negative_pool(n);
  {
    std::vector<std::vector<bool>> related(n, std::vector<bool>(n, false));
    for (auto [d, a] : taxonomy.ancestor_pairs()) related[d][a] = related[a][d] = true;
    for (std::size_t u = 0; u < n; ++u) {
      for (std::size_t w = 0; w < n; ++w) {
        if (w != u && !related[u][w]) negative_pool[u].push_back(w);
      }
    }
  }

  Rng base(config.seed);
  Rng init = base.split("poincare-init");
  Rng rng = base.split("poincare-train");

  Eigen::MatrixXd theta(static_cast<Eigen::Index>(n), D);
  for (Eigen::Index i = 0; i < theta.rows(); ++i) {
    for (Eigen::Index j = 0; j < D; ++j) theta(i, j) = init.uniform(-1e-3, 1e-3);
  }

  auto row = [&](std::size_t i) -> Eigen::VectorXd { return theta.row(static_cast<Eigen::Index>(i)).transpose(); };
  auto rsgd_step = [&](std::size_t i, const Eigen::VectorXd& egrad, double lr) {
    Eigen::VectorXd x = row(i);
    const double scale = std::pow(1.0 - x.squaredNorm(), 2) / 4.0;
    theta.row(static_cast<Eigen::Index>(i)) = project_to_ball(x - lr * scale * egrad).transpose();
  };

  std::vector<std::size_t> order(taxonomy.edges().size());
  std::iota(order.begin(), order.end(), 0);

  PoincareResult result;
  std::vector<std::size_t> targets;
  std::vector<double> dist;
  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    const double lr = epoch < config.burn_in ? config.lr / 10.0 : config.lr;
    rng.shuffle(std::span<std::size_t>(order));
    double loss = 0.0;
    for (std::size_t e : order) {
      const auto [child, parent] = taxonomy.edges()[e];
      targets.assign(1, parent);
      const auto& pool = negative_pool[child];
      if (!pool.empty()) {
        for (std::size_t k = 0; k < config.negatives; ++k) targets.push_back(pool[rng.below(pool.size())]);
      }

      const Eigen::VectorXd u = row(child);
      dist.resize(targets.size());
      double dmin = 0.0;
      for (std::size_t t = 0; t < targets.size(); ++t) {
        dist[t] = poincare_distance(u, row(targets[t]));
        dmin = t == 0 ? dist[t] : std::min(dmin, dist[t]);
      }
      double z = 0.0;
      for (double d : dist) z += std::exp(dmin - d);
      loss += dist[0] - dmin + std::log(z);

      // dL/dd_t = [t is the parent] - softmax_t
      Eigen::VectorXd grad_u = Eigen::VectorXd::Zero(D);
      std::vector<std::pair<std::size_t, Eigen::VectorXd>> updates;
      for (std::size_t t = 0; t < targets.size(); ++t) {
        const double w = (t == 0 ? 1.0 : 0.0) - std::exp(dmin - dist[t]) / z;
        const Eigen::VectorXd v = row(targets[t]);
        grad_u += w * poincare_distance_grad(u, v);
        updates.emplace_back(targets[t], w * poincare_distance_grad(v, u));
      }
      rsgd_step(child, grad_u, lr);
      for (const auto& [node, g] : updates) rsgd_step(node, g, lr);
    }
    result.loss_history.push_back(order.empty() ? 0.0 : loss / static_cast<double>(order.size()));
  }

  result.embedding = {taxonomy, std::move(theta)};
  return result;
}

double mean_parent_rank(const HyperbolicEmbedding& embedding) {
  const auto& edges = embedding.taxonomy.edges();
  if (edges.empty()) throw InputError("taxonomy has no edges");
  const std::size_t n = embedding.taxonomy.num_nodes();
  double total = 0.0;
  for (auto [child, parent] : edges) {
    const double target = embedding.distance(child, parent);
    std::size_t rank = 1;
    for (std::size_t w = 0; w < n; ++w) {
      if (w == child || w == parent) continue;
      if (embedding.distance(child, w) < target) ++rank;
    }
    total += static_cast<double>(rank);
  }
  return total / static_cast<double>(edges.size());
}

}  // namespace conceptkit
