#include "conceptkit/boxes.hpp"

#include <algorithm>
#include <cmath>

#include "conceptkit/error.hpp"
#include "conceptkit/rng.hpp"

namespace conceptkit {

namespace {

void require_same_dim(const Box& a, const Box& b) {
  a.validate();
  b.validate();
  if (a.dim() != b.dim()) throw InputError("box dimension mismatch");
}

}  // namespace

void Box::validate() const {
  if (lo.size() != hi.size()) throw InputError("box corners differ in dimension");
  if (!lo.allFinite() || !hi.allFinite()) throw InputError("box corners must be finite");
  if ((lo.array() > hi.array()).any()) throw InputError("box has min corner above max corner");
}

double box_volume(const Box& b) {
  b.validate();
  return (b.hi - b.lo).prod();
}

double box_volume(const std::optional<Box>& b) { return b ? box_volume(*b) : 0.0; }

std::optional<Box> box_meet(const Box& a, const Box& b) {
  require_same_dim(a, b);
  Box m{a.lo.cwiseMax(b.lo), a.hi.cwiseMin(b.hi)};
  if ((m.lo.array() > m.hi.array()).any()) return std::nullopt;
  return m;
}

Box box_join(const Box& a, const Box& b) {
  require_same_dim(a, b);
  return {a.lo.cwiseMin(b.lo), a.hi.cwiseMax(b.hi)};
}

bool box_contains(const Box& outer, const Box& inner) {
  require_same_dim(outer, inner);
  return (outer.lo.array() <= inner.lo.array()).all() && (inner.hi.array() <= outer.hi.array()).all();
}

const Box& BoxEmbedding::box(const std::string& node) const {
  auto i = taxonomy.index(node);
  if (!i) throw InputError("unknown taxonomy node '" + node + "'");
  return boxes.at(*i);
}

BoxEmbedding init_boxes(const Taxonomy& taxonomy, const BoxConfig& config) {
  if (config.dim < 1) throw InputError("box dimension must be at least 1");
  Rng rng = Rng(config.seed).split("box-init");
  const auto D = static_cast<Eigen::Index>(config.dim);
  BoxEmbedding emb{taxonomy, {}};
  for (std::size_t v = 0; v < taxonomy.num_nodes(); ++v) {
    Box b{Eigen::VectorXd(D), Eigen::VectorXd(D)};
    for (Eigen::Index d = 0; d < D; ++d) {
      const double center = rng.uniform(0.2, 0.8);
      const double half = rng.uniform(0.05, 0.2);
      b.lo[d] = center - half;
      b.hi[d] = center + half;
    }
    emb.boxes.push_back(std::move(b));
  }
  return emb;
}

namespace {

// Hinge loss of one layout; accumulates subgradients into g_lo/g_hi.
double box_loss(const std::vector<Box>& boxes, const std::vector<std::pair<std::size_t, std::size_t>>& nested,
                const std::vector<std::pair<std::size_t, std::size_t>>& apart, double m,
                std::vector<Eigen::VectorXd>& g_lo, std::vector<Eigen::VectorXd>& g_hi) {
  const Eigen::Index D = boxes.front().lo.size();
  for (std::size_t v = 0; v < boxes.size(); ++v) {
    g_lo[v] = Eigen::VectorXd::Zero(D);
    g_hi[v] = Eigen::VectorXd::Zero(D);
  }
  double loss = 0.0;
  for (auto [c, p] : nested) {
    for (Eigen::Index d = 0; d < D; ++d) {
      const double low_gap = boxes[p].lo[d] - boxes[c].lo[d] + m;
      if (low_gap > 0.0) {
        loss += low_gap;
        g_lo[p][d] += 1.0;
        g_lo[c][d] -= 1.0;
      }
      const double high_gap = boxes[c].hi[d] - boxes[p].hi[d] + m;
      if (high_gap > 0.0) {
        loss += high_gap;
        g_hi[c][d] += 1.0;
        g_hi[p][d] -= 1.0;
      }
    }
  }

  // Separation along one axis means one interval ends `margin` before the
  // other starts. Take the cheapest (axis, side) and push the facing faces apart.
  for (auto [a, b] : apart) {
    Eigen::Index axis = 0;
    bool a_left = true;
    double least = 0.0;
    for (Eigen::Index d = 0; d < D; ++d) {
      const double left = boxes[a].hi[d] - boxes[b].lo[d];
      const double right = boxes[b].hi[d] - boxes[a].lo[d];
      const double v = std::min(left, right);
      if (d == 0 || v < least) {
        least = v;
        axis = d;
        a_left = left <= right;
      }
    }
    const double violation = least + m;
    if (violation > 0.0) {
      loss += violation;
      const std::size_t lower = a_left ? a : b, upper = a_left ? b : a;
      g_hi[lower][axis] += 1.0;
      g_lo[upper][axis] -= 1.0;
    }
  }
  return loss;
}

}  // namespace

BoxResult fit_boxes(const Taxonomy& taxonomy, const BoxConfig& config) {
  if (!(config.lr > 0.0)) throw InputError("learning rate must be positive");
  if (config.margin < 0.0) throw InputError("margin must be non-negative");
  if (config.restarts < 1) throw InputError("restarts must be at least 1");
  const std::size_t n = taxonomy.num_nodes();
  const double m = config.margin;

  const auto nested = taxonomy.ancestor_pairs();
  std::vector<std::vector<bool>> related(n, std::vector<bool>(n, false));
  for (auto [d, a] : nested) related[d][a] = related[a][d] = true;
  std::vector<std::pair<std::size_t, std::size_t>> apart;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if (!related[a][b]) apart.emplace_back(a, b);
    }
  }
  const double terms = static_cast<double>(std::max<std::size_t>(nested.size() + apart.size(), 1));
  const double step = config.lr / terms;

  std::vector<Eigen::VectorXd> g_lo(n), g_hi(n);
  std::optional<BoxResult> best;
  double best_loss = 0.0;
  for (std::size_t restart = 0; restart < config.restarts; ++restart) {
    BoxConfig start = config;
    if (restart > 0) start.seed = Rng(config.seed).split("restart-" + std::to_string(restart)).next();
    BoxResult run{init_boxes(taxonomy, start), {}};
    auto& boxes = run.embedding.boxes;
    for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
      const double loss = box_loss(boxes, nested, apart, m, g_lo, g_hi);
      run.loss_history.push_back(loss / terms);
      if (loss == 0.0) continue;
      for (std::size_t v = 0; v < n; ++v) {
        boxes[v].lo -= step * g_lo[v];
        boxes[v].hi -= step * g_hi[v];
        for (Eigen::Index d = 0; d < boxes[v].lo.size(); ++d) {
          if (boxes[v].lo[d] > boxes[v].hi[d]) boxes[v].lo[d] = boxes[v].hi[d] = 0.5 * (boxes[v].lo[d] + boxes[v].hi[d]);
        }
      }
    }
    const double final_loss = box_loss(boxes, nested, apart, m, g_lo, g_hi);
    if (!best || final_loss < best_loss) {
      best_loss = final_loss;
      best = std::move(run);
    }
    if (best_loss == 0.0) break;
  }
  return std::move(*best);
}

double containment_accuracy(const BoxEmbedding& embedding) {
  const auto pairs = embedding.taxonomy.ancestor_pairs();
  if (pairs.empty()) return 1.0;
  std::size_t ok = 0;
  for (auto [d, a] : pairs) {
    if (box_contains(embedding.boxes.at(a), embedding.boxes.at(d))) ++ok;
  }
  return static_cast<double>(ok) / static_cast<double>(pairs.size());
}

Context containment_context(const BoxEmbedding& embedding) {
  const auto& tax = embedding.taxonomy;
  const auto leaves = tax.leaves();
  std::vector<std::string> objects;
  std::vector<std::vector<bool>> incidence;
  for (std::size_t leaf : leaves) {
    objects.push_back(tax.name(leaf));
    auto& row = incidence.emplace_back();
    for (std::size_t v = 0; v < tax.num_nodes(); ++v) {
      row.push_back(box_contains(embedding.boxes.at(v), embedding.boxes.at(leaf)));
    }
  }
  return Context(std::move(objects), tax.nodes(), incidence);
}

}  // namespace conceptkit
