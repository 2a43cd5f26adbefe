#include "conceptkit/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <tuple>

#include "conceptkit/error.hpp"
#include "conceptkit/rng.hpp"

namespace conceptkit {

namespace {

void require_same_dim(const FeatureVector& a, const FeatureVector& b) {
  if (a.size() != b.size()) {
    throw InputError("dimension mismatch: " + std::to_string(a.size()) + " vs " + std::to_string(b.size()));
  }
}

void require_weights(const Eigen::VectorXd& w, Eigen::Index dim) {
  if (w.size() != dim) {
    throw InputError("expected " + std::to_string(dim) + " weights, got " + std::to_string(w.size()));
  }
  for (Eigen::Index i = 0; i < w.size(); ++i) {
    if (!std::isfinite(w[i]) || w[i] < 0.0) {
      throw InputError("weight " + std::to_string(i) + " must be finite and non-negative");
    }
  }
}

void require_labelled(const std::vector<FeatureVector>& points, const std::vector<std::string>& labels) {
  if (points.empty()) throw InputError("no training points");
  if (points.size() != labels.size()) throw InputError("point and label counts differ");
  for (const auto& p : points) require_same_dim(points.front(), p);
}

}  // namespace

std::string to_string(MetricKind kind) {
  switch (kind) {
    case MetricKind::weighted_l1: return "weighted-l1";
    case MetricKind::weighted_euclidean: return "weighted-euclidean";
    case MetricKind::cosine_distance: return "cosine-distance";
  }
  return "unknown";
}

MetricKind metric_kind_from_string(const std::string& name) {
  if (name == "weighted-l1" || name == "l1") return MetricKind::weighted_l1;
  if (name == "weighted-euclidean" || name == "euclidean" || name == "euclid") return MetricKind::weighted_euclidean;
  if (name == "cosine-distance" || name == "cosine") return MetricKind::cosine_distance;
  throw InputError("unknown metric kind '" + name + "'");
}

double distance_l1(const FeatureVector& a, const FeatureVector& b, const Eigen::VectorXd& weights) {
  require_same_dim(a, b);
  require_weights(weights, a.size());
  return weights.dot((a - b).cwiseAbs());
}

double distance_euclid(const FeatureVector& a, const FeatureVector& b, const Eigen::VectorXd& weights) {
  require_same_dim(a, b);
  require_weights(weights, a.size());
  return std::sqrt(weights.dot((a - b).cwiseAbs2()));
}

double cosine_similarity(const FeatureVector& a, const FeatureVector& b) {
  require_same_dim(a, b);
  const double na = a.norm();
  const double nb = b.norm();
  if (na == 0.0 || nb == 0.0) throw DomainError("cosine similarity of a zero vector");
  return std::clamp(a.dot(b) / (na * nb), -1.0, 1.0);
}

WeightedMetric WeightedMetric::uniform(MetricKind kind, std::size_t dim) {
  return {kind, Eigen::VectorXd::Ones(static_cast<Eigen::Index>(dim))};
}

void WeightedMetric::validate(std::size_t dim) const {
  if (kind != MetricKind::cosine_distance) require_weights(weights, static_cast<Eigen::Index>(dim));
}

double WeightedMetric::operator()(const FeatureVector& a, const FeatureVector& b) const {
  switch (kind) {
    case MetricKind::weighted_l1: return distance_l1(a, b, weights);
    case MetricKind::weighted_euclidean: return distance_euclid(a, b, weights);
    case MetricKind::cosine_distance: return 1.0 - cosine_similarity(a, b);
  }
  throw InputError("unknown metric kind");
}

PrototypeModel PrototypeModel::fit(const std::vector<FeatureVector>& points, const std::vector<std::string>& labels,
                                   WeightedMetric metric) {
  require_labelled(points, labels);
  metric.validate(static_cast<std::size_t>(points.front().size()));
  std::map<std::string, std::pair<FeatureVector, std::size_t>> sums;
  for (std::size_t i = 0; i < points.size(); ++i) {
    auto [it, fresh] = sums.try_emplace(labels[i], FeatureVector::Zero(points[i].size()), 0);
    it->second.first += points[i];
    it->second.second += 1;
  }
  PrototypeModel model{{}, std::move(metric)};
  for (auto& [label, acc] : sums) model.prototypes.emplace(label, acc.first / static_cast<double>(acc.second));
  return model;
}

std::size_t PrototypeModel::dim() const {
  return prototypes.empty() ? 0 : static_cast<std::size_t>(prototypes.begin()->second.size());
}

Classification classify_prototype(const PrototypeModel& model, const FeatureVector& x) {
  if (model.prototypes.empty()) throw InputError("prototype model has no classes");
  Classification best{"", 0.0};
  bool first = true;
  for (const auto& [label, proto] : model.prototypes) {
    const double d = model.metric(proto, x);
    // map iteration is label-sorted, so strict < keeps the smaller label on ties
    if (first || d < best.typicality) {
      best = {label, d};
      first = false;
    }
  }
  return best;
}

ExemplarModel ExemplarModel::fit(const std::vector<FeatureVector>& points, const std::vector<std::string>& labels,
                                 WeightedMetric metric, std::size_t k) {
  require_labelled(points, labels);
  metric.validate(static_cast<std::size_t>(points.front().size()));
  if (k < 1) throw InputError("k must be at least 1");
  if (k > points.size()) throw InputError("k exceeds the number of exemplars");
  ExemplarModel model{{}, std::move(metric), k};
  for (std::size_t i = 0; i < points.size(); ++i) model.exemplars[labels[i]].push_back(points[i]);
  return model;
}

std::size_t ExemplarModel::dim() const {
  for (const auto& [label, list] : exemplars) {
    if (!list.empty()) return static_cast<std::size_t>(list.front().size());
  }
  return 0;
}

std::size_t ExemplarModel::total() const {
  std::size_t n = 0;
  for (const auto& [label, list] : exemplars) n += list.size();
  return n;
}

Classification classify_exemplar(const ExemplarModel& model, const FeatureVector& x) {
  if (model.exemplars.empty()) throw InputError("exemplar model has no classes");
  if (model.k < 1 || model.k > model.total()) throw InputError("k must lie in [1, number of exemplars]");

  struct Neighbor {
    double distance;
    const std::string* label;
    std::size_t index;
  };
  std::vector<Neighbor> all;
  all.reserve(model.total());
  for (const auto& [label, list] : model.exemplars) {
    for (std::size_t i = 0; i < list.size(); ++i) all.push_back({model.metric(list[i], x), &label, i});
  }
  auto closer = [](const Neighbor& a, const Neighbor& b) {
    return std::tie(a.distance, *a.label, a.index) < std::tie(b.distance, *b.label, b.index);
  };
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(model.k), all.end(), closer);

  std::map<std::string, std::size_t> votes;
  double total = 0.0;
  for (std::size_t i = 0; i < model.k; ++i) {
    ++votes[*all[i].label];
    total += all[i].distance;
  }
  auto winner = votes.begin();
  for (auto it = votes.begin(); it != votes.end(); ++it) {
    if (it->second > winner->second) winner = it;
  }
  return {winner->first, total / static_cast<double>(model.k)};
}

double within_cluster_ss(const std::vector<FeatureVector>& points, const std::vector<std::size_t>& assignments,
                         const std::vector<FeatureVector>& centroids) {
  double ss = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) ss += (points[i] - centroids[assignments[i]]).squaredNorm();
  return ss;
}

KMeansResult cluster_kmeans(const std::vector<FeatureVector>& points, std::size_t k, std::uint64_t seed,
                            std::size_t max_iter) {
  if (points.empty()) throw InputError("k-means needs at least one point");
  if (k < 1 || k > points.size()) throw InputError("k must lie in [1, number of points]");
  for (const auto& p : points) {
    require_same_dim(points.front(), p);
    if (!p.allFinite()) throw InputError("k-means points must be finite");
  }

  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), 0);
  Rng rng = Rng(seed).split("kmeans");
  rng.shuffle(std::span<std::size_t>(order));

  KMeansResult result;
  for (std::size_t c = 0; c < k; ++c) result.centroids.push_back(points[order[c]]);
  result.assignments.assign(points.size(), k);  // k = unassigned sentinel

  for (std::size_t iter = 0; iter < max_iter; ++iter) {
    bool changed = false;
    for (std::size_t i = 0; i < points.size(); ++i) {
      std::size_t best = 0;
      double best_d = (points[i] - result.centroids[0]).squaredNorm();
      for (std::size_t c = 1; c < k; ++c) {
        const double d = (points[i] - result.centroids[c]).squaredNorm();
        if (d < best_d) {
          best_d = d;
          best = c;
        }
      }
      if (result.assignments[i] != best) {
        result.assignments[i] = best;
        changed = true;
      }
    }
    result.wcss_history.push_back(within_cluster_ss(points, result.assignments, result.centroids));
    result.iterations = iter + 1;
    if (!changed) {
      result.converged = true;
      break;
    }

    std::vector<FeatureVector> sums(k, FeatureVector::Zero(points.front().size()));
    std::vector<std::size_t> counts(k, 0);
    for (std::size_t i = 0; i < points.size(); ++i) {
      sums[result.assignments[i]] += points[i];
      ++counts[result.assignments[i]];
    }
    for (std::size_t c = 0; c < k; ++c) {
      if (counts[c] > 0) result.centroids[c] = sums[c] / static_cast<double>(counts[c]);
    }
  }
  return result;
}

}  // namespace conceptkit
