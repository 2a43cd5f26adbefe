#pragma once

// Weighted metric spaces over feature vectors, prototype and exemplar
// classification with typicality scores, and Lloyd's k-means.

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace conceptkit {

using FeatureVector = Eigen::VectorXd;

enum class MetricKind { weighted_l1, weighted_euclidean, cosine_distance };

std::string to_string(MetricKind kind);
MetricKind metric_kind_from_string(const std::string& name);

/// sum_i w_i |a_i - b_i|
double distance_l1(const FeatureVector& a, const FeatureVector& b, const Eigen::VectorXd& weights);

/// sqrt(sum_i w_i (a_i - b_i)^2)
double distance_euclid(const FeatureVector& a, const FeatureVector& b, const Eigen::VectorXd& weights);

/// <a,b> / (|a| |b|). Throws DomainError for a zero vector.
double cosine_similarity(const FeatureVector& a, const FeatureVector& b);

struct WeightedMetric {
  MetricKind kind = MetricKind::weighted_euclidean;
  Eigen::VectorXd weights;  // ignored by cosine_distance

  /// Unit weights of the given dimension.
  static WeightedMetric uniform(MetricKind kind, std::size_t dim);

  /// Throws InputError on negative or non-finite weights, or when the weight
  /// count differs from `dim` for weighted kinds.
  void validate(std::size_t dim) const;

  double operator()(const FeatureVector& a, const FeatureVector& b) const;
};

struct Classification {
  std::string label;
  double typicality = 0.0;  // distance to the class standard, lower is more typical
};

/// One prototype (class mean) per label. Labels are kept sorted, which gives
/// the lexicographic tie-break for free.
struct PrototypeModel {
  std::map<std::string, FeatureVector> prototypes;
  WeightedMetric metric;

  static PrototypeModel fit(const std::vector<FeatureVector>& points, const std::vector<std::string>& labels,
                            WeightedMetric metric);
  std::size_t dim() const;
};

Classification classify_prototype(const PrototypeModel& model, const FeatureVector& x);

struct ExemplarModel {
  std::map<std::string, std::vector<FeatureVector>> exemplars;
  WeightedMetric metric;
  std::size_t k = 1;

  static ExemplarModel fit(const std::vector<FeatureVector>& points, const std::vector<std::string>& labels,
                           WeightedMetric metric, std::size_t k);
  std::size_t dim() const;
  std::size_t total() const;
};

/// k-nearest-exemplar majority vote. Typicality is the mean distance to the k
/// nearest exemplars. Vote ties go to the lexicographically smaller label.
Classification classify_exemplar(const ExemplarModel& model, const FeatureVector& x);

struct KMeansResult {
  std::vector<std::size_t> assignments;
  std::vector<FeatureVector> centroids;
  /// Within-cluster sum of squares after each assignment step.
  std::vector<double> wcss_history;
  std::size_t iterations = 0;
  bool converged = false;
};

/// Lloyd iterations from the first k points of a seeded shuffle, until the
/// assignment stops changing or max_iter is reached. An empty cluster keeps
/// its previous centroid.
KMeansResult cluster_kmeans(const std::vector<FeatureVector>& points, std::size_t k, std::uint64_t seed,
                            std::size_t max_iter = 100);

double within_cluster_ss(const std::vector<FeatureVector>& points, const std::vector<std::size_t>& assignments,
                         const std::vector<FeatureVector>& centroids);

}  // namespace conceptkit
