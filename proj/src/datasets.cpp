#include "conceptkit/datasets.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "conceptkit/error.hpp"
#include "conceptkit/rng.hpp"

namespace conceptkit {

Context gen_context(std::size_t objects, std::size_t attributes, double density, std::uint64_t seed) {
  if (!(density >= 0.0 && density <= 1.0)) throw InputError("density must lie in [0, 1]");
  Rng rng = Rng(seed).split("context");
  std::vector<std::string> obj, att;
  for (std::size_t i = 0; i < objects; ++i) obj.push_back("o" + std::to_string(i));
  for (std::size_t j = 0; j < attributes; ++j) att.push_back("a" + std::to_string(j));
  std::vector<std::vector<bool>> incidence(objects, std::vector<bool>(attributes));
  for (auto& row : incidence) {
    for (std::size_t j = 0; j < attributes; ++j) row[j] = rng.uniform() < density;
  }
  return Context(std::move(obj), std::move(att), incidence);
}

Taxonomy gen_tree(std::size_t depth, std::size_t branching) {
  if (depth < 1 || branching < 1) throw InputError("depth and branching must be at least 1");
  constexpr std::size_t kMaxNodes = 1'000'000;
  std::size_t total = 1, level = 1;
  for (std::size_t d = 0; d < depth; ++d) {
    if (level > kMaxNodes / branching) throw InputError("tree would exceed 10^6 nodes");
    level *= branching;
    total += level;
    if (total > kMaxNodes) throw InputError("tree would exceed 10^6 nodes");
  }
  std::vector<std::pair<std::string, std::string>> edges;
  edges.reserve(total - 1);
  for (std::size_t child = 1; child < total; ++child) {
    edges.emplace_back("n" + std::to_string(child), "n" + std::to_string((child - 1) / branching));
  }
  return Taxonomy::from_edges(edges);
}

Corpus gen_topic_corpus(std::size_t topics, std::size_t vocab_per_topic, std::size_t sentences, std::uint64_t seed,
                        std::size_t sentence_length) {
  if (topics < 1 || vocab_per_topic < 1 || sentences < 1 || sentence_length < 1) {
    throw InputError("corpus sizes must all be at least 1");
  }
  Rng rng = Rng(seed).split("topic-corpus");
  Corpus corpus;
  corpus.reserve(sentences);
  for (std::size_t s = 0; s < sentences; ++s) {
    const auto topic = rng.below(topics);
    Sentence sentence;
    for (std::size_t t = 0; t < sentence_length; ++t) {
      sentence.push_back("t" + std::to_string(topic) + "w" + std::to_string(rng.below(vocab_per_topic)));
    }
    corpus.push_back(std::move(sentence));
  }
  return corpus;
}

LabelledPoints gen_blobs(const Eigen::MatrixXd& centers, std::size_t per_center, double spread, std::uint64_t seed) {
  if (centers.rows() < 1 || centers.cols() < 1 || per_center < 1) throw InputError("blobs need centers and points");
  if (!(spread >= 0.0)) throw InputError("spread must be non-negative");
  Rng rng = Rng(seed).split("blobs");
  LabelledPoints out;
  out.points.resize(centers.rows() * static_cast<Eigen::Index>(per_center), centers.cols());
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < centers.rows(); ++c) {
    for (std::size_t i = 0; i < per_center; ++i, ++r) {
      for (Eigen::Index j = 0; j < centers.cols(); ++j) out.points(r, j) = centers(c, j) + spread * rng.normal();
      out.labels.push_back("c" + std::to_string(c));
    }
  }
  return out;
}

LabelledPoints gen_two_moons(std::size_t points, double noise, std::uint64_t seed) {
  if (points < 2) throw InputError("two moons needs at least two points");
  if (!(noise >= 0.0)) throw InputError("noise must be non-negative");
  Rng rng = Rng(seed).split("two-moons");
  LabelledPoints out;
  out.points.resize(static_cast<Eigen::Index>(points), 2);
  const std::size_t upper = points / 2 + points % 2;
  for (std::size_t i = 0; i < points; ++i) {
    const bool is_upper = i < upper;
    const double t = std::numbers::pi * rng.uniform();
    double x = is_upper ? std::cos(t) : 1.0 - std::cos(t);
    double y = is_upper ? std::sin(t) : 0.5 - std::sin(t);
    x += noise * rng.normal();
    y += noise * rng.normal();
    out.points(static_cast<Eigen::Index>(i), 0) = x;
    out.points(static_cast<Eigen::Index>(i), 1) = y;
    out.labels.emplace_back(is_upper ? "upper" : "lower");
  }
  return out;
}

TorusOrbits gen_torus_orbits(std::size_t n1, std::size_t n2, std::size_t samples, std::uint64_t seed) {
  if (n1 < 2 || n2 < 2) throw InputError("torus grid sizes must be at least 2");
  std::vector<std::size_t> cells(n1 * n2);
  std::iota(cells.begin(), cells.end(), 0);
  if (samples != 0 && samples < cells.size()) {
    Rng rng = Rng(seed).split("torus");
    rng.shuffle(std::span<std::size_t>(cells));
    cells.resize(samples);
  }
  TorusOrbits out{GroupSpec::product({GroupSpec::cyclic(n1), GroupSpec::cyclic(n2)}), {}, {}};
  out.points.resize(static_cast<Eigen::Index>(cells.size()), 4);
  for (std::size_t r = 0; r < cells.size(); ++r) {
    const std::size_t k1 = cells[r] / n2, k2 = cells[r] % n2;
    const double t1 = 2.0 * std::numbers::pi * static_cast<double>(k1) / static_cast<double>(n1);
    const double t2 = 2.0 * std::numbers::pi * static_cast<double>(k2) / static_cast<double>(n2);
    out.points.row(static_cast<Eigen::Index>(r)) << std::cos(t1), std::sin(t1), std::cos(t2), std::sin(t2);
    out.labels.push_back({static_cast<double>(k1), static_cast<double>(k2)});
  }
  return out;
}

}  // namespace conceptkit
