#pragma once

// Axis-aligned box embeddings. Boxes ordered by containment form a lattice
// with the bounding box as join and the intersection as meet.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "conceptkit/lattice.hpp"
#include "conceptkit/taxonomy.hpp"

namespace conceptkit {

struct Box {
  Eigen::VectorXd lo;
  Eigen::VectorXd hi;

  std::size_t dim() const noexcept { return static_cast<std::size_t>(lo.size()); }
  /// Throws InputError unless lo <= hi coordinate-wise with finite, equal-length corners.
  void validate() const;

  friend bool operator==(const Box& a, const Box& b) { return a.lo == b.lo && a.hi == b.hi; }
};

/// Product of edge lengths.
double box_volume(const Box& b);
/// Volume of a possibly empty box; an empty meet has volume 0.
double box_volume(const std::optional<Box>& b);

/// Intersection; nullopt when some interval inverts.
std::optional<Box> box_meet(const Box& a, const Box& b);
/// Smallest box containing both.
Box box_join(const Box& a, const Box& b);
/// inner lies inside outer in every dimension.
bool box_contains(const Box& outer, const Box& inner);

struct BoxEmbedding {
  Taxonomy taxonomy;
  std::vector<Box> boxes;  // one per taxonomy node

  std::size_t dim() const noexcept { return boxes.empty() ? 0 : boxes.front().dim(); }
  const Box& box(const std::string& node) const;
};

struct BoxConfig {
  std::size_t dim = 2;
  std::size_t epochs = 500;
  double lr = 0.05;
  double margin = 0.02;
  std::size_t restarts = 5;  // independent starts; the lowest final loss wins
  std::uint64_t seed = 0;
};

struct BoxResult {
  BoxEmbedding embedding;
  std::vector<double> loss_history;  // loss before each epoch's update, winning start only
};

/// Random boxes inside the unit cube; what fit_boxes starts from.
BoxEmbedding init_boxes(const Taxonomy& taxonomy, const BoxConfig& config);

/// Full-batch subgradient descent on hinge penalties. For every ancestor pair
/// each face of the descendant must sit `margin` inside the ancestor; for every
/// unrelated pair one box must end at least `margin` before the other starts
/// along some axis. Runs `restarts` seeded starts (the first from `seed`
/// itself) and keeps the one with the lowest final loss, stopping early at zero.
BoxResult fit_boxes(const Taxonomy& taxonomy, const BoxConfig& config);

/// Fraction of (descendant, ancestor) pairs whose boxes nest.
double containment_accuracy(const BoxEmbedding& embedding);

/// Objects are the taxonomy leaves, attributes are all nodes, and a leaf has a
/// node's attribute when the node's box contains the leaf's box.
Context containment_context(const BoxEmbedding& embedding);

}  // namespace conceptkit
