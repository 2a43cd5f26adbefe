#pragma once

// Seeded synthetic data. Every generator is a pure function of its arguments.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "conceptkit/embedding.hpp"
#include "conceptkit/group.hpp"
#include "conceptkit/lattice.hpp"
#include "conceptkit/taxonomy.hpp"

namespace conceptkit {

/// Objects o0.., attributes a0.., each cell Bernoulli(density).
Context gen_context(std::size_t objects, std::size_t attributes, double density, std::uint64_t seed);

/// Complete tree of the given depth and branching, nodes named n0 (root),
/// n1, ... in breadth-first order. Throws InputError above 10^6 nodes.
Taxonomy gen_tree(std::size_t depth, std::size_t branching);

/// Each sentence picks one topic uniformly and draws `sentence_length` tokens
/// uniformly from that topic's vocabulary. Tokens are named t<topic>w<index>.
Corpus gen_topic_corpus(std::size_t topics, std::size_t vocab_per_topic, std::size_t sentences, std::uint64_t seed,
                        std::size_t sentence_length = 10);

struct LabelledPoints {
  Eigen::MatrixXd points;  // one row per point
  std::vector<std::string> labels;
};

/// Isotropic Gaussian blobs around the given centers (one center per row),
/// labelled c0, c1, ...
LabelledPoints gen_blobs(const Eigen::MatrixXd& centers, std::size_t per_center, double spread, std::uint64_t seed);

/// Two interleaved half circles with Gaussian jitter, labelled upper/lower.
LabelledPoints gen_two_moons(std::size_t points, double noise, std::uint64_t seed);

struct TorusOrbits {
  GroupSpec group;                  // cyclic(n1) x cyclic(n2)
  Eigen::MatrixXd points;           // rows (cos t1, sin t1, cos t2, sin t2)
  std::vector<GroupElement> labels; // grid index (k1, k2) of each row
};

/// Points of the discrete torus grid t_i = 2 pi k_i / n_i. samples = 0 (or at
/// least n1 * n2) returns the whole grid in order, otherwise a seeded sample
/// without replacement.
TorusOrbits gen_torus_orbits(std::size_t n1, std::size_t n2, std::size_t samples, std::uint64_t seed);

}  // namespace conceptkit
