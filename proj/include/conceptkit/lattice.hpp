#pragma once

// Formal concept analysis: contexts, the derivation operators forming the
// Galois connection between object sets and attribute sets, lectic-order
// concept enumeration and the resulting concept lattice.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace conceptkit {

using BitSet = boost::dynamic_bitset<std::uint64_t>;
using ObjectSet = BitSet;
using AttributeSet = BitSet;

/// Ascending member indices of a bitset.
std::vector<std::size_t> to_indices(const BitSet& set);

/// Binary object x attribute incidence table. Rows and columns are both stored
/// packed so either derivation is a sequence of word-wise intersections.
class Context {
 public:
  Context() = default;

  /// incidence[o][a] is true when object o has attribute a. Throws InputError
  /// on ragged rows or duplicate identifiers.
  Context(std::vector<std::string> objects, std::vector<std::string> attributes,
          const std::vector<std::vector<bool>>& incidence);

  std::size_t num_objects() const noexcept { return objects_.size(); }
  std::size_t num_attributes() const noexcept { return attributes_.size(); }

  const std::vector<std::string>& objects() const noexcept { return objects_; }
  const std::vector<std::string>& attributes() const noexcept { return attributes_; }

  bool incident(std::size_t object, std::size_t attribute) const;

  /// Attributes held by one object.
  const AttributeSet& row(std::size_t object) const { return rows_.at(object); }
  /// Objects holding one attribute.
  const ObjectSet& column(std::size_t attribute) const { return columns_.at(attribute); }

  ObjectSet all_objects() const;
  AttributeSet all_attributes() const;

  ObjectSet object_set(std::span<const std::size_t> indices) const;
  AttributeSet attribute_set(std::span<const std::size_t> indices) const;

  std::optional<std::size_t> object_index(const std::string& name) const;
  std::optional<std::size_t> attribute_index(const std::string& name) const;

  friend bool operator==(const Context& a, const Context& b) {
    return a.objects_ == b.objects_ && a.attributes_ == b.attributes_ && a.rows_ == b.rows_;
  }

 private:
  std::vector<std::string> objects_;
  std::vector<std::string> attributes_;
  std::vector<AttributeSet> rows_;
  std::vector<ObjectSet> columns_;
};

struct FormalConcept {
  ObjectSet extent;
  AttributeSet intent;

  friend bool operator==(const FormalConcept&, const FormalConcept&) = default;
};

/// Attributes shared by every object of `extent`; all attributes for an empty extent.
AttributeSet derive_intent(const Context& ctx, const ObjectSet& extent);
std::vector<std::size_t> derive_intent(const Context& ctx, std::span<const std::size_t> extent);

/// Objects having every attribute of `intent`; all objects for an empty intent.
ObjectSet derive_extent(const Context& ctx, const AttributeSet& intent);
std::vector<std::size_t> derive_extent(const Context& ctx, std::span<const std::size_t> intent);

/// derive_intent(derive_extent(attrs)).
AttributeSet closure(const Context& ctx, const AttributeSet& attrs);
std::vector<std::size_t> closure(const Context& ctx, std::span<const std::size_t> attrs);

/// Every formal concept of `ctx` exactly once, intents in lectic order
/// (attribute 0 is the most significant position).
std::vector<FormalConcept> enumerate_concepts(const Context& ctx);

/// Concepts ordered by extent inclusion, stored as the Hasse diagram.
class ConceptLattice {
 public:
  std::size_t size() const noexcept { return concepts_.size(); }
  const std::vector<FormalConcept>& concepts() const noexcept { return concepts_; }
  const FormalConcept& concept_at(std::size_t i) const { return concepts_.at(i); }

  std::size_t top() const noexcept { return top_; }
  std::size_t bottom() const noexcept { return bottom_; }

  /// Cover pairs (lower, upper), sorted.
  const std::vector<std::pair<std::size_t, std::size_t>>& covers() const noexcept { return covers_; }
  const std::vector<std::size_t>& upper_covers(std::size_t i) const { return upper_.at(i); }
  const std::vector<std::size_t>& lower_covers(std::size_t i) const { return lower_.at(i); }

  /// a is at most as general as b: extent(a) is a subset of extent(b).
  bool leq(std::size_t a, std::size_t b) const;

  /// Longest cover chain from bottom to top, in edges.
  std::size_t height() const noexcept { return height_; }

  std::optional<std::size_t> find_by_intent(const AttributeSet& intent) const;
  std::optional<std::size_t> find_by_extent(const ObjectSet& extent) const;

 private:
  friend ConceptLattice build_lattice(std::vector<FormalConcept> concepts);

  std::vector<FormalConcept> concepts_;
  std::vector<std::pair<std::size_t, std::size_t>> covers_;
  std::vector<std::vector<std::size_t>> upper_;
  std::vector<std::vector<std::size_t>> lower_;
  std::map<BitSet, std::size_t> by_intent_;
  std::map<BitSet, std::size_t> by_extent_;
  std::size_t top_ = 0;
  std::size_t bottom_ = 0;
  std::size_t height_ = 0;
};

/// Builds the lattice of a complete concept family. Throws InputError on an
/// empty family, duplicates, or a family with no unique top/bottom.
ConceptLattice build_lattice(std::vector<FormalConcept> concepts);

/// Least upper bound. Its intent is the intersection of both intents.
std::size_t join(const ConceptLattice& lattice, std::size_t a, std::size_t b);

/// Greatest lower bound. Its extent is the intersection of both extents.
std::size_t meet(const ConceptLattice& lattice, std::size_t a, std::size_t b);

struct LatticeLawReport {
  bool passed = true;
  std::size_t pairs_checked = 0;
  std::size_t violation_count = 0;
  std::vector<std::string> violations;  // first few, human readable
};

/// Exhaustive over all pairs: joins and meets exist, commutativity,
/// absorption, idempotence, and the order duality
/// intent(b) <= intent(a) iff extent(a) <= extent(b).
LatticeLawReport check_lattice_laws(const ConceptLattice& lattice, std::size_t max_reported = 16);

}  // namespace conceptkit
