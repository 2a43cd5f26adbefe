#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace conceptkit {

/// An is-a hierarchy given as child -> parent edges over named nodes.
/// Construction rejects cycles, so every Taxonomy is a DAG.
class Taxonomy {
 public:
  Taxonomy() = default;

  /// Nodes are numbered by first appearance in the edge list.
  static Taxonomy from_edges(const std::vector<std::pair<std::string, std::string>>& child_parent);

  std::size_t num_nodes() const noexcept { return nodes_.size(); }
  const std::vector<std::string>& nodes() const noexcept { return nodes_; }
  const std::string& name(std::size_t node) const { return nodes_.at(node); }
  std::optional<std::size_t> index(const std::string& name) const;

  /// (child, parent) index pairs in input order.
  const std::vector<std::pair<std::size_t, std::size_t>>& edges() const noexcept { return edges_; }
  std::vector<std::pair<std::string, std::string>> named_edges() const;

  const std::vector<std::size_t>& parents(std::size_t node) const { return parents_.at(node); }
  const std::vector<std::size_t>& children(std::size_t node) const { return children_.at(node); }

  /// Strict ancestors of `node`, sorted.
  std::vector<std::size_t> ancestors(std::size_t node) const;
  /// All (descendant, ancestor) pairs of the transitive closure, sorted.
  std::vector<std::pair<std::size_t, std::size_t>> ancestor_pairs() const;
  /// descendant == ancestor or descendant lies below ancestor.
  bool is_descendant_or_self(std::size_t descendant, std::size_t ancestor) const;

  std::vector<std::size_t> leaves() const;

 private:
  std::vector<std::string> nodes_;
  std::vector<std::pair<std::size_t, std::size_t>> edges_;
  std::vector<std::vector<std::size_t>> parents_;
  std::vector<std::vector<std::size_t>> children_;
};

}  // namespace conceptkit
