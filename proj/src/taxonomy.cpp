#include "conceptkit/taxonomy.hpp"

#include <algorithm>
#include <map>

#include "conceptkit/error.hpp"

namespace conceptkit {

Taxonomy Taxonomy::from_edges(const std::vector<std::pair<std::string, std::string>>& child_parent) {
  Taxonomy t;
  std::map<std::string, std::size_t> ids;
  auto intern = [&](const std::string& name) {
    if (name.empty()) throw InputError("taxonomy node names must be non-empty");
    auto [it, fresh] = ids.emplace(name, t.nodes_.size());
    if (fresh) t.nodes_.push_back(name);
    return it->second;
  };
  for (const auto& [child, parent] : child_parent) {
    const std::size_t c = intern(child);
    const std::size_t p = intern(parent);
    if (c == p) throw InputError("self-loop on taxonomy node '" + child + "'");
    t.edges_.emplace_back(c, p);
  }
  std::sort(t.edges_.begin(), t.edges_.end());
  t.edges_.erase(std::unique(t.edges_.begin(), t.edges_.end()), t.edges_.end());

  t.parents_.assign(t.nodes_.size(), {});
  t.children_.assign(t.nodes_.size(), {});
  for (auto [c, p] : t.edges_) {
    t.parents_[c].push_back(p);
    t.children_[p].push_back(c);
  }

  // Kahn's algorithm; leftover nodes sit on a cycle.
  std::vector<std::size_t> pending(t.nodes_.size());
  std::vector<std::size_t> ready;
  for (std::size_t v = 0; v < t.nodes_.size(); ++v) {
    pending[v] = t.parents_[v].size();
    if (pending[v] == 0) ready.push_back(v);
  }
  std::size_t seen = 0;
  while (!ready.empty()) {
    const std::size_t v = ready.back();
    ready.pop_back();
    ++seen;
    for (std::size_t c : t.children_[v]) {
      if (--pending[c] == 0) ready.push_back(c);
    }
  }
  if (seen != t.nodes_.size()) throw InputError("taxonomy contains a cycle");
  return t;
}

std::optional<std::size_t> Taxonomy::index(const std::string& name) const {
  auto it = std::find(nodes_.begin(), nodes_.end(), name);
  if (it == nodes_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - nodes_.begin());
}

std::vector<std::pair<std::string, std::string>> Taxonomy::named_edges() const {
  std::vector<std::pair<std::string, std::string>> out;
  out.reserve(edges_.size());
  for (auto [c, p] : edges_) out.emplace_back(nodes_[c], nodes_[p]);
  return out;
}

std::vector<std::size_t> Taxonomy::ancestors(std::size_t node) const {
  std::vector<bool> mark(nodes_.size(), false);
  std::vector<std::size_t> stack(parents_.at(node).begin(), parents_.at(node).end());
  while (!stack.empty()) {
    const std::size_t v = stack.back();
    stack.pop_back();
    if (mark[v]) continue;
    mark[v] = true;
    stack.insert(stack.end(), parents_[v].begin(), parents_[v].end());
  }
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < nodes_.size(); ++v) {
    if (mark[v]) out.push_back(v);
  }
  return out;
}

std::vector<std::pair<std::size_t, std::size_t>> Taxonomy::ancestor_pairs() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t v = 0; v < nodes_.size(); ++v) {
    for (std::size_t a : ancestors(v)) out.emplace_back(v, a);
  }
  return out;
}

bool Taxonomy::is_descendant_or_self(std::size_t descendant, std::size_t ancestor) const {
  if (descendant == ancestor) return true;
  const auto anc = ancestors(descendant);
  return std::binary_search(anc.begin(), anc.end(), ancestor);
}

std::vector<std::size_t> Taxonomy::leaves() const {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < nodes_.size(); ++v) {
    if (children_[v].empty()) out.push_back(v);
  }
  return out;
}

}  // namespace conceptkit
