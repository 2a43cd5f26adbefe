#pragma once

// Reference implementations used only by tests. They share no code with the
// library: plain loops over bool matrices and std::vector.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

using Incidence = std::vector<std::vector<bool>>;
using Set = std::vector<std::size_t>;  // sorted indices

struct Concept {
  Set extent;
  Set intent;
  friend bool operator<(const Concept& a, const Concept& b) {
    return std::tie(a.extent, a.intent) < std::tie(b.extent, b.intent);
  }
  friend bool operator==(const Concept&, const Concept&) = default;
};

inline Set common_attributes(const Incidence& inc, std::size_t n_attr, const Set& objects) {
  Set out;
  for (std::size_t a = 0; a < n_attr; ++a) {
    bool all = true;
    for (std::size_t o : objects) all = all && inc[o][a];
    if (all) out.push_back(a);
  }
  return out;
}

inline Set common_objects(const Incidence& inc, const Set& attributes) {
  Set out;
  for (std::size_t o = 0; o < inc.size(); ++o) {
    bool all = true;
    for (std::size_t a : attributes) all = all && inc[o][a];
    if (all) out.push_back(o);
  }
  return out;
}

/// Every concept, found by closing all 2^m attribute subsets.
inline std::set<Concept> all_concepts(const Incidence& inc, std::size_t n_attr) {
  std::set<Concept> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n_attr); ++mask) {
    Set attrs;
    for (std::size_t a = 0; a < n_attr; ++a) {
      if (mask >> a & 1U) attrs.push_back(a);
    }
    Set ext = common_objects(inc, attrs);
    out.insert({ext, common_attributes(inc, n_attr, ext)});
  }
  return out;
}

inline bool subset(const Set& a, const Set& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

/// Least upper bound by scanning every upper bound; nullopt if none is least.
inline std::optional<std::size_t> least_upper_bound(const std::vector<Concept>& cs, std::size_t a, std::size_t b) {
  std::vector<std::size_t> ub;
  for (std::size_t c = 0; c < cs.size(); ++c) {
    if (subset(cs[a].extent, cs[c].extent) && subset(cs[b].extent, cs[c].extent)) ub.push_back(c);
  }
  for (std::size_t c : ub) {
    bool least = true;
    for (std::size_t d : ub) least = least && subset(cs[c].extent, cs[d].extent);
    if (least) return c;
  }
  return std::nullopt;
}

inline std::optional<std::size_t> greatest_lower_bound(const std::vector<Concept>& cs, std::size_t a, std::size_t b) {
  std::vector<std::size_t> lb;
  for (std::size_t c = 0; c < cs.size(); ++c) {
    if (subset(cs[c].extent, cs[a].extent) && subset(cs[c].extent, cs[b].extent)) lb.push_back(c);
  }
  for (std::size_t c : lb) {
    bool greatest = true;
    for (std::size_t d : lb) greatest = greatest && subset(cs[d].extent, cs[c].extent);
    if (greatest) return c;
  }
  return std::nullopt;
}

/// Cover pairs (lower, upper) by brute-force pairwise inclusion.
inline std::set<std::pair<std::size_t, std::size_t>> covers(const std::vector<Concept>& cs) {
  std::set<std::pair<std::size_t, std::size_t>> out;
  auto strictly_below = [&](std::size_t x, std::size_t y) {
    return x != y && subset(cs[x].extent, cs[y].extent);
  };
  for (std::size_t a = 0; a < cs.size(); ++a) {
    for (std::size_t b = 0; b < cs.size(); ++b) {
      if (!strictly_below(a, b)) continue;
      bool direct = true;
      for (std::size_t c = 0; c < cs.size() && direct; ++c) {
        if (strictly_below(a, c) && strictly_below(c, b)) direct = false;
      }
      if (direct) out.emplace(a, b);
    }
  }
  return out;
}

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace oracle
