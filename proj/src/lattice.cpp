#include "conceptkit/lattice.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "conceptkit/error.hpp"

namespace conceptkit {

namespace {

void require_unique(const std::vector<std::string>& names, const char* what) {
  std::set<std::string> seen;
  for (const auto& n : names) {
    if (!seen.insert(n).second) {
      throw InputError(std::string("duplicate ") + what + " identifier '" + n + "'");
    }
  }
}

BitSet indices_to_set(std::span<const std::size_t> indices, std::size_t size, const char* what) {
  BitSet set(size);
  for (std::size_t i : indices) {
    if (i >= size) {
      throw InputError(std::string(what) + " index " + std::to_string(i) + " out of range (size " +
                       std::to_string(size) + ")");
    }
    set.set(i);
  }
  return set;
}

void require_size(const BitSet& set, std::size_t size, const char* what) {
  if (set.size() != size) {
    throw InputError(std::string(what) + " set has " + std::to_string(set.size()) +
                     " positions, context has " + std::to_string(size));
  }
}

}  // namespace

std::vector<std::size_t> to_indices(const BitSet& set) {
  std::vector<std::size_t> out;
  out.reserve(set.count());
  for (auto i = set.find_first(); i != BitSet::npos; i = set.find_next(i)) out.push_back(i);
  return out;
}

Context::Context(std::vector<std::string> objects, std::vector<std::string> attributes,
                 const std::vector<std::vector<bool>>& incidence)
    : objects_(std::move(objects)), attributes_(std::move(attributes)) {
  require_unique(objects_, "object");
  require_unique(attributes_, "attribute");
  if (incidence.size() != objects_.size()) {
    throw InputError("incidence has " + std::to_string(incidence.size()) + " rows for " +
                     std::to_string(objects_.size()) + " objects");
  }
  rows_.assign(objects_.size(), AttributeSet(attributes_.size()));
  columns_.assign(attributes_.size(), ObjectSet(objects_.size()));
  for (std::size_t o = 0; o < objects_.size(); ++o) {
    if (incidence[o].size() != attributes_.size()) {
      throw InputError("incidence row " + std::to_string(o) + " has " + std::to_string(incidence[o].size()) +
                       " columns for " + std::to_string(attributes_.size()) + " attributes");
    }
    for (std::size_t a = 0; a < attributes_.size(); ++a) {
      if (incidence[o][a]) {
        rows_[o].set(a);
        columns_[a].set(o);
      }
    }
  }
}

bool Context::incident(std::size_t object, std::size_t attribute) const {
  if (object >= num_objects() || attribute >= num_attributes()) {
    throw InputError("incidence lookup out of range");
  }
  return rows_[object].test(attribute);
}

ObjectSet Context::all_objects() const { return ObjectSet(num_objects()).set(); }
AttributeSet Context::all_attributes() const { return AttributeSet(num_attributes()).set(); }

ObjectSet Context::object_set(std::span<const std::size_t> indices) const {
  return indices_to_set(indices, num_objects(), "object");
}

AttributeSet Context::attribute_set(std::span<const std::size_t> indices) const {
  return indices_to_set(indices, num_attributes(), "attribute");
}

std::optional<std::size_t> Context::object_index(const std::string& name) const {
  auto it = std::find(objects_.begin(), objects_.end(), name);
  if (it == objects_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - objects_.begin());
}

std::optional<std::size_t> Context::attribute_index(const std::string& name) const {
  auto it = std::find(attributes_.begin(), attributes_.end(), name);
  if (it == attributes_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - attributes_.begin());
}

AttributeSet derive_intent(const Context& ctx, const ObjectSet& extent) {
  require_size(extent, ctx.num_objects(), "object");
  AttributeSet intent = ctx.all_attributes();
  for (auto o = extent.find_first(); o != BitSet::npos; o = extent.find_next(o)) {
    intent &= ctx.row(o);
  }
  return intent;
}

std::vector<std::size_t> derive_intent(const Context& ctx, std::span<const std::size_t> extent) {
  return to_indices(derive_intent(ctx, ctx.object_set(extent)));
}

ObjectSet derive_extent(const Context& ctx, const AttributeSet& intent) {
  require_size(intent, ctx.num_attributes(), "attribute");
  ObjectSet extent = ctx.all_objects();
  for (auto a = intent.find_first(); a != BitSet::npos; a = intent.find_next(a)) {
    extent &= ctx.column(a);
  }
  return extent;
}

std::vector<std::size_t> derive_extent(const Context& ctx, std::span<const std::size_t> intent) {
  return to_indices(derive_extent(ctx, ctx.attribute_set(intent)));
}

AttributeSet closure(const Context& ctx, const AttributeSet& attrs) {
  return derive_intent(ctx, derive_extent(ctx, attrs));
}

std::vector<std::size_t> closure(const Context& ctx, std::span<const std::size_t> attrs) {
  return to_indices(closure(ctx, ctx.attribute_set(attrs)));
}

std::vector<FormalConcept> enumerate_concepts(const Context& ctx) {
  const std::size_t m = ctx.num_attributes();
  std::vector<FormalConcept> out;

  AttributeSet current = closure(ctx, AttributeSet(m));
  out.push_back({derive_extent(ctx, current), current});

  // prefix[i] masks attributes 0..i-1.
  std::vector<AttributeSet> prefix(m + 1, AttributeSet(m));
  for (std::size_t i = 1; i <= m; ++i) {
    prefix[i] = prefix[i - 1];
    prefix[i].set(i - 1);
  }

  while (current.count() < m) {
    bool advanced = false;
    for (std::size_t i = m; i-- > 0;) {
      if (current.test(i)) continue;
      AttributeSet candidate = current & prefix[i];
      candidate.set(i);
      ObjectSet extent = derive_extent(ctx, candidate);
      AttributeSet next = derive_intent(ctx, extent);
      // Canonicity: closing must not add anything before position i.
      if (((next - current) & prefix[i]).none()) {
        current = std::move(next);
        out.push_back({std::move(extent), current});
        advanced = true;
        break;
      }
    }
    if (!advanced) break;
  }
  return out;
}

bool ConceptLattice::leq(std::size_t a, std::size_t b) const {
  if (a >= size() || b >= size()) throw InputError("concept index out of range");
  return concepts_[a].extent.is_subset_of(concepts_[b].extent);
}

std::optional<std::size_t> ConceptLattice::find_by_intent(const AttributeSet& intent) const {
  auto it = by_intent_.find(intent);
  if (it == by_intent_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> ConceptLattice::find_by_extent(const ObjectSet& extent) const {
  auto it = by_extent_.find(extent);
  if (it == by_extent_.end()) return std::nullopt;
  return it->second;
}

ConceptLattice build_lattice(std::vector<FormalConcept> concepts) {
  if (concepts.empty()) throw InputError("cannot build a lattice from zero concepts");
  const std::size_t n = concepts.size();
  const std::size_t n_obj = concepts.front().extent.size();
  const std::size_t n_attr = concepts.front().intent.size();

  ConceptLattice lat;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& c = concepts[i];
    if (c.extent.size() != n_obj || c.intent.size() != n_attr) {
      throw InputError("concept " + std::to_string(i) + " has inconsistent set widths");
    }
    if (!lat.by_extent_.emplace(c.extent, i).second || !lat.by_intent_.emplace(c.intent, i).second) {
      throw InputError("duplicate concept at position " + std::to_string(i));
    }
  }

  auto widest = [&](auto member) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < n; ++i) {
      if ((concepts[i].*member).count() > (concepts[best].*member).count()) best = i;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (!(concepts[i].*member).is_subset_of(concepts[best].*member)) {
        throw InputError("concept family has no unique greatest element; not a complete lattice");
      }
    }
    return best;
  };
  lat.top_ = widest(&FormalConcept::extent);
  lat.bottom_ = widest(&FormalConcept::intent);

  // Visit concepts by increasing extent size: the first strict supersets seen
  // that are not above an already accepted cover are exactly the covers.
  std::vector<std::size_t> by_size(n);
  std::iota(by_size.begin(), by_size.end(), 0);
  std::stable_sort(by_size.begin(), by_size.end(), [&](std::size_t a, std::size_t b) {
    return concepts[a].extent.count() < concepts[b].extent.count();
  });

  lat.upper_.assign(n, {});
  lat.lower_.assign(n, {});
  for (std::size_t i = 0; i < n; ++i) {
    const auto& ext = concepts[i].extent;
    for (std::size_t j : by_size) {
      if (j == i || !ext.is_proper_subset_of(concepts[j].extent)) continue;
      bool is_cover = true;
      for (std::size_t k : lat.upper_[i]) {
        if (concepts[k].extent.is_subset_of(concepts[j].extent)) {
          is_cover = false;
          break;
        }
      }
      if (is_cover) lat.upper_[i].push_back(j);
    }
    for (std::size_t j : lat.upper_[i]) {
      lat.covers_.emplace_back(i, j);
      lat.lower_[j].push_back(i);
    }
  }
  std::sort(lat.covers_.begin(), lat.covers_.end());
  for (auto& v : lat.upper_) std::sort(v.begin(), v.end());
  for (auto& v : lat.lower_) std::sort(v.begin(), v.end());

  // Longest chain: relax along covers in increasing extent size.
  std::vector<std::size_t> depth(n, 0);
  for (std::size_t i : by_size) {
    for (std::size_t j : lat.upper_[i]) depth[j] = std::max(depth[j], depth[i] + 1);
  }
  lat.height_ = depth[lat.top_];

  lat.concepts_ = std::move(concepts);
  return lat;
}

std::size_t join(const ConceptLattice& lattice, std::size_t a, std::size_t b) {
  if (a >= lattice.size() || b >= lattice.size()) throw InputError("concept index out of range");
  const AttributeSet shared = lattice.concept_at(a).intent & lattice.concept_at(b).intent;
  auto found = lattice.find_by_intent(shared);
  if (!found) throw InputError("intent intersection is not a concept; lattice is incomplete");
  return *found;
}

std::size_t meet(const ConceptLattice& lattice, std::size_t a, std::size_t b) {
  if (a >= lattice.size() || b >= lattice.size()) throw InputError("concept index out of range");
  const ObjectSet shared = lattice.concept_at(a).extent & lattice.concept_at(b).extent;
  auto found = lattice.find_by_extent(shared);
  if (!found) throw InputError("extent intersection is not a concept; lattice is incomplete");
  return *found;
}

LatticeLawReport check_lattice_laws(const ConceptLattice& lattice, std::size_t max_reported) {
  LatticeLawReport report;
  const std::size_t n = lattice.size();
  auto fail = [&](std::string what) {
    report.passed = false;
    ++report.violation_count;
    if (report.violations.size() < max_reported) report.violations.push_back(std::move(what));
  };
  auto pair_name = [](const char* law, std::size_t a, std::size_t b) {
    return std::string(law) + " (" + std::to_string(a) + ", " + std::to_string(b) + ")";
  };
  auto try_op = [](auto op, std::size_t a, std::size_t b) -> std::optional<std::size_t> {
    try {
      return op(a, b);
    } catch (const InputError&) {
      return std::nullopt;
    }
  };
  auto j = [&](std::size_t a, std::size_t b) { return join(lattice, a, b); };
  auto m = [&](std::size_t a, std::size_t b) { return meet(lattice, a, b); };

  for (std::size_t a = 0; a < n; ++a) {
    const auto& ca = lattice.concept_at(a);
    for (std::size_t b = 0; b < n; ++b) {
      ++report.pairs_checked;
      const auto& cb = lattice.concept_at(b);
      const bool ext_le = ca.extent.is_subset_of(cb.extent);
      const bool int_ge = cb.intent.is_subset_of(ca.intent);
      if (ext_le != int_ge || ext_le != lattice.leq(a, b)) fail(pair_name("duality", a, b));

      const auto ab_join = try_op(j, a, b), ba_join = try_op(j, b, a);
      const auto ab_meet = try_op(m, a, b), ba_meet = try_op(m, b, a);
      if (!ab_join || !ba_join) {
        fail(pair_name("join missing", a, b));
        continue;
      }
      if (!ab_meet || !ba_meet) {
        fail(pair_name("meet missing", a, b));
        continue;
      }
      if (*ab_join != *ba_join) fail(pair_name("join commutativity", a, b));
      if (*ab_meet != *ba_meet) fail(pair_name("meet commutativity", a, b));
      const auto absorb_join = try_op(j, a, *ab_meet), absorb_meet = try_op(m, a, *ab_join);
      if (!absorb_join || *absorb_join != a) fail(pair_name("absorption a v (a ^ b)", a, b));
      if (!absorb_meet || *absorb_meet != a) fail(pair_name("absorption a ^ (a v b)", a, b));
    }
    const auto aa_join = try_op(j, a, a), aa_meet = try_op(m, a, a);
    if (!aa_join || *aa_join != a) fail(pair_name("join idempotence", a, a));
    if (!aa_meet || *aa_meet != a) fail(pair_name("meet idempotence", a, a));
  }
  return report;
}

}  // namespace conceptkit
