#include <gtest/gtest.h>

#include <set>

#include "conceptkit/datasets.hpp"
#include "conceptkit/error.hpp"
#include "conceptkit/lattice.hpp"
#include "oracles.hpp"

using namespace conceptkit;

namespace {

Context duck_dog_eel() {
  return Context({"duck", "dog", "eel"}, {"swims", "flies", "has_legs"},
                 {{true, true, true}, {false, false, true}, {true, false, false}});
}

Context diagonal(std::size_t n) {
  std::vector<std::string> obj, att;
  std::vector<std::vector<bool>> inc(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) {
    obj.push_back("o" + std::to_string(i));
    att.push_back("a" + std::to_string(i));
    inc[i][i] = true;
  }
  return Context(obj, att, inc);
}

// Object i lacks exactly attribute i.
Context contranominal(std::size_t n) {
  std::vector<std::string> obj, att;
  std::vector<std::vector<bool>> inc(n, std::vector<bool>(n, true));
  for (std::size_t i = 0; i < n; ++i) {
    obj.push_back("o" + std::to_string(i));
    att.push_back("a" + std::to_string(i));
    inc[i][i] = false;
  }
  return Context(obj, att, inc);
}

std::vector<std::vector<bool>> incidence_of(const Context& ctx) {
  std::vector<std::vector<bool>> inc(ctx.num_objects(), std::vector<bool>(ctx.num_attributes()));
  for (std::size_t o = 0; o < ctx.num_objects(); ++o) {
    for (std::size_t a = 0; a < ctx.num_attributes(); ++a) inc[o][a] = ctx.incident(o, a);
  }
  return inc;
}

using CoverSet = std::set<std::pair<std::size_t, std::size_t>>;

CoverSet cover_set(const ConceptLattice& l) { return CoverSet(l.covers().begin(), l.covers().end()); }

std::vector<oracle::Concept> as_oracle(const std::vector<FormalConcept>& cs) {
  std::vector<oracle::Concept> out;
  for (const auto& c : cs) out.push_back({to_indices(c.extent), to_indices(c.intent)});
  return out;
}

}  // namespace

TEST(Context, RejectsRaggedAndDuplicateInput) {
  EXPECT_THROW(Context({"a", "b"}, {"x"}, {{true}, {true, false}}), InputError);
  EXPECT_THROW(Context({"a", "a"}, {"x"}, {{true}, {false}}), InputError);
  EXPECT_THROW(Context({"a"}, {"x", "x"}, {{true, false}}), InputError);
  EXPECT_THROW(Context({"a"}, {"x"}, {{true}, {false}}), InputError);
}

TEST(Derivation, DuckDogEel) {
  const auto ctx = duck_dog_eel();
  const std::vector<std::size_t> duck_dog{0, 1};
  EXPECT_EQ(derive_intent(ctx, duck_dog), (std::vector<std::size_t>{2}));
  const std::vector<std::size_t> swims{0};
  EXPECT_EQ(derive_extent(ctx, swims), (std::vector<std::size_t>{0, 2}));
  EXPECT_EQ(derive_intent(ctx, std::vector<std::size_t>{}), (std::vector<std::size_t>{0, 1, 2}));
  EXPECT_EQ(derive_extent(ctx, std::vector<std::size_t>{}), (std::vector<std::size_t>{0, 1, 2}));
  const std::vector<std::size_t> flies{1};
  EXPECT_EQ(closure(ctx, flies), (std::vector<std::size_t>{0, 1, 2}));
  const std::vector<std::size_t> bad{7};
  EXPECT_THROW(derive_extent(ctx, bad), InputError);
}

TEST(Derivation, GaloisConnectionOnRandomContexts) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto ctx = gen_context(6, 5, 0.4, seed);
    const auto inc = incidence_of(ctx);
    for (std::size_t mask = 0; mask < 32; ++mask) {
      std::vector<std::size_t> attrs;
      for (std::size_t a = 0; a < 5; ++a) {
        if (mask >> a & 1U) attrs.push_back(a);
      }
      const auto ext = derive_extent(ctx, attrs);
      EXPECT_EQ(ext, oracle::common_objects(inc, attrs));
      EXPECT_EQ(derive_intent(ctx, ext), oracle::common_attributes(inc, 5, ext));
      // closure is extensive and idempotent
      const auto closed = closure(ctx, attrs);
      EXPECT_TRUE(oracle::subset(attrs, closed));
      EXPECT_EQ(closure(ctx, closed), closed);
    }
  }
}

TEST(Enumerate, DuckDogEelMatchesOracle) {
  const auto ctx = duck_dog_eel();
  const auto found = enumerate_concepts(ctx);
  const auto expected = oracle::all_concepts(incidence_of(ctx), 3);
  ASSERT_EQ(found.size(), 4U);
  const auto got = as_oracle(found);
  EXPECT_EQ(std::set<oracle::Concept>(got.begin(), got.end()), expected);
}

TEST(Enumerate, DiagonalContextHasAtomsOnly) {
  // Brute force over all 8 attribute subsets closes to 5 distinct concepts:
  // bottom, the three atoms, top.
  const auto ctx = diagonal(3);
  const auto expected = oracle::all_concepts(incidence_of(ctx), 3);
  EXPECT_EQ(expected.size(), 5U);
  EXPECT_EQ(enumerate_concepts(ctx).size(), 5U);
}

TEST(Enumerate, ContranominalScaleIsBooleanCube) {
  const auto ctx = contranominal(3);
  const auto concepts = enumerate_concepts(ctx);
  EXPECT_EQ(concepts.size(), 8U);
  const auto lattice = build_lattice(concepts);
  EXPECT_EQ(lattice.covers().size(), 12U);
  EXPECT_EQ(lattice.height(), 3U);
  const auto oc = oracle::covers(as_oracle(lattice.concepts()));
  EXPECT_EQ(cover_set(lattice), oc);
}

TEST(Enumerate, IntentsComeInLecticOrder) {
  const auto ctx = gen_context(7, 6, 0.5, 3);
  const auto concepts = enumerate_concepts(ctx);
  auto key = [](const AttributeSet& s) {
    // attribute 0 most significant
    std::vector<bool> bits;
    for (std::size_t i = 0; i < s.size(); ++i) bits.push_back(s.test(i));
    return bits;
  };
  for (std::size_t i = 1; i < concepts.size(); ++i) EXPECT_LT(key(concepts[i - 1].intent), key(concepts[i].intent));
}

TEST(Enumerate, EdgeContexts) {
  EXPECT_EQ(enumerate_concepts(Context({}, {}, {})).size(), 1U);
  EXPECT_EQ(enumerate_concepts(Context({"o"}, {}, {{}})).size(), 1U);
  EXPECT_EQ(enumerate_concepts(Context({}, {"a", "b"}, {})).size(), 1U);
  EXPECT_EQ(enumerate_concepts(Context({"o"}, {"a"}, {{false}})).size(), 2U);
}

TEST(Lattice, ChainContextGivesChain) {
  // upper triangular: object i has attributes i..n-1
  const std::size_t n = 5;
  std::vector<std::vector<bool>> inc(n, std::vector<bool>(n, false));
  std::vector<std::string> obj, att;
  for (std::size_t i = 0; i < n; ++i) {
    obj.push_back("o" + std::to_string(i));
    att.push_back("a" + std::to_string(i));
    for (std::size_t j = i; j < n; ++j) inc[i][j] = true;
  }
  const auto lattice = build_lattice(enumerate_concepts(Context(obj, att, inc)));
  EXPECT_EQ(lattice.covers().size() + 1, lattice.size());
  EXPECT_EQ(lattice.height() + 1, lattice.size());
  for (std::size_t a = 0; a < lattice.size(); ++a) {
    for (std::size_t b = 0; b < lattice.size(); ++b) EXPECT_TRUE(lattice.leq(a, b) || lattice.leq(b, a));
  }
}

TEST(Lattice, CoversMatchBruteForce) {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    const auto lattice = build_lattice(enumerate_concepts(gen_context(6, 6, 0.45, seed)));
    const auto oc = oracle::covers(as_oracle(lattice.concepts()));
    EXPECT_EQ(cover_set(lattice), oc)
        << "seed " << seed;
  }
}

TEST(Lattice, JoinAndMeetMatchOrderScan) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto lattice = build_lattice(enumerate_concepts(gen_context(6, 5, 0.5, seed)));
    const auto cs = as_oracle(lattice.concepts());
    for (std::size_t a = 0; a < cs.size(); ++a) {
      for (std::size_t b = 0; b < cs.size(); ++b) {
        EXPECT_EQ(join(lattice, a, b), oracle::least_upper_bound(cs, a, b).value());
        EXPECT_EQ(meet(lattice, a, b), oracle::greatest_lower_bound(cs, a, b).value());
      }
    }
  }
}

TEST(Lattice, DiagonalJoinOfAtomsIsTop) {
  const auto lattice = build_lattice(enumerate_concepts(diagonal(3)));
  std::vector<std::size_t> atoms;
  for (std::size_t i = 0; i < lattice.size(); ++i) {
    if (lattice.concept_at(i).extent.count() == 1) atoms.push_back(i);
  }
  ASSERT_EQ(atoms.size(), 3U);
  EXPECT_EQ(join(lattice, atoms[0], atoms[1]), lattice.top());
  EXPECT_EQ(meet(lattice, atoms[0], atoms[1]), lattice.bottom());
}

TEST(Lattice, BuildRejectsBadFamilies) {
  EXPECT_THROW(build_lattice({}), InputError);
  const auto concepts = enumerate_concepts(duck_dog_eel());
  auto dup = concepts;
  dup.push_back(dup.front());
  EXPECT_THROW(build_lattice(dup), InputError);
  // two incomparable maximal elements
  std::vector<FormalConcept> two{{BitSet(2, 1), BitSet(2, 2)}, {BitSet(2, 2), BitSet(2, 1)}};
  EXPECT_THROW(build_lattice(two), InputError);
}

TEST(Lattice, LawCheckerPassesAndCountsPairs) {
  const auto lattice = build_lattice(enumerate_concepts(gen_context(8, 6, 0.4, 11)));
  const auto report = check_lattice_laws(lattice);
  EXPECT_TRUE(report.passed);
  EXPECT_EQ(report.violation_count, 0U);
  EXPECT_EQ(report.pairs_checked, lattice.size() * lattice.size());
}

TEST(Lattice, LawCheckerFlagsMissingJoin) {
  // Unique top and bottom, but intents 011 and 110 intersect in 010, which no
  // member of the family has.
  std::vector<FormalConcept> family{
      {BitSet(3, 0b000), BitSet(3, 0b111)},
      {BitSet(3, 0b001), BitSet(3, 0b011)},
      {BitSet(3, 0b010), BitSet(3, 0b110)},
      {BitSet(3, 0b111), BitSet(3, 0b000)},
  };
  const auto lattice = build_lattice(family);
  const auto report = check_lattice_laws(lattice);
  EXPECT_FALSE(report.passed);
  EXPECT_GT(report.violation_count, 0U);
  EXPECT_FALSE(report.violations.empty());
}
