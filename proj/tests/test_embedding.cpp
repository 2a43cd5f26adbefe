#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <span>

#include "conceptkit/datasets.hpp"
#include "conceptkit/embedding.hpp"
#include "conceptkit/error.hpp"
#include "conceptkit/rng.hpp"
#include "conceptkit/similarity.hpp"

using namespace conceptkit;

namespace {

Eigen::VectorXd v2(double x, double y) { return Eigen::Vector2d(x, y); }

double cos_of(const EmbeddingSpace& s, const std::string& a, const std::string& b) {
  const auto x = s.vector(a), y = s.vector(b);
  return x.dot(y) / (x.norm() * y.norm());
}

// Mean cosine over distinct token pairs, split by whether the topics agree.
std::pair<double, double> topic_cosines(const EmbeddingSpace& s) {
  double intra = 0.0, inter = 0.0;
  std::size_t n_intra = 0, n_inter = 0;
  const auto& toks = s.vocab.tokens();
  for (std::size_t i = 0; i < toks.size(); ++i) {
    for (std::size_t j = i + 1; j < toks.size(); ++j) {
      const double c = cos_of(s, toks[i], toks[j]);
      if (toks[i].substr(0, 2) == toks[j].substr(0, 2)) {
        intra += c;
        ++n_intra;
      } else {
        inter += c;
        ++n_inter;
      }
    }
  }
  return {intra / static_cast<double>(n_intra), inter / static_cast<double>(n_inter)};
}

}  // namespace

TEST(Vocabulary, FirstOccurrenceOrderAndCounts) {
  const Corpus corpus{{"b", "a", "b"}, {"c", "a", "b"}};
  const auto v = Vocabulary::from_corpus(corpus);
  EXPECT_EQ(v.tokens(), (std::vector<std::string>{"b", "a", "c"}));
  EXPECT_EQ(v.counts(), (std::vector<std::uint64_t>{3, 2, 1}));
  EXPECT_EQ(v.require("c"), 2U);
  EXPECT_THROW(v.require("zzz"), InputError);
  EXPECT_THROW(Vocabulary({"a", "a"}, {1, 1}), InputError);
  EXPECT_THROW(Vocabulary({"a"}, {0}), InputError);
}

TEST(Sgns, Errors) {
  SgnsConfig cfg;
  EXPECT_THROW(train_sgns({}, cfg), InputError);
  EXPECT_THROW(train_sgns({{"a", "a"}}, cfg), InputError);
  cfg.window = 0;
  EXPECT_THROW(train_sgns({{"a", "b"}}, cfg), InputError);
}

TEST(Sgns, Deterministic) {
  const auto corpus = gen_topic_corpus(2, 8, 200, 1);
  SgnsConfig cfg;
  cfg.seed = 5;
  const auto a = train_sgns(corpus, cfg);
  const auto b = train_sgns(corpus, cfg);
  EXPECT_EQ(a.space.vectors, b.space.vectors);
  EXPECT_EQ(a.loss_history, b.loss_history);
  cfg.seed = 6;
  EXPECT_NE(train_sgns(corpus, cfg).space.vectors, a.space.vectors);
}

TEST(Sgns, TopicBlocksSeparate) {
  // tokens A1..A5 co-occur, B1..B5 co-occur
  Corpus corpus;
  Rng rng(2);
  for (int s = 0; s < 600; ++s) {
    const std::string topic = rng.bernoulli(0.5) ? "A" : "B";
    Sentence sent;
    for (int t = 0; t < 8; ++t) sent.push_back(topic + "_" + std::to_string(1 + rng.below(5)));
    corpus.push_back(std::move(sent));
  }
  const auto result = train_sgns(corpus, SgnsConfig{});
  const auto [intra, inter] = topic_cosines(result.space);
  EXPECT_GT(intra, inter);
}

TEST(Sgns, RepeatedPairLossDecreases) {
  Corpus corpus;
  for (int s = 0; s < 200; ++s) corpus.push_back({"x", "y", "x", "y", "x", "y"});
  SgnsConfig cfg;
  cfg.epochs = 8;
  cfg.negatives = 1;
  cfg.dim = 4;
  const auto result = train_sgns(corpus, cfg);
  EXPECT_LT(result.loss_history.back(), result.loss_history.front());
  EXPECT_TRUE(result.space.vectors.allFinite());
}

TEST(Analogy, ZeroOffsetRanksByCosineToC) {
  const auto result = train_sgns(gen_topic_corpus(2, 6, 300, 0), SgnsConfig{});
  const auto& s = result.space;
  const auto ranked = analogy(s, "t0w1", "t0w1", "t1w2", 20);
  const auto direct = nearest(s, s.vector("t1w2"), 20, {"t0w1", "t1w2"});
  ASSERT_EQ(ranked.size(), direct.size());
  for (std::size_t i = 0; i < ranked.size(); ++i) {
    EXPECT_EQ(ranked[i].token, direct[i].token);
    EXPECT_NEAR(ranked[i].score, direct[i].score, 1e-12);
  }
  for (std::size_t i = 1; i < ranked.size(); ++i) EXPECT_GE(ranked[i - 1].score, ranked[i].score);
  EXPECT_THROW(analogy(s, "nope", "t0w1", "t0w2"), InputError);
}

TEST(Analogy, PlantedGridRecoversFourthToken) {
  // Four concept tokens size_animal; each sentence mixes one concept token
  // with context words drawn from its size pool and its animal pool, so the
  // vectors are roughly additive in (size, animal).
  Corpus corpus;
  Rng rng(4);
  const std::vector<std::string> sizes{"small", "big"}, animals{"cat", "dog"};
  for (int s = 0; s < 3000; ++s) {
    const auto& size = sizes[rng.below(2)];
    const auto& animal = animals[rng.below(2)];
    Sentence sent;
    for (int t = 0; t < 3; ++t) sent.push_back(size + "ctx" + std::to_string(rng.below(4)));
    sent.push_back(size + "-" + animal);
    for (int t = 0; t < 3; ++t) sent.push_back(animal + "ctx" + std::to_string(rng.below(4)));
    rng.shuffle(std::span<std::string>(sent));
    corpus.push_back(std::move(sent));
  }
  SgnsConfig cfg;
  cfg.epochs = 5;
  cfg.window = 3;
  const auto result = train_sgns(corpus, cfg);
  const auto ranked = analogy(result.space, "small-cat", "small-dog", "big-cat", 3);
  const bool found = std::any_of(ranked.begin(), ranked.end(), [](const auto& r) { return r.token == "big-dog"; });
  EXPECT_TRUE(found);
}

TEST(VectorNot, Examples) {
  EXPECT_EQ(vector_not(v2(0, 3), v2(2, 0)), v2(0, 3));
  EXPECT_NEAR(vector_not(v2(1.5, -2), v2(1.5, -2)).norm(), 0.0, 1e-15);
  EXPECT_NEAR((vector_not(v2(1, 1), v2(1, 0)) - v2(0, 1)).norm(), 0.0, 1e-15);
  EXPECT_THROW(vector_not(v2(1, 1), v2(0, 0)), DomainError);
  EXPECT_THROW(vector_not(v2(1, 1), Eigen::Vector3d(1, 0, 0)), InputError);
}

TEST(VectorOr, Examples) {
  const auto single = vector_or({v2(0.6, 0.8)});
  EXPECT_EQ(single.rank(), 1U);
  EXPECT_NEAR((single.basis().col(0) - v2(0.6, 0.8)).norm(), 0.0, 1e-15);

  const auto plane = vector_or({v2(1, 0), v2(0, 1)});
  EXPECT_EQ(plane.rank(), 2U);
  EXPECT_NEAR((plane.basis().transpose() * plane.basis() - Eigen::Matrix2d::Identity()).norm(), 0.0, 1e-15);

  const auto span = vector_or({Eigen::Vector3d(1, 1, 0), Eigen::Vector3d(2, 2, 0), Eigen::Vector3d(0, 0, 1)});
  EXPECT_EQ(span.rank(), 2U);
  EXPECT_NEAR(span.residual(Eigen::Vector3d(3, 3, 5)), 0.0, 1e-12);
  EXPECT_NEAR(span.residual(Eigen::Vector3d(1, -1, 0)), std::sqrt(2.0), 1e-12);

  EXPECT_THROW(vector_or({}), DomainError);
  EXPECT_THROW(vector_or({v2(0, 0)}), DomainError);
  EXPECT_THROW(vector_or({v2(1, 0), Eigen::Vector3d(0, 1, 0)}), InputError);
}

TEST(VectorNot, SubspaceNegationIsOrthogonalToEveryTerm) {
  Rng rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    const Eigen::Index d = 3 + static_cast<Eigen::Index>(rng.below(10));
    std::vector<Eigen::VectorXd> terms;
    for (int t = 0; t < 2; ++t) {
      Eigen::VectorXd v(d);
      for (Eigen::Index i = 0; i < d; ++i) v[i] = rng.normal();
      terms.push_back(v);
    }
    Eigen::VectorXd a(d);
    for (Eigen::Index i = 0; i < d; ++i) a[i] = rng.normal();
    const auto r = vector_not(a, vector_or(terms));
    for (const auto& t : terms) EXPECT_NEAR(r.dot(t), 0.0, 1e-9);
  }
}
