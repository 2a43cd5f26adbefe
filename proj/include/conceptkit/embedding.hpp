#pragma once

// Skip-gram word vectors with negative sampling, analogy arithmetic, and
// projection-based vector logic (NOT as orthogonal complement, OR as span).

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace conceptkit {

using Sentence = std::vector<std::string>;
using Corpus = std::vector<Sentence>;

/// Tokens in order of first occurrence with their corpus frequencies.
class Vocabulary {
 public:
  Vocabulary() = default;
  static Vocabulary from_corpus(const Corpus& corpus);
  /// Throws InputError on duplicates or zero counts.
  Vocabulary(std::vector<std::string> tokens, std::vector<std::uint64_t> counts);

  std::size_t size() const noexcept { return tokens_.size(); }
  const std::vector<std::string>& tokens() const noexcept { return tokens_; }
  const std::vector<std::uint64_t>& counts() const noexcept { return counts_; }
  const std::string& token(std::size_t i) const { return tokens_.at(i); }
  std::optional<std::size_t> index(const std::string& token) const;
  /// Throws InputError for an unknown token.
  std::size_t require(const std::string& token) const;

 private:
  std::vector<std::string> tokens_;
  std::vector<std::uint64_t> counts_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// One row per vocabulary token.
struct EmbeddingSpace {
  Vocabulary vocab;
  Eigen::MatrixXd vectors;

  std::size_t dim() const noexcept { return static_cast<std::size_t>(vectors.cols()); }
  Eigen::VectorXd vector(const std::string& token) const;
};

struct SgnsConfig {
  std::size_t dim = 16;
  std::size_t window = 5;
  std::size_t negatives = 5;
  std::size_t epochs = 5;
  double lr = 0.025;
  std::uint64_t seed = 0;
};

struct SgnsResult {
  EmbeddingSpace space;
  /// Mean negative-sampling loss per (center, context) pair, one entry per epoch.
  std::vector<double> loss_history;
};

/// Skip-gram with negative sampling trained by plain SGD. Windows never cross
/// sentence boundaries; the effective window is drawn uniformly from
/// [1, window] per center word, negatives come from the unigram^0.75
/// distribution, and the learning rate decays linearly to lr * 1e-4.
SgnsResult train_sgns(const Corpus& corpus, const SgnsConfig& config);

struct ScoredToken {
  std::string token;
  double score;
};

/// Tokens ranked by cosine similarity to v(b) - v(a) + v(c), excluding the three
/// query tokens. Equal scores keep vocabulary order.
std::vector<ScoredToken> analogy(const EmbeddingSpace& space, const std::string& a, const std::string& b,
                                 const std::string& c, std::size_t top_k = 10);

/// Tokens ranked by cosine similarity to an arbitrary query vector.
std::vector<ScoredToken> nearest(const EmbeddingSpace& space, const Eigen::VectorXd& query, std::size_t top_k,
                                 const std::vector<std::string>& exclude = {});

/// a NOT b: the component of a orthogonal to b. Throws DomainError when b = 0.
Eigen::VectorXd vector_not(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

/// Orthonormal basis (as columns) of the span of some vectors.
class Subspace {
 public:
  explicit Subspace(Eigen::MatrixXd basis) : basis_(std::move(basis)) {}

  const Eigen::MatrixXd& basis() const noexcept { return basis_; }
  std::size_t rank() const noexcept { return static_cast<std::size_t>(basis_.cols()); }
  std::size_t ambient_dim() const noexcept { return static_cast<std::size_t>(basis_.rows()); }

  Eigen::VectorXd project(const Eigen::VectorXd& x) const;
  /// Norm of x minus its projection.
  double residual(const Eigen::VectorXd& x) const;
  bool contains(const Eigen::VectorXd& x, double tol = 1e-9) const { return residual(x) <= tol; }

 private:
  Eigen::MatrixXd basis_;
};

/// a OR b OR ...: modified Gram-Schmidt. A vector whose remaining component
/// has norm at most 1e-10 * max(1, |v|) adds no direction. Throws DomainError
/// if every input is zero.
Subspace vector_or(const std::vector<Eigen::VectorXd>& vectors);

/// a NOT (b1 OR b2 ...): projection onto the orthogonal complement of a span.
Eigen::VectorXd vector_not(const Eigen::VectorXd& a, const Subspace& excluded);

}  // namespace conceptkit
