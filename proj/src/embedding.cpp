#include "conceptkit/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "conceptkit/error.hpp"
#include "conceptkit/rng.hpp"

namespace conceptkit {

namespace {

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// log(1 + e^x) without overflow
double softplus(double x) { return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x)); }

std::vector<ScoredToken> rank_by_cosine(const EmbeddingSpace& space, const Eigen::VectorXd& query,
                                        std::size_t top_k, const std::vector<std::size_t>& excluded) {
  const double qn = query.norm();
  std::vector<std::pair<double, std::size_t>> scored;
  for (std::size_t i = 0; i < space.vocab.size(); ++i) {
    if (std::find(excluded.begin(), excluded.end(), i) != excluded.end()) continue;
    const auto row = space.vectors.row(static_cast<Eigen::Index>(i));
    const double rn = row.norm();
    const double s = (qn == 0.0 || rn == 0.0) ? 0.0 : row.dot(query) / (qn * rn);
    scored.emplace_back(s, i);
  }
  const std::size_t k = std::min(top_k, scored.size());
  std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(k), scored.end(),
                    [](const auto& x, const auto& y) { return x.first > y.first || (x.first == y.first && x.second < y.second); });
  std::vector<ScoredToken> out;
  for (std::size_t i = 0; i < k; ++i) out.push_back({space.vocab.token(scored[i].second), scored[i].first});
  return out;
}

}  // namespace

Vocabulary::Vocabulary(std::vector<std::string> tokens, std::vector<std::uint64_t> counts)
    : tokens_(std::move(tokens)), counts_(std::move(counts)) {
  if (tokens_.size() != counts_.size()) throw InputError("token and count lists differ in length");
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    if (counts_[i] < 1) throw InputError("token '" + tokens_[i] + "' has zero count");
    if (!index_.emplace(tokens_[i], i).second) throw InputError("duplicate token '" + tokens_[i] + "'");
  }
}

Vocabulary Vocabulary::from_corpus(const Corpus& corpus) {
  std::vector<std::string> tokens;
  std::vector<std::uint64_t> counts;
  std::unordered_map<std::string, std::size_t> seen;
  for (const auto& sentence : corpus) {
    for (const auto& tok : sentence) {
      auto [it, fresh] = seen.emplace(tok, tokens.size());
      if (fresh) {
        tokens.push_back(tok);
        counts.push_back(0);
      }
      ++counts[it->second];
    }
  }
  return Vocabulary(std::move(tokens), std::move(counts));
}

std::optional<std::size_t> Vocabulary::index(const std::string& token) const {
  auto it = index_.find(token);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Vocabulary::require(const std::string& token) const {
  auto i = index(token);
  if (!i) throw InputError("unknown token '" + token + "'");
  return *i;
}

Eigen::VectorXd EmbeddingSpace::vector(const std::string& token) const {
  return vectors.row(static_cast<Eigen::Index>(vocab.require(token))).transpose();
}

SgnsResult train_sgns(const Corpus& corpus, const SgnsConfig& config) {
  if (config.window < 1) throw InputError("window must be at least 1");
  if (config.dim < 2) throw InputError("embedding dimension must be at least 2");
  if (!(config.lr > 0.0)) throw InputError("learning rate must be positive");

  Vocabulary vocab = Vocabulary::from_corpus(corpus);
  if (vocab.size() < 2) throw InputError("corpus needs at least two distinct tokens");

  std::vector<std::vector<std::size_t>> encoded;
  std::size_t total_tokens = 0;
  for (const auto& s : corpus) {
    auto& e = encoded.emplace_back();
    for (const auto& tok : s) e.push_back(*vocab.index(tok));
    total_tokens += e.size();
  }

  // unigram^0.75 cumulative distribution for negative draws
  std::vector<double> cdf(vocab.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < vocab.size(); ++i) {
    acc += std::pow(static_cast<double>(vocab.counts()[i]), 0.75);
    cdf[i] = acc;
  }
  for (auto& c : cdf) c /= acc;

  const auto V = static_cast<Eigen::Index>(vocab.size());
  const auto D = static_cast<Eigen::Index>(config.dim);
  Rng base(config.seed);
  Rng init = base.split("sgns-init");
  Rng rng = base.split("sgns-train");

  Eigen::MatrixXd input(V, D);
  for (Eigen::Index i = 0; i < V; ++i) {
    for (Eigen::Index j = 0; j < D; ++j) input(i, j) = (init.uniform() - 0.5) / static_cast<double>(D);
  }
  Eigen::MatrixXd output = Eigen::MatrixXd::Zero(V, D);

  auto draw_negative = [&]() {
    const double u = rng.uniform();
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    return std::min<std::size_t>(static_cast<std::size_t>(it - cdf.begin()), vocab.size() - 1);
  };

  SgnsResult result;
  const double total_work = static_cast<double>(config.epochs) * static_cast<double>(std::max<std::size_t>(total_tokens, 1));
  std::size_t processed = 0;
  Eigen::VectorXd grad_in(D);

  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    double loss = 0.0;
    std::size_t pairs = 0;
    for (const auto& sentence : encoded) {
      const std::size_t len = sentence.size();
      for (std::size_t pos = 0; pos < len; ++pos, ++processed) {
        const double lr = config.lr * std::max(1e-4, 1.0 - static_cast<double>(processed) / total_work);
        const std::size_t span = 1 + static_cast<std::size_t>(rng.below(config.window));
        const std::size_t lo = pos >= span ? pos - span : 0;
        const std::size_t hi = std::min(len - 1, pos + span);
        const auto center = static_cast<Eigen::Index>(sentence[pos]);
        for (std::size_t c = lo; c <= hi; ++c) {
          if (c == pos) continue;
          const auto context = static_cast<Eigen::Index>(sentence[c]);
          grad_in.setZero();
          for (std::size_t n = 0; n <= config.negatives; ++n) {
            Eigen::Index target = context;
            double label = 1.0;
            if (n > 0) {
              target = static_cast<Eigen::Index>(draw_negative());
              if (target == context) continue;
              label = 0.0;
            }
            const double score = input.row(center).dot(output.row(target));
            loss += label > 0.0 ? softplus(-score) : softplus(score);
            const double g = (label - sigmoid(score)) * lr;
            grad_in += g * output.row(target).transpose();
            output.row(target) += g * input.row(center);
          }
          input.row(center) += grad_in.transpose();
          ++pairs;
        }
      }
    }
    result.loss_history.push_back(pairs > 0 ? loss / static_cast<double>(pairs) : 0.0);
  }

  result.space = {std::move(vocab), std::move(input)};
  return result;
}

std::vector<ScoredToken> nearest(const EmbeddingSpace& space, const Eigen::VectorXd& query, std::size_t top_k,
                                 const std::vector<std::string>& exclude) {
  if (static_cast<std::size_t>(query.size()) != space.dim()) throw InputError("query dimension mismatch");
  std::vector<std::size_t> excluded;
  for (const auto& t : exclude) excluded.push_back(space.vocab.require(t));
  return rank_by_cosine(space, query, top_k, excluded);
}

std::vector<ScoredToken> analogy(const EmbeddingSpace& space, const std::string& a, const std::string& b,
                                 const std::string& c, std::size_t top_k) {
  const std::size_t ia = space.vocab.require(a);
  const std::size_t ib = space.vocab.require(b);
  const std::size_t ic = space.vocab.require(c);
  const Eigen::VectorXd query = space.vector(b) - space.vector(a) + space.vector(c);
  return rank_by_cosine(space, query, top_k, {ia, ib, ic});
}

Eigen::VectorXd vector_not(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  if (a.size() != b.size()) throw InputError("vector_not dimension mismatch");
  const double bb = b.squaredNorm();
  if (bb == 0.0) throw DomainError("cannot negate against the zero vector");
  return a - (a.dot(b) / bb) * b;
}

Eigen::VectorXd Subspace::project(const Eigen::VectorXd& x) const {
  if (x.size() != basis_.rows()) throw InputError("subspace dimension mismatch");
  return basis_ * (basis_.transpose() * x);
}

double Subspace::residual(const Eigen::VectorXd& x) const { return (x - project(x)).norm(); }

Subspace vector_or(const std::vector<Eigen::VectorXd>& vectors) {
  if (vectors.empty()) throw DomainError("vector_or needs at least one vector");
  const Eigen::Index n = vectors.front().size();
  std::vector<Eigen::VectorXd> basis;
  for (const auto& v : vectors) {
    if (v.size() != n) throw InputError("vector_or dimension mismatch");
    Eigen::VectorXd r = v;
    // two passes of modified Gram-Schmidt keep the basis orthogonal to rounding
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& q : basis) r -= q.dot(r) * q;
    }
    const double rn = r.norm();
    if (rn > 1e-10 * std::max(1.0, v.norm())) basis.push_back(r / rn);
  }
  if (basis.empty()) throw DomainError("vector_or of zero vectors spans nothing");
  Eigen::MatrixXd m(n, static_cast<Eigen::Index>(basis.size()));
  for (std::size_t j = 0; j < basis.size(); ++j) m.col(static_cast<Eigen::Index>(j)) = basis[j];
  return Subspace(std::move(m));
}

Eigen::VectorXd vector_not(const Eigen::VectorXd& a, const Subspace& excluded) {
  return a - excluded.project(a);
}

}  // namespace conceptkit
