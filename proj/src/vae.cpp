#include "conceptkit/vae.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "conceptkit/error.hpp"
#include "conceptkit/rng.hpp"

namespace conceptkit {

namespace {

template <typename Model, typename F>
void for_each_parameter(Model& m, F&& f) {
  f(m.enc_w);
  f(m.enc_b);
  f(m.mu_w);
  f(m.mu_b);
  f(m.logvar_w);
  f(m.logvar_b);
  f(m.dec_w);
  f(m.dec_b);
  f(m.out_w);
  f(m.out_b);
}

Eigen::MatrixXd glorot(Rng& rng, std::size_t rows, std::size_t cols) {
  const double limit = std::sqrt(6.0 / static_cast<double>(rows + cols));
  Eigen::MatrixXd w(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index j = 0; j < w.cols(); ++j) {
    for (Eigen::Index i = 0; i < w.rows(); ++i) w(i, j) = rng.uniform(-limit, limit);
  }
  return w;
}

void require_input(const VaeModel& model, const Eigen::VectorXd& x) {
  if (static_cast<std::size_t>(x.size()) != model.shape.input_dim) {
    throw InputError("input has dimension " + std::to_string(x.size()) + ", model expects " +
                     std::to_string(model.shape.input_dim));
  }
  if (!x.allFinite()) throw InputError("input must be finite");
}

void require_batch(const VaeModel& model, const Eigen::MatrixXd& batch, const Eigen::MatrixXd& noise, double beta) {
  if (batch.rows() == 0) throw InputError("empty batch");
  if (static_cast<std::size_t>(batch.cols()) != model.shape.input_dim) throw InputError("batch dimension mismatch");
  if (noise.rows() != batch.rows() || static_cast<std::size_t>(noise.cols()) != model.shape.latent_dim) {
    throw InputError("noise must have one latent-sized row per batch row");
  }
  if (!batch.allFinite()) throw InputError("batch must be finite");
  if (!(beta >= 0.0)) throw InputError("beta must be non-negative");
}

// Intermediate activations kept for the backward pass.
struct Trace {
  Eigen::VectorXd h;
  Eigen::VectorXd mu;
  Eigen::VectorXd logvar;
  Eigen::VectorXd sigma;
  Eigen::VectorXd z;
  Eigen::VectorXd g;
  Eigen::VectorXd out;
};

Trace run(const VaeModel& m, const Eigen::VectorXd& x, const Eigen::VectorXd& eps) {
  Trace t;
  t.h = (m.enc_w * x + m.enc_b).array().tanh().matrix();
  t.mu = m.mu_w * t.h + m.mu_b;
  t.logvar = m.logvar_w * t.h + m.logvar_b;
  t.sigma = (0.5 * t.logvar.array()).exp().matrix();
  t.z = t.mu + t.sigma.cwiseProduct(eps);
  t.g = (m.dec_w * t.z + m.dec_b).array().tanh().matrix();
  t.out = m.out_w * t.g + m.out_b;
  return t;
}

}  // namespace

VaeModel VaeModel::init(const VaeShape& shape, std::uint64_t seed) {
  if (shape.latent_dim < 1 || shape.latent_dim >= shape.input_dim) {
    throw InputError("latent dimension must satisfy 1 <= latent < input");
  }
  if (shape.encoder_hidden < 1 || shape.decoder_hidden < 1) throw InputError("hidden widths must be positive");
  Rng rng = Rng(seed).split("vae-init");
  const auto d = shape.input_dim, k = shape.latent_dim, he = shape.encoder_hidden, hd = shape.decoder_hidden;
  VaeModel m;
  m.shape = shape;
  m.seed = seed;
  m.enc_w = glorot(rng, he, d);
  m.enc_b = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(he));
  m.mu_w = glorot(rng, k, he);
  m.mu_b = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(k));
  m.logvar_w = glorot(rng, k, he);
  m.logvar_b = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(k));
  m.dec_w = glorot(rng, hd, k);
  m.dec_b = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(hd));
  m.out_w = glorot(rng, d, hd);
  m.out_b = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(d));
  return m;
}

VaeModel VaeModel::zeros_like(const VaeModel& model) {
  VaeModel z = model;
  for_each_parameter(z, [](auto& p) { p.setZero(); });
  return z;
}

std::size_t VaeModel::parameter_count() const {
  std::size_t n = 0;
  for_each_parameter(*this, [&](const auto& p) { n += static_cast<std::size_t>(p.size()); });
  return n;
}

Eigen::VectorXd VaeModel::flatten() const {
  Eigen::VectorXd flat(static_cast<Eigen::Index>(parameter_count()));
  Eigen::Index at = 0;
  for_each_parameter(*this, [&](const auto& p) {
    flat.segment(at, p.size()) = Eigen::Map<const Eigen::VectorXd>(p.data(), p.size());
    at += p.size();
  });
  return flat;
}

void VaeModel::assign(const Eigen::VectorXd& flat) {
  if (static_cast<std::size_t>(flat.size()) != parameter_count()) throw InputError("parameter vector has wrong length");
  Eigen::Index at = 0;
  for_each_parameter(*this, [&](auto& p) {
    Eigen::Map<Eigen::VectorXd>(p.data(), p.size()) = flat.segment(at, p.size());
    at += p.size();
  });
}

bool VaeModel::all_finite() const {
  bool ok = true;
  for_each_parameter(*this, [&](const auto& p) { ok = ok && p.allFinite(); });
  return ok;
}

VaeForward vae_forward(const VaeModel& model, const Eigen::VectorXd& x, const Eigen::VectorXd& noise) {
  require_input(model, x);
  if (static_cast<std::size_t>(noise.size()) != model.shape.latent_dim) throw InputError("noise has wrong dimension");
  Trace t = run(model, x, noise);
  return {std::move(t.mu), std::move(t.logvar), std::move(t.z), std::move(t.out)};
}

Eigen::VectorXd encode_mean(const VaeModel& model, const Eigen::VectorXd& x) {
  require_input(model, x);
  const Eigen::VectorXd h = (model.enc_w * x + model.enc_b).array().tanh().matrix();
  return model.mu_w * h + model.mu_b;
}

Eigen::VectorXd decode(const VaeModel& model, const Eigen::VectorXd& z) {
  if (static_cast<std::size_t>(z.size()) != model.shape.latent_dim) throw InputError("latent vector has wrong dimension");
  const Eigen::VectorXd g = (model.dec_w * z + model.dec_b).array().tanh().matrix();
  return model.out_w * g + model.out_b;
}

double gaussian_kl(const Eigen::VectorXd& mu, const Eigen::VectorXd& logvar) {
  return 0.5 * (logvar.array().exp() + mu.array().square() - 1.0 - logvar.array()).sum();
}

VaeLoss vae_loss(const VaeModel& model, const Eigen::MatrixXd& batch, const Eigen::MatrixXd& noise, double beta) {
  require_batch(model, batch, noise, beta);
  const auto B = static_cast<double>(batch.rows());
  const auto D = static_cast<double>(batch.cols());
  VaeLoss loss;
  for (Eigen::Index i = 0; i < batch.rows(); ++i) {
    const Eigen::VectorXd x = batch.row(i).transpose();
    const Trace t = run(model, x, noise.row(i).transpose());
    loss.recon += (t.out - x).squaredNorm();
    loss.kl += gaussian_kl(t.mu, t.logvar);
  }
  loss.recon /= B * D;
  loss.kl /= B;
  loss.total = loss.recon + beta * loss.kl;
  return loss;
}

VaeGradient vae_gradient(const VaeModel& model, const Eigen::MatrixXd& batch, const Eigen::MatrixXd& noise,
                         double beta) {
  require_batch(model, batch, noise, beta);
  const auto B = static_cast<double>(batch.rows());
  const auto D = static_cast<double>(batch.cols());
  VaeGradient out{VaeModel::zeros_like(model), {}};
  VaeModel& g = out.grad;

  for (Eigen::Index i = 0; i < batch.rows(); ++i) {
    const Eigen::VectorXd x = batch.row(i).transpose();
    const Eigen::VectorXd eps = noise.row(i).transpose();
    const Trace t = run(model, x, eps);
    out.loss.recon += (t.out - x).squaredNorm();
    out.loss.kl += gaussian_kl(t.mu, t.logvar);

    // decoder
    const Eigen::VectorXd d_out = (2.0 / (B * D)) * (t.out - x);
    g.out_w += d_out * t.g.transpose();
    g.out_b += d_out;
    const Eigen::VectorXd d_dec = (model.out_w.transpose() * d_out).cwiseProduct((1.0 - t.g.array().square()).matrix());
    g.dec_w += d_dec * t.z.transpose();
    g.dec_b += d_dec;
    const Eigen::VectorXd d_z = model.dec_w.transpose() * d_dec;

    // reparameterization plus the KL term
    const double kl_scale = beta / B;
    const Eigen::VectorXd d_mu = d_z + kl_scale * t.mu;
    const Eigen::VectorXd d_logvar =
        (0.5 * d_z.array() * eps.array() * t.sigma.array() + kl_scale * 0.5 * (t.logvar.array().exp() - 1.0)).matrix();

    // encoder
    g.mu_w += d_mu * t.h.transpose();
    g.mu_b += d_mu;
    g.logvar_w += d_logvar * t.h.transpose();
    g.logvar_b += d_logvar;
    const Eigen::VectorXd d_h = (model.mu_w.transpose() * d_mu + model.logvar_w.transpose() * d_logvar)
                                    .cwiseProduct((1.0 - t.h.array().square()).matrix());
    g.enc_w += d_h * x.transpose();
    g.enc_b += d_h;
  }
  out.loss.recon /= B * D;
  out.loss.kl /= B;
  out.loss.total = out.loss.recon + beta * out.loss.kl;
  return out;
}

VaeTrainResult vae_train(VaeModel model, const Eigen::MatrixXd& data, const VaeTrainConfig& config) {
  if (data.rows() == 0) throw InputError("empty dataset");
  if (static_cast<std::size_t>(data.cols()) != model.shape.input_dim) throw InputError("dataset dimension mismatch");
  if (!data.allFinite()) throw InputError("dataset must be finite");
  if (!(config.lr > 0.0)) throw InputError("learning rate must be positive");
  if (!(config.beta >= 0.0)) throw InputError("beta must be non-negative");
  if (config.batch_size < 1) throw InputError("batch size must be positive");

  Rng rng = Rng(config.seed).split("vae-train");
  const auto n = static_cast<std::size_t>(data.rows());
  const auto k = static_cast<Eigen::Index>(model.shape.latent_dim);
  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), 0);

  VaeTrainResult result;
  double last_finite = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    rng.shuffle(std::span<Eigen::Index>(order));
    double epoch_loss = 0.0;
    std::size_t batches = 0;
    for (std::size_t start = 0; start < n; start += config.batch_size) {
      const std::size_t stop = std::min(n, start + config.batch_size);
      const auto rows = static_cast<Eigen::Index>(stop - start);
      Eigen::MatrixXd batch(rows, data.cols());
      Eigen::MatrixXd noise(rows, k);
      for (Eigen::Index r = 0; r < rows; ++r) {
        batch.row(r) = data.row(order[start + static_cast<std::size_t>(r)]);
        for (Eigen::Index j = 0; j < k; ++j) noise(r, j) = rng.normal();
      }
      const VaeGradient step = vae_gradient(model, batch, noise, config.beta);
      if (!std::isfinite(step.loss.total)) {
        throw DivergenceError("VAE loss became non-finite at epoch " + std::to_string(epoch), last_finite,
                              static_cast<int>(epoch));
      }
      last_finite = step.loss.total;
      model.assign(model.flatten() - config.lr * step.grad.flatten());
      epoch_loss += step.loss.total;
      ++batches;
    }
    epoch_loss /= static_cast<double>(batches);
    if (!model.all_finite()) {
      throw DivergenceError("VAE parameters became non-finite at epoch " + std::to_string(epoch), last_finite,
                            static_cast<int>(epoch));
    }
    result.loss_history.push_back(epoch_loss);
  }
  result.model = std::move(model);
  return result;
}

Eigen::MatrixXd latent_interpolate(const VaeModel& model, const Eigen::VectorXd& a, const Eigen::VectorXd& b,
                                   std::size_t steps) {
  if (steps < 2) throw InputError("interpolation needs at least two steps");
  const Eigen::VectorXd za = encode_mean(model, a);
  const Eigen::VectorXd zb = encode_mean(model, b);
  Eigen::MatrixXd path(static_cast<Eigen::Index>(steps), static_cast<Eigen::Index>(model.shape.input_dim));
  for (std::size_t s = 0; s < steps; ++s) {
    const double t = static_cast<double>(s) / static_cast<double>(steps - 1);
    const Eigen::VectorXd z = (s + 1 == steps) ? zb : Eigen::VectorXd((1.0 - t) * za + t * zb);
    path.row(static_cast<Eigen::Index>(s)) = decode(model, z).transpose();
  }
  return path;
}

}  // namespace conceptkit
