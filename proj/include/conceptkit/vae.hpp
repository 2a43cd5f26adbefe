#pragma once

// A small variational autoencoder with hand-written backpropagation.
//
// Encoder: x -> tanh(W1 x + b1) = h -> (mu = Wm h + bm, logvar = Wv h + bv)
// Sample:  z = mu + exp(logvar / 2) * eps
// Decoder: z -> tanh(W3 z + b3) = g -> x_hat = W4 g + b4
//
// Batches are matrices with one sample per row.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace conceptkit {

struct VaeShape {
  std::size_t input_dim = 2;
  std::size_t latent_dim = 1;
  std::size_t encoder_hidden = 16;
  std::size_t decoder_hidden = 16;

  friend bool operator==(const VaeShape&, const VaeShape&) = default;
};

struct VaeModel {
  VaeShape shape;
  std::uint64_t seed = 0;

  Eigen::MatrixXd enc_w;
  Eigen::VectorXd enc_b;
  Eigen::MatrixXd mu_w;
  Eigen::VectorXd mu_b;
  Eigen::MatrixXd logvar_w;
  Eigen::VectorXd logvar_b;
  Eigen::MatrixXd dec_w;
  Eigen::VectorXd dec_b;
  Eigen::MatrixXd out_w;
  Eigen::VectorXd out_b;

  /// Glorot-uniform weights, zero biases. Throws InputError unless
  /// 1 <= latent_dim < input_dim and both hidden widths are positive.
  static VaeModel init(const VaeShape& shape, std::uint64_t seed);
  /// Same shape, every parameter zero.
  static VaeModel zeros_like(const VaeModel& model);

  std::size_t parameter_count() const;
  /// Parameters in declaration order, matrices column-major.
  Eigen::VectorXd flatten() const;
  void assign(const Eigen::VectorXd& flat);
  bool all_finite() const;

  friend bool operator==(const VaeModel& a, const VaeModel& b) {
    return a.shape == b.shape && a.seed == b.seed && a.flatten() == b.flatten();
  }
};

struct VaeForward {
  Eigen::VectorXd mu;
  Eigen::VectorXd logvar;
  Eigen::VectorXd z;
  Eigen::VectorXd reconstruction;
};

/// `noise` is the standard-normal draw eps (length latent_dim).
VaeForward vae_forward(const VaeModel& model, const Eigen::VectorXd& x, const Eigen::VectorXd& noise);

Eigen::VectorXd encode_mean(const VaeModel& model, const Eigen::VectorXd& x);
Eigen::VectorXd decode(const VaeModel& model, const Eigen::VectorXd& z);

struct VaeLoss {
  double total = 0.0;
  double recon = 0.0;  // mean over batch and coordinates of squared error
  double kl = 0.0;     // KL(q(z|x) || N(0, I)) averaged over the batch
};

/// noise has one row per batch row. total = recon + beta * kl.
VaeLoss vae_loss(const VaeModel& model, const Eigen::MatrixXd& batch, const Eigen::MatrixXd& noise, double beta);

/// Closed-form KL of N(mu, diag(exp(logvar))) from N(0, I).
double gaussian_kl(const Eigen::VectorXd& mu, const Eigen::VectorXd& logvar);

struct VaeGradient {
  VaeModel grad;  // d total / d parameter, same layout as the model
  VaeLoss loss;
};

VaeGradient vae_gradient(const VaeModel& model, const Eigen::MatrixXd& batch, const Eigen::MatrixXd& noise,
                         double beta);

struct VaeTrainConfig {
  std::size_t epochs = 200;
  double lr = 0.05;
  double beta = 1.0;
  std::size_t batch_size = 32;
  std::uint64_t seed = 0;
};

struct VaeTrainResult {
  VaeModel model;
  /// Mean minibatch total loss per epoch.
  std::vector<double> loss_history;
};

/// Minibatch SGD with one fresh noise draw per sample per step. Throws
/// DivergenceError when a loss turns non-finite.
VaeTrainResult vae_train(VaeModel model, const Eigen::MatrixXd& data, const VaeTrainConfig& config);

/// Decodes `steps` evenly spaced points on the segment between the latent
/// means of a and b (one row per step).
Eigen::MatrixXd latent_interpolate(const VaeModel& model, const Eigen::VectorXd& a, const Eigen::VectorXd& b,
                                   std::size_t steps);

}  // namespace conceptkit
