#pragma once

// Groups, their actions on R^n, and maps into representation spaces.
//
// A group element is a short coordinate vector: one integer-valued coordinate
// for cyclic and table groups, one angle for sampled rotations, and the
// concatenation of factor coordinates for products.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace conceptkit {

struct VaeModel;

using GroupElement = std::vector<double>;

class GroupSpec {
 public:
  enum class Kind { cyclic, table, rotation, product };

  static GroupSpec cyclic(std::size_t n);
  /// table[a][b] is the index of a * b. Throws InputError when the table is
  /// empty, not square, or refers to a missing element. Group laws are not
  /// checked here; that is verify_group's job.
  static GroupSpec from_table(std::vector<std::vector<std::size_t>> table);
  /// SO(2), represented by a sample of angles used wherever elements are enumerated.
  static GroupSpec rotation(std::vector<double> sample_angles);
  static GroupSpec product(std::vector<GroupSpec> factors);

  Kind kind() const noexcept { return kind_; }
  bool is_finite() const noexcept;
  /// Number of elements. Throws DomainError for SO(2).
  std::size_t order() const;
  /// Number of coordinates in an element.
  std::size_t arity() const noexcept;

  /// Throws DomainError for a table without an identity.
  GroupElement identity() const;
  GroupElement compose(const GroupElement& a, const GroupElement& b) const;
  /// Throws DomainError for a table element without an inverse.
  GroupElement inverse(const GroupElement& a) const;
  /// Equality; angles compare modulo 2 pi within tol.
  bool same(const GroupElement& a, const GroupElement& b, double tol = 1e-9) const;
  bool contains(const GroupElement& a) const;

  /// Finite groups: every element (products in mixed-radix order, first factor
  /// most significant). SO(2): the sample angles. Products of samples expand
  /// to the cartesian product.
  std::vector<GroupElement> elements() const;

  const std::vector<GroupSpec>& factors() const noexcept { return factors_; }
  std::size_t cyclic_order() const noexcept { return n_; }
  const std::vector<std::vector<std::size_t>>& table() const noexcept { return table_; }
  const std::vector<double>& sample_angles() const noexcept { return angles_; }

  /// (e, ..., g_i, ..., e) for a product group.
  GroupElement embed_factor(std::size_t factor, const GroupElement& g) const;
  /// Coordinates of factor i inside a product element.
  GroupElement factor_part(std::size_t factor, const GroupElement& g) const;

  std::string describe() const;

 private:
  Kind kind_ = Kind::cyclic;
  std::size_t n_ = 1;
  std::vector<std::vector<std::size_t>> table_;
  std::optional<std::size_t> table_identity_;
  std::vector<double> angles_;
  std::vector<GroupSpec> factors_;
};

/// Rotation angle of an element of a cyclic or rotation group (2 pi k / n for cyclic).
double element_angle(const GroupSpec& group, const GroupElement& g);

/// Wraps an angle into [0, 2 pi).
double wrap_angle(double theta);

struct GroupAction {
  std::string name;
  GroupSpec group;
  std::size_t dim = 0;
  std::function<Eigen::VectorXd(const GroupElement&, const Eigen::VectorXd&)> act;

  /// Throws InputError on a dimension mismatch.
  Eigen::VectorXd operator()(const GroupElement& g, const Eigen::VectorXd& x) const;
};

/// Cyclic or rotation group rotating the plane about the origin.
GroupAction rotation_action(GroupSpec group);

/// Product of cyclic/rotation factors; factor i rotates coordinates (2i, 2i+1).
GroupAction block_rotation_action(GroupSpec product);

struct RepresentationMap {
  std::string name;
  std::size_t input_dim = 0;
  std::size_t output_dim = 0;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> map;
  /// Positive period for angle-valued output coordinates; 0 for ordinary ones.
  /// Empty means no periodic coordinate.
  std::vector<double> periods;

  Eigen::VectorXd operator()(const Eigen::VectorXd& x) const;
  /// Distance between two outputs, wrapping periodic coordinates.
  double deviation(const Eigen::VectorXd& a, const Eigen::VectorXd& b) const;
};

RepresentationMap identity_map(std::size_t dim);
/// x -> |x|
RepresentationMap norm_map(std::size_t dim);
/// x -> (|x|, 0): a radius placed in the plane.
RepresentationMap planar_norm_map(std::size_t dim);
/// x -> x^2 + y^2
RepresentationMap squared_norm_map();
/// (x, y) -> atan2(y, x), periodic in 2 pi.
RepresentationMap polar_angle_map();
/// x -> R x where R rotates the (i, j) coordinate plane by `angle`.
RepresentationMap plane_mixing_map(std::size_t dim, std::size_t i, std::size_t j, double angle);
/// x -> M x where M rotates every pair (i, i + dim/2) by `angle`; dim must be even.
RepresentationMap block_mixing_map(std::size_t dim, double angle);
/// x -> latent mean of a trained VAE.
RepresentationMap vae_encoder_map(const VaeModel& model);

/// Looks up identity, norm, planar-norm, squared-norm, polar-angle by name.
RepresentationMap builtin_representation(const std::string& name, std::size_t dim);

/// psi: how a group element moves points of the representation space.
struct EquivariantAction {
  std::string name;
  std::size_t dim = 0;
  std::function<Eigen::VectorXd(const GroupElement&, const Eigen::VectorXd&)> apply;

  Eigen::VectorXd operator()(const GroupElement& g, const Eigen::VectorXd& v) const;
};

/// psi(g) = identity for every g.
EquivariantAction trivial_psi(std::size_t dim);
/// psi(g) = the data-space action itself.
EquivariantAction psi_from_action(const GroupAction& action);
/// psi(g)(v) = v + angle(g) wrapped into (-pi, pi].
EquivariantAction angle_shift_psi(const GroupSpec& group);

/// Looks up identity, same-as-action, angle-shift by name.
EquivariantAction builtin_psi(const std::string& name, const GroupAction& action, std::size_t rep_dim);

}  // namespace conceptkit
