#pragma once

// Commuting-diagram checks: group axioms, action laws, invariance,
// equivariance, the infinitesimal rotation test, and block disentanglement.
// Every checker reduces per-sample deviations with max, so verdicts do not
// depend on evaluation order.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "conceptkit/group.hpp"
#include "conceptkit/levelset.hpp"

namespace conceptkit {

struct GroupViolation {
  std::string law;  // "identity", "inverse", "associativity" or "closure"
  std::vector<GroupElement> witness;
};

struct GroupReport {
  bool passed = true;
  bool exhaustive = false;
  std::size_t triples_checked = 0;
  std::size_t violation_count = 0;
  std::vector<GroupViolation> violations;  // first few, in discovery order
};

struct GroupCheckOptions {
  std::size_t exhaustive_limit = 256;  // finite groups up to this order are checked exhaustively
  std::size_t sample_budget = 20000;   // triples drawn otherwise
  std::uint64_t seed = 0;
  double tol = 1e-9;                   // angle tolerance for sampled rotations
  std::size_t max_reported = 16;
};

/// Identity, inverses and associativity (plus closure for sampled groups).
GroupReport verify_group(const GroupSpec& group, const GroupCheckOptions& options = {});

struct CheckReport {
  bool passed = true;
  double tolerance = 0.0;
  double max_deviation = 0.0;
  double mean_deviation = 0.0;
  std::size_t samples = 0;
  GroupElement worst_element;
  Eigen::VectorXd worst_point;
};

/// act(e, x) = x and act(g h, x) = act(g, act(h, x)) over all listed (g, h, x).
CheckReport check_action_laws(const GroupAction& action, const std::vector<Eigen::VectorXd>& points,
                              const std::vector<GroupElement>& elements, double tol);

/// max over (g, x) of |phi(x) - phi(g x)| <= tol.
CheckReport check_invariance(const GroupAction& action, const RepresentationMap& phi,
                             const std::vector<Eigen::VectorXd>& points, const std::vector<GroupElement>& elements,
                             double tol);

/// max over (g, x) of |phi(g x) - psi(g)(phi(x))| <= tol.
CheckReport check_equivariance(const GroupAction& action, const RepresentationMap& phi, const EquivariantAction& psi,
                               const std::vector<Eigen::VectorXd>& points, const std::vector<GroupElement>& elements,
                               double tol);

/// psi(e) = id and psi(g h) = psi(g) psi(h) on the listed representation vectors.
CheckReport check_homomorphism(const GroupSpec& group, const EquivariantAction& psi,
                               const std::vector<Eigen::VectorXd>& vectors, const std::vector<GroupElement>& elements,
                               double tol);

struct LieReport {
  double max_residual = 0.0;
  Eigen::Vector2d worst_point = Eigen::Vector2d::Zero();
  std::vector<double> residuals;
};

/// |(-y d/dx + x d/dy) f| at each point, derivatives by central differences
/// with step h. Throws DomainError when an estimate is not finite.
LieReport lie_rotation_residual(const ScalarField& f, const std::vector<Eigen::Vector2d>& points, double h = 1e-5);

/// Z = Z_1 x ... x Z_n as half-open coordinate ranges.
struct ProductDecomposition {
  std::vector<std::pair<std::size_t, std::size_t>> blocks;

  /// n consecutive blocks of equal width.
  static ProductDecomposition equal_blocks(std::size_t n, std::size_t width);
  /// Throws InputError unless blocks are non-empty, disjoint and cover [0, dim).
  void validate(std::size_t dim) const;
};

struct FactorReport {
  double leakage = 0.0;     // max change outside the factor's own block
  double own_change = 0.0;  // max change inside it
  bool non_degenerate = false;
};

struct DisentangleReport {
  bool passed = true;
  double tolerance = 0.0;
  double leakage = 0.0;  // max over factors
  std::vector<FactorReport> factors;
};

/// For each factor i and each of its elements g_i (embedded as (e,..,g_i,..,e)),
/// blocks j != i of phi(g_i x) must match phi(x) within tol, and block i must
/// move by more than tol for some g_i. Factor elements are the group's listed
/// elements (sample angles for rotation factors). A non-product group counts
/// as one factor.
DisentangleReport check_disentangled(const GroupAction& action, const RepresentationMap& phi,
                                     const ProductDecomposition& decomposition,
                                     const std::vector<Eigen::VectorXd>& points, double tol);

}  // namespace conceptkit
