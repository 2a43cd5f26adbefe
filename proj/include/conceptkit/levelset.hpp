#pragma once

// Concepts as level sets f^-1(r) of a real-valued function.

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace conceptkit {

using ScalarField = std::function<double(const Eigen::VectorXd&)>;

struct LevelSetConcept {
  std::string name;
  ScalarField f;
  std::size_t dim = 0;  // 0 accepts any dimension
  double level = 0.0;
  double tolerance = 1e-9;

  /// Throws InputError unless tolerance > 0, level is finite and f is set.
  void validate() const;
};

struct Membership {
  bool member = false;
  double residual = 0.0;  // f(x) - level
};

/// member iff |f(x) - level| <= tolerance.
Membership level_membership(const LevelSetConcept& concept_, const Eigen::VectorXd& x);

/// Built-in fields, all smooth:
///   squared-norm   sum x_i^2            (any dim)
///   circle         x^2 + y^2            (2)
///   unit-circle    x^2 + y^2 - 1        (2)
///   coordinate-x   x                    (any dim >= 1)
///   linear-sum     sum x_i              (any dim)
///   constant       0                    (any dim)
///   saddle         x^2 - y^2            (2)
struct BuiltinField {
  ScalarField f;
  std::size_t dim;
};
BuiltinField builtin_field(const std::string& name);
std::vector<std::string> builtin_field_names();

LevelSetConcept make_level_set(const std::string& field, double level, double tolerance);

}  // namespace conceptkit
