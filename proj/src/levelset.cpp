#include "conceptkit/levelset.hpp"

#include <cmath>

#include "conceptkit/error.hpp"

namespace conceptkit {

void LevelSetConcept::validate() const {
  if (!f) throw InputError("level-set concept has no function");
  if (!(tolerance > 0.0) || !std::isfinite(tolerance)) throw InputError("tolerance must be positive and finite");
  if (!std::isfinite(level)) throw InputError("level must be finite");
}

Membership level_membership(const LevelSetConcept& concept_, const Eigen::VectorXd& x) {
  concept_.validate();
  if (concept_.dim != 0 && static_cast<std::size_t>(x.size()) != concept_.dim) {
    throw InputError("point has dimension " + std::to_string(x.size()) + ", concept expects " +
                     std::to_string(concept_.dim));
  }
  if (!x.allFinite()) throw InputError("point must be finite");
  const double value = concept_.f(x);
  if (!std::isfinite(value)) throw DomainError("field is not finite at the given point");
  const double residual = value - concept_.level;
  return {std::abs(residual) <= concept_.tolerance, residual};
}

BuiltinField builtin_field(const std::string& name) {
  using V = Eigen::VectorXd;
  if (name == "squared-norm") return {[](const V& x) { return x.squaredNorm(); }, 0};
  if (name == "circle") return {[](const V& x) { return x[0] * x[0] + x[1] * x[1]; }, 2};
  if (name == "unit-circle") return {[](const V& x) { return x[0] * x[0] + x[1] * x[1] - 1.0; }, 2};
  if (name == "coordinate-x") {
    return {[](const V& x) {
              if (x.size() < 1) throw InputError("coordinate-x needs at least one coordinate");
              return x[0];
            },
            0};
  }
  if (name == "linear-sum") return {[](const V& x) { return x.sum(); }, 0};
  if (name == "constant") return {[](const V&) { return 0.0; }, 0};
  if (name == "saddle") return {[](const V& x) { return x[0] * x[0] - x[1] * x[1]; }, 2};
  throw InputError("unknown built-in field '" + name + "'");
}

std::vector<std::string> builtin_field_names() {
  return {"squared-norm", "circle", "unit-circle", "coordinate-x", "linear-sum", "constant", "saddle"};
}

LevelSetConcept make_level_set(const std::string& field, double level, double tolerance) {
  auto b = builtin_field(field);
  LevelSetConcept c{field, std::move(b.f), b.dim, level, tolerance};
  c.validate();
  return c;
}

}  // namespace conceptkit
