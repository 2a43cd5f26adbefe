#include "conceptkit/group.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "conceptkit/error.hpp"
#include "conceptkit/vae.hpp"

namespace conceptkit {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::size_t as_index(double coordinate, std::size_t bound) {
  if (!(coordinate >= 0.0) || coordinate != std::floor(coordinate) || coordinate >= static_cast<double>(bound)) {
    throw InputError("group element coordinate " + std::to_string(coordinate) + " is not an index below " +
                     std::to_string(bound));
  }
  return static_cast<std::size_t>(coordinate);
}

void require_arity(const GroupSpec& g, const GroupElement& a) {
  if (a.size() != g.arity()) {
    throw InputError("group element has " + std::to_string(a.size()) + " coordinates, expected " +
                     std::to_string(g.arity()));
  }
}

Eigen::Matrix2d rotation_matrix(double theta) {
  Eigen::Matrix2d r;
  r << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  return r;
}

// Wrap into (-pi, pi].
double wrap_signed(double theta) {
  double w = std::remainder(theta, kTwoPi);
  if (w <= -std::numbers::pi) w += kTwoPi;
  return w;
}

}  // namespace

double wrap_angle(double theta) {
  double w = std::fmod(theta, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  if (w >= kTwoPi) w = 0.0;
  return w;
}

GroupSpec GroupSpec::cyclic(std::size_t n) {
  if (n < 1) throw InputError("cyclic group order must be at least 1");
  GroupSpec g;
  g.kind_ = Kind::cyclic;
  g.n_ = n;
  return g;
}

GroupSpec GroupSpec::from_table(std::vector<std::vector<std::size_t>> table) {
  if (table.empty()) throw InputError("composition table is empty");
  const std::size_t n = table.size();
  for (std::size_t a = 0; a < n; ++a) {
    if (table[a].size() != n) throw InputError("composition table row " + std::to_string(a) + " is not of length " + std::to_string(n));
    for (std::size_t b = 0; b < n; ++b) {
      if (table[a][b] >= n) {
        throw InputError("composition table entry (" + std::to_string(a) + "," + std::to_string(b) +
                         ") names element " + std::to_string(table[a][b]) + " outside the group");
      }
    }
  }
  GroupSpec g;
  g.kind_ = Kind::table;
  g.n_ = n;
  for (std::size_t e = 0; e < n && !g.table_identity_; ++e) {
    bool neutral = true;
    for (std::size_t a = 0; a < n && neutral; ++a) neutral = table[e][a] == a && table[a][e] == a;
    if (neutral) g.table_identity_ = e;
  }
  g.table_ = std::move(table);
  return g;
}

GroupSpec GroupSpec::rotation(std::vector<double> sample_angles) {
  for (double a : sample_angles) {
    if (!std::isfinite(a)) throw InputError("rotation sample angles must be finite");
  }
  GroupSpec g;
  g.kind_ = Kind::rotation;
  g.angles_ = std::move(sample_angles);
  return g;
}

GroupSpec GroupSpec::product(std::vector<GroupSpec> factors) {
  if (factors.empty()) throw InputError("product group needs at least one factor");
  GroupSpec g;
  g.kind_ = Kind::product;
  g.factors_ = std::move(factors);
  return g;
}

bool GroupSpec::is_finite() const noexcept {
  switch (kind_) {
    case Kind::cyclic:
    case Kind::table: return true;
    case Kind::rotation: return false;
    case Kind::product:
      for (const auto& f : factors_) {
        if (!f.is_finite()) return false;
      }
      return true;
  }
  return false;
}

std::size_t GroupSpec::order() const {
  if (!is_finite()) throw DomainError("SO(2) has no finite order");
  if (kind_ != Kind::product) return n_;
  std::size_t n = 1;
  for (const auto& f : factors_) n *= f.order();
  return n;
}

std::size_t GroupSpec::arity() const noexcept {
  if (kind_ != Kind::product) return 1;
  std::size_t n = 0;
  for (const auto& f : factors_) n += f.arity();
  return n;
}

GroupElement GroupSpec::identity() const {
  switch (kind_) {
    case Kind::cyclic:
    case Kind::rotation: return {0.0};
    case Kind::table:
      if (!table_identity_) throw DomainError("composition table has no identity element");
      return {static_cast<double>(*table_identity_)};
    case Kind::product: {
      GroupElement e;
      for (const auto& f : factors_) {
        auto part = f.identity();
        e.insert(e.end(), part.begin(), part.end());
      }
      return e;
    }
  }
  return {};
}

GroupElement GroupSpec::compose(const GroupElement& a, const GroupElement& b) const {
  require_arity(*this, a);
  require_arity(*this, b);
  switch (kind_) {
    case Kind::cyclic: return {static_cast<double>((as_index(a[0], n_) + as_index(b[0], n_)) % n_)};
    case Kind::table: return {static_cast<double>(table_[as_index(a[0], n_)][as_index(b[0], n_)])};
    case Kind::rotation: return {wrap_angle(a[0] + b[0])};
    case Kind::product: {
      GroupElement out;
      for (std::size_t i = 0; i < factors_.size(); ++i) {
        auto part = factors_[i].compose(factor_part(i, a), factor_part(i, b));
        out.insert(out.end(), part.begin(), part.end());
      }
      return out;
    }
  }
  return {};
}

GroupElement GroupSpec::inverse(const GroupElement& a) const {
  require_arity(*this, a);
  switch (kind_) {
    case Kind::cyclic: return {static_cast<double>((n_ - as_index(a[0], n_)) % n_)};
    case Kind::rotation: return {wrap_angle(-a[0])};
    case Kind::table: {
      const std::size_t x = as_index(a[0], n_);
      const std::size_t e = as_index(identity()[0], n_);
      for (std::size_t y = 0; y < n_; ++y) {
        if (table_[x][y] == e && table_[y][x] == e) return {static_cast<double>(y)};
      }
      throw DomainError("table element " + std::to_string(x) + " has no inverse");
    }
    case Kind::product: {
      GroupElement out;
      for (std::size_t i = 0; i < factors_.size(); ++i) {
        auto part = factors_[i].inverse(factor_part(i, a));
        out.insert(out.end(), part.begin(), part.end());
      }
      return out;
    }
  }
  return {};
}

bool GroupSpec::same(const GroupElement& a, const GroupElement& b, double tol) const {
  require_arity(*this, a);
  require_arity(*this, b);
  switch (kind_) {
    case Kind::cyclic:
    case Kind::table: return a[0] == b[0];
    case Kind::rotation: return std::abs(wrap_signed(a[0] - b[0])) <= tol;
    case Kind::product:
      for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (!factors_[i].same(factor_part(i, a), factor_part(i, b), tol)) return false;
      }
      return true;
  }
  return false;
}

bool GroupSpec::contains(const GroupElement& a) const {
  if (a.size() != arity()) return false;
  switch (kind_) {
    case Kind::cyclic:
    case Kind::table: return a[0] >= 0.0 && a[0] == std::floor(a[0]) && a[0] < static_cast<double>(n_);
    case Kind::rotation: return std::isfinite(a[0]);
    case Kind::product:
      for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (!factors_[i].contains(factor_part(i, a))) return false;
      }
      return true;
  }
  return false;
}

std::vector<GroupElement> GroupSpec::elements() const {
  switch (kind_) {
    case Kind::cyclic:
    case Kind::table: {
      std::vector<GroupElement> out;
      for (std::size_t k = 0; k < n_; ++k) out.push_back({static_cast<double>(k)});
      return out;
    }
    case Kind::rotation: {
      std::vector<GroupElement> out;
      for (double a : angles_) out.push_back({a});
      return out;
    }
    case Kind::product: {
      std::vector<GroupElement> out{{}};
      for (const auto& f : factors_) {
        std::vector<GroupElement> next;
        for (const auto& prefix : out) {
          for (const auto& part : f.elements()) {
            GroupElement e = prefix;
            e.insert(e.end(), part.begin(), part.end());
            next.push_back(std::move(e));
          }
        }
        out = std::move(next);
      }
      return out;
    }
  }
  return {};
}

GroupElement GroupSpec::factor_part(std::size_t factor, const GroupElement& g) const {
  if (kind_ != Kind::product) {
    if (factor != 0) throw InputError("non-product group has a single factor");
    return g;
  }
  if (factor >= factors_.size()) throw InputError("factor index out of range");
  std::size_t offset = 0;
  for (std::size_t i = 0; i < factor; ++i) offset += factors_[i].arity();
  const std::size_t width = factors_[factor].arity();
  if (g.size() < offset + width) throw InputError("product element too short");
  return GroupElement(g.begin() + static_cast<std::ptrdiff_t>(offset),
                      g.begin() + static_cast<std::ptrdiff_t>(offset + width));
}

GroupElement GroupSpec::embed_factor(std::size_t factor, const GroupElement& g) const {
  if (kind_ != Kind::product) {
    if (factor != 0) throw InputError("non-product group has a single factor");
    return g;
  }
  if (factor >= factors_.size()) throw InputError("factor index out of range");
  GroupElement out;
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    const auto part = i == factor ? g : factors_[i].identity();
    if (part.size() != factors_[i].arity()) throw InputError("factor element has wrong arity");
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

std::string GroupSpec::describe() const {
  switch (kind_) {
    case Kind::cyclic: return "cyclic(" + std::to_string(n_) + ")";
    case Kind::table: return "table(" + std::to_string(n_) + ")";
    case Kind::rotation: return "SO(2)[" + std::to_string(angles_.size()) + " samples]";
    case Kind::product: {
      std::string s;
      for (std::size_t i = 0; i < factors_.size(); ++i) s += (i ? " x " : "") + factors_[i].describe();
      return s;
    }
  }
  return "?";
}

double element_angle(const GroupSpec& group, const GroupElement& g) {
  require_arity(group, g);
  switch (group.kind()) {
    case GroupSpec::Kind::cyclic:
      return kTwoPi * static_cast<double>(as_index(g[0], group.cyclic_order())) / static_cast<double>(group.cyclic_order());
    case GroupSpec::Kind::rotation: return g[0];
    default: throw InputError("only cyclic and rotation groups act by a single angle");
  }
}

Eigen::VectorXd GroupAction::operator()(const GroupElement& g, const Eigen::VectorXd& x) const {
  if (static_cast<std::size_t>(x.size()) != dim) {
    throw InputError("action '" + name + "' expects dimension " + std::to_string(dim) + ", got " + std::to_string(x.size()));
  }
  return act(g, x);
}

GroupAction rotation_action(GroupSpec group) {
  if (group.kind() != GroupSpec::Kind::cyclic && group.kind() != GroupSpec::Kind::rotation) {
    throw InputError("rotation action needs a cyclic or rotation group");
  }
  GroupSpec captured = group;
  return {"rotation", std::move(group), 2, [captured](const GroupElement& g, const Eigen::VectorXd& x) {
            return Eigen::VectorXd(rotation_matrix(element_angle(captured, g)) * x);
          }};
}

GroupAction block_rotation_action(GroupSpec product) {
  if (product.kind() != GroupSpec::Kind::product) throw InputError("block rotation needs a product group");
  for (const auto& f : product.factors()) {
    if (f.kind() != GroupSpec::Kind::cyclic && f.kind() != GroupSpec::Kind::rotation) {
      throw InputError("block rotation factors must be cyclic or rotation groups");
    }
  }
  GroupSpec captured = product;
  const std::size_t dim = 2 * product.factors().size();
  return {"block-rotation", std::move(product), dim, [captured](const GroupElement& g, const Eigen::VectorXd& x) {
            Eigen::VectorXd y = x;
            for (std::size_t i = 0; i < captured.factors().size(); ++i) {
              const double theta = element_angle(captured.factors()[i], captured.factor_part(i, g));
              y.segment<2>(static_cast<Eigen::Index>(2 * i)) =
                  rotation_matrix(theta) * x.segment<2>(static_cast<Eigen::Index>(2 * i));
            }
            return y;
          }};
}

Eigen::VectorXd RepresentationMap::operator()(const Eigen::VectorXd& x) const {
  if (static_cast<std::size_t>(x.size()) != input_dim) {
    throw InputError("representation '" + name + "' expects dimension " + std::to_string(input_dim) + ", got " +
                     std::to_string(x.size()));
  }
  Eigen::VectorXd y = map(x);
  if (static_cast<std::size_t>(y.size()) != output_dim) throw InputError("representation '" + name + "' returned wrong dimension");
  if (!y.allFinite()) throw DomainError("representation '" + name + "' produced a non-finite value");
  return y;
}

double RepresentationMap::deviation(const Eigen::VectorXd& a, const Eigen::VectorXd& b) const {
  Eigen::VectorXd d = a - b;
  for (std::size_t i = 0; i < periods.size() && i < static_cast<std::size_t>(d.size()); ++i) {
    if (periods[i] > 0.0) {
      double w = std::remainder(d[static_cast<Eigen::Index>(i)], periods[i]);
      d[static_cast<Eigen::Index>(i)] = w;
    }
  }
  return d.norm();
}

RepresentationMap identity_map(std::size_t dim) {
  return {"identity", dim, dim, [](const Eigen::VectorXd& x) { return x; }, {}};
}

RepresentationMap norm_map(std::size_t dim) {
  return {"norm", dim, 1, [](const Eigen::VectorXd& x) { return Eigen::VectorXd::Constant(1, x.norm()); }, {}};
}

RepresentationMap planar_norm_map(std::size_t dim) {
  return {"planar-norm", dim, 2,
          [](const Eigen::VectorXd& x) {
            Eigen::VectorXd y(2);
            y << x.norm(), 0.0;
            return y;
          },
          {}};
}

RepresentationMap squared_norm_map() {
  return {"squared-norm", 2, 1,
          [](const Eigen::VectorXd& x) { return Eigen::VectorXd::Constant(1, x[0] * x[0] + x[1] * x[1]); }, {}};
}

RepresentationMap polar_angle_map() {
  return {"polar-angle", 2, 1,
          [](const Eigen::VectorXd& x) {
            if (x[0] == 0.0 && x[1] == 0.0) throw DomainError("polar angle of the origin is undefined");
            return Eigen::VectorXd::Constant(1, std::atan2(x[1], x[0]));
          },
          {kTwoPi}};
}

RepresentationMap plane_mixing_map(std::size_t dim, std::size_t i, std::size_t j, double angle) {
  if (i >= dim || j >= dim || i == j) throw InputError("mixing plane indices must be distinct and in range");
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  const auto a = static_cast<Eigen::Index>(i), b = static_cast<Eigen::Index>(j);
  m(a, a) = std::cos(angle);
  m(a, b) = -std::sin(angle);
  m(b, a) = std::sin(angle);
  m(b, b) = std::cos(angle);
  return {"plane-mixing", dim, dim, [m](const Eigen::VectorXd& x) { return Eigen::VectorXd(m * x); }, {}};
}

RepresentationMap block_mixing_map(std::size_t dim, double angle) {
  if (dim == 0 || dim % 2 != 0) throw InputError("block mixing needs an even dimension");
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  const auto half = static_cast<Eigen::Index>(dim / 2);
  for (Eigen::Index i = 0; i < half; ++i) {
    m(i, i) = std::cos(angle);
    m(i, i + half) = -std::sin(angle);
    m(i + half, i) = std::sin(angle);
    m(i + half, i + half) = std::cos(angle);
  }
  return {"block-mixing", dim, dim, [m](const Eigen::VectorXd& x) { return Eigen::VectorXd(m * x); }, {}};
}

RepresentationMap vae_encoder_map(const VaeModel& model) {
  return {"vae-encoder", model.shape.input_dim, model.shape.latent_dim,
          [model](const Eigen::VectorXd& x) { return encode_mean(model, x); }, {}};
}

RepresentationMap builtin_representation(const std::string& name, std::size_t dim) {
  if (name == "identity") return identity_map(dim);
  if (name == "norm") return norm_map(dim);
  if (name == "planar-norm") return planar_norm_map(dim);
  if (name == "squared-norm") {
    if (dim != 2) throw InputError("squared-norm representation is defined on the plane");
    return squared_norm_map();
  }
  if (name == "polar-angle") {
    if (dim != 2) throw InputError("polar-angle representation is defined on the plane");
    return polar_angle_map();
  }
  if (name == "block-mixing-45") return block_mixing_map(dim, std::numbers::pi / 4.0);
  throw InputError("unknown representation '" + name + "'");
}

Eigen::VectorXd EquivariantAction::operator()(const GroupElement& g, const Eigen::VectorXd& v) const {
  if (static_cast<std::size_t>(v.size()) != dim) {
    throw InputError("psi '" + name + "' expects dimension " + std::to_string(dim) + ", got " + std::to_string(v.size()));
  }
  return apply(g, v);
}

EquivariantAction trivial_psi(std::size_t dim) {
  return {"identity", dim, [](const GroupElement&, const Eigen::VectorXd& v) { return v; }};
}

EquivariantAction psi_from_action(const GroupAction& action) {
  return {"same-as-action", action.dim, action.act};
}

EquivariantAction angle_shift_psi(const GroupSpec& group) {
  if (group.kind() != GroupSpec::Kind::cyclic && group.kind() != GroupSpec::Kind::rotation) {
    throw InputError("angle shift needs a cyclic or rotation group");
  }
  return {"angle-shift", 1, [group](const GroupElement& g, const Eigen::VectorXd& v) {
            return Eigen::VectorXd::Constant(1, wrap_signed(v[0] + element_angle(group, g)));
          }};
}

EquivariantAction builtin_psi(const std::string& name, const GroupAction& action, std::size_t rep_dim) {
  if (name == "identity") return trivial_psi(rep_dim);
  if (name == "same-as-action") return psi_from_action(action);
  if (name == "angle-shift") return angle_shift_psi(action.group);
  throw InputError("unknown psi '" + name + "'");
}

}  // namespace conceptkit
