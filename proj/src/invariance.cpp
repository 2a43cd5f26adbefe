#include "conceptkit/invariance.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "conceptkit/error.hpp"
#include "conceptkit/rng.hpp"

namespace conceptkit {

namespace {

void require_tol(double tol) {
  if (!(tol > 0.0)) throw InputError("tolerance must be positive");
}

// Running max/mean accumulator shared by the sample-based checkers.
struct DeviationTracker {
  CheckReport report;
  double sum = 0.0;

  explicit DeviationTracker(double tol) { report.tolerance = tol; }

  void add(double deviation, const GroupElement& g, const Eigen::VectorXd& x) {
    if (std::isnan(deviation)) deviation = std::numeric_limits<double>::infinity();
    if (report.samples == 0 || deviation > report.max_deviation) {
      report.max_deviation = deviation;
      report.worst_element = g;
      report.worst_point = x;
    }
    sum += deviation;
    ++report.samples;
  }

  CheckReport finish() {
    report.mean_deviation = report.samples ? sum / static_cast<double>(report.samples) : 0.0;
    report.passed = report.max_deviation <= report.tolerance;
    return report;
  }
};

void record(GroupReport& report, const GroupCheckOptions& options, std::string law, std::vector<GroupElement> witness) {
  report.passed = false;
  ++report.violation_count;
  if (report.violations.size() < options.max_reported) report.violations.push_back({std::move(law), std::move(witness)});
}

GroupReport verify_exhaustive(const GroupSpec& group, const GroupCheckOptions& options) {
  GroupReport report;
  report.exhaustive = true;
  const auto elems = group.elements();
  const std::size_t n = elems.size();
  std::map<GroupElement, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) index.emplace(elems[i], i);

  constexpr std::size_t kMissing = static_cast<std::size_t>(-1);
  std::vector<std::size_t> cayley(n * n, kMissing);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      auto it = index.find(group.compose(elems[a], elems[b]));
      if (it == index.end()) {
        record(report, options, "closure", {elems[a], elems[b]});
      } else {
        cayley[a * n + b] = it->second;
      }
    }
  }
  if (!report.passed) return report;
  auto mul = [&](std::size_t a, std::size_t b) { return cayley[a * n + b]; };

  std::optional<std::size_t> identity;
  for (std::size_t e = 0; e < n && !identity; ++e) {
    bool neutral = true;
    for (std::size_t a = 0; a < n && neutral; ++a) neutral = mul(e, a) == a && mul(a, e) == a;
    if (neutral) identity = e;
  }
  if (!identity) {
    record(report, options, "identity", {});
  } else {
    for (std::size_t a = 0; a < n; ++a) {
      bool found = false;
      for (std::size_t b = 0; b < n && !found; ++b) found = mul(a, b) == *identity && mul(b, a) == *identity;
      if (!found) record(report, options, "inverse", {elems[a]});
    }
  }

  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const std::size_t ab = mul(a, b);
      for (std::size_t c = 0; c < n; ++c) {
        if (mul(ab, c) != mul(a, mul(b, c))) record(report, options, "associativity", {elems[a], elems[b], elems[c]});
      }
    }
  }
  report.triples_checked = n * n * n;
  return report;
}

GroupReport verify_sampled(const GroupSpec& group, const GroupCheckOptions& options) {
  GroupReport report;
  const auto elems = group.elements();
  if (elems.empty()) return report;
  Rng rng = Rng(options.seed).split("verify-group");
  const GroupElement e = group.identity();

  for (const auto& a : elems) {
    if (!group.same(group.compose(e, a), a, options.tol) || !group.same(group.compose(a, e), a, options.tol)) {
      record(report, options, "identity", {a});
    }
    const auto inv = group.inverse(a);
    if (!group.same(group.compose(a, inv), e, options.tol) || !group.same(group.compose(inv, a), e, options.tol)) {
      record(report, options, "inverse", {a});
    }
  }
  for (std::size_t t = 0; t < options.sample_budget; ++t) {
    const auto& a = elems[rng.below(elems.size())];
    const auto& b = elems[rng.below(elems.size())];
    const auto& c = elems[rng.below(elems.size())];
    const auto ab = group.compose(a, b);
    if (!group.contains(ab)) record(report, options, "closure", {a, b});
    if (!group.same(group.compose(ab, c), group.compose(a, group.compose(b, c)), options.tol)) {
      record(report, options, "associativity", {a, b, c});
    }
  }
  report.triples_checked = options.sample_budget;
  return report;
}

double block_deviation(const RepresentationMap& phi, const Eigen::VectorXd& a, const Eigen::VectorXd& b,
                       std::size_t begin, std::size_t end) {
  double ss = 0.0;
  for (std::size_t i = begin; i < end; ++i) {
    double d = a[static_cast<Eigen::Index>(i)] - b[static_cast<Eigen::Index>(i)];
    if (i < phi.periods.size() && phi.periods[i] > 0.0) d = std::remainder(d, phi.periods[i]);
    ss += d * d;
  }
  return std::sqrt(ss);
}

}  // namespace

GroupReport verify_group(const GroupSpec& group, const GroupCheckOptions& options) {
  if (group.is_finite() && group.order() <= options.exhaustive_limit) return verify_exhaustive(group, options);
  return verify_sampled(group, options);
}

CheckReport check_action_laws(const GroupAction& action, const std::vector<Eigen::VectorXd>& points,
                              const std::vector<GroupElement>& elements, double tol) {
  require_tol(tol);
  DeviationTracker tracker(tol);
  const GroupElement e = action.group.identity();
  for (const auto& x : points) {
    tracker.add((action(e, x) - x).norm(), e, x);
    for (const auto& g : elements) {
      for (const auto& h : elements) {
        const double dev = (action(action.group.compose(g, h), x) - action(g, action(h, x))).norm();
        GroupElement pair = g;
        pair.insert(pair.end(), h.begin(), h.end());
        tracker.add(dev, pair, x);
      }
    }
  }
  return tracker.finish();
}

CheckReport check_invariance(const GroupAction& action, const RepresentationMap& phi,
                             const std::vector<Eigen::VectorXd>& points, const std::vector<GroupElement>& elements,
                             double tol) {
  require_tol(tol);
  if (action.dim != phi.input_dim) throw InputError("action space and representation domain differ in dimension");
  DeviationTracker tracker(tol);
  for (const auto& x : points) {
    const Eigen::VectorXd base = phi(x);
    for (const auto& g : elements) tracker.add(phi.deviation(base, phi(action(g, x))), g, x);
  }
  return tracker.finish();
}

CheckReport check_equivariance(const GroupAction& action, const RepresentationMap& phi, const EquivariantAction& psi,
                               const std::vector<Eigen::VectorXd>& points, const std::vector<GroupElement>& elements,
                               double tol) {
  require_tol(tol);
  if (action.dim != phi.input_dim) throw InputError("action space and representation domain differ in dimension");
  if (psi.dim != phi.output_dim) throw InputError("psi acts on a space of different dimension than phi's output");
  DeviationTracker tracker(tol);
  for (const auto& x : points) {
    const Eigen::VectorXd base = phi(x);
    for (const auto& g : elements) tracker.add(phi.deviation(phi(action(g, x)), psi(g, base)), g, x);
  }
  return tracker.finish();
}

CheckReport check_homomorphism(const GroupSpec& group, const EquivariantAction& psi,
                               const std::vector<Eigen::VectorXd>& vectors, const std::vector<GroupElement>& elements,
                               double tol) {
  require_tol(tol);
  DeviationTracker tracker(tol);
  const GroupElement e = group.identity();
  for (const auto& v : vectors) {
    tracker.add((psi(e, v) - v).norm(), e, v);
    for (const auto& g : elements) {
      for (const auto& h : elements) {
        GroupElement pair = g;
        pair.insert(pair.end(), h.begin(), h.end());
        tracker.add((psi(group.compose(g, h), v) - psi(g, psi(h, v))).norm(), pair, v);
      }
    }
  }
  return tracker.finish();
}

LieReport lie_rotation_residual(const ScalarField& f, const std::vector<Eigen::Vector2d>& points, double h) {
  if (!f) throw InputError("no function given");
  if (!(h > 0.0)) throw InputError("finite-difference step must be positive");
  LieReport report;
  for (const auto& p : points) {
    if (!p.allFinite()) throw InputError("points must be finite");
    const Eigen::Vector2d dx(h, 0.0), dy(0.0, h);
    const double fx = (f(Eigen::VectorXd(p + dx)) - f(Eigen::VectorXd(p - dx))) / (2.0 * h);
    const double fy = (f(Eigen::VectorXd(p + dy)) - f(Eigen::VectorXd(p - dy))) / (2.0 * h);
    if (!std::isfinite(fx) || !std::isfinite(fy)) throw DomainError("non-finite derivative estimate");
    const double r = std::abs(-p.y() * fx + p.x() * fy);
    if (report.residuals.empty() || r > report.max_residual) {
      report.max_residual = r;
      report.worst_point = p;
    }
    report.residuals.push_back(r);
  }
  return report;
}

ProductDecomposition ProductDecomposition::equal_blocks(std::size_t n, std::size_t width) {
  ProductDecomposition d;
  for (std::size_t i = 0; i < n; ++i) d.blocks.emplace_back(i * width, (i + 1) * width);
  return d;
}

void ProductDecomposition::validate(std::size_t dim) const {
  if (blocks.empty()) throw InputError("decomposition has no blocks");
  std::vector<bool> covered(dim, false);
  for (auto [begin, end] : blocks) {
    if (begin >= end || end > dim) throw InputError("block range is empty or exceeds the representation dimension");
    for (std::size_t i = begin; i < end; ++i) {
      if (covered[i]) throw InputError("blocks overlap at coordinate " + std::to_string(i));
      covered[i] = true;
    }
  }
  if (std::find(covered.begin(), covered.end(), false) != covered.end()) {
    throw InputError("blocks do not cover every representation coordinate");
  }
}

DisentangleReport check_disentangled(const GroupAction& action, const RepresentationMap& phi,
                                     const ProductDecomposition& decomposition,
                                     const std::vector<Eigen::VectorXd>& points, double tol) {
  require_tol(tol);
  if (action.dim != phi.input_dim) throw InputError("action space and representation domain differ in dimension");
  decomposition.validate(phi.output_dim);
  const GroupSpec& group = action.group;
  const bool is_product = group.kind() == GroupSpec::Kind::product;
  const std::size_t n_factors = is_product ? group.factors().size() : 1;
  if (n_factors != decomposition.blocks.size()) {
    throw InputError("group has " + std::to_string(n_factors) + " factors but the decomposition has " +
                     std::to_string(decomposition.blocks.size()) + " blocks");
  }

  DisentangleReport report;
  report.tolerance = tol;
  for (std::size_t i = 0; i < n_factors; ++i) {
    const GroupSpec& factor = is_product ? group.factors()[i] : group;
    const GroupElement factor_identity = factor.identity();
    FactorReport fr;
    for (const auto& gi : factor.elements()) {
      const GroupElement g = group.embed_factor(i, gi);
      const bool trivial = factor.same(gi, factor_identity);
      for (const auto& x : points) {
        const Eigen::VectorXd z = phi(x);
        const Eigen::VectorXd moved = phi(action(g, x));
        for (std::size_t j = 0; j < n_factors; ++j) {
          const auto [begin, end] = decomposition.blocks[j];
          const double dev = block_deviation(phi, moved, z, begin, end);
          if (j == i) {
            fr.own_change = std::max(fr.own_change, dev);
            if (!trivial && dev > tol) fr.non_degenerate = true;
          } else {
            fr.leakage = std::max(fr.leakage, dev);
          }
        }
      }
    }
    report.leakage = std::max(report.leakage, fr.leakage);
    report.passed = report.passed && fr.leakage <= tol && fr.non_degenerate;
    report.factors.push_back(fr);
  }
  return report;
}

}  // namespace conceptkit
