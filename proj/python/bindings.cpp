#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <fstream>
#include <sstream>

#include "conceptkit/boxes.hpp"
#include "conceptkit/datasets.hpp"
#include "conceptkit/embedding.hpp"
#include "conceptkit/error.hpp"
#include "conceptkit/group.hpp"
#include "conceptkit/hyperbolic.hpp"
#include "conceptkit/invariance.hpp"
#include "conceptkit/io.hpp"
#include "conceptkit/lattice.hpp"
#include "conceptkit/levelset.hpp"
#include "conceptkit/similarity.hpp"
#include "conceptkit/vae.hpp"

namespace py = pybind11;
using namespace conceptkit;

namespace {

using Edges = std::vector<std::pair<std::string, std::string>>;

std::vector<FeatureVector> rows(const Eigen::MatrixXd& m) { return io::rows_of(m); }

py::dict check_report(const CheckReport& r) {
  py::dict d;
  d["passed"] = r.passed;
  d["tolerance"] = r.tolerance;
  d["max_deviation"] = r.max_deviation;
  d["mean_deviation"] = r.mean_deviation;
  d["samples"] = r.samples;
  d["worst_element"] = r.worst_element;
  d["worst_point"] = r.worst_point;
  return d;
}

py::object json_to_py(const io::json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

// JSON reports carry "verdict"; Python callers also get a boolean "passed".
py::object report_to_py(io::json j) {
  j["passed"] = j.value("verdict", "") == "pass";
  return json_to_py(j);
}

io::json py_to_json(const py::object& o) {
  return io::json::parse(py::module_::import("json").attr("dumps")(o).cast<std::string>());
}

WeightedMetric make_metric(const std::string& metric, std::optional<Eigen::VectorXd> weights, std::size_t dim) {
  auto m = WeightedMetric::uniform(metric_kind_from_string(metric), dim);
  if (weights) m.weights = *weights;
  return m;
}

GroupAction make_action(const GroupSpec& group, const std::string& kind) {
  if (kind == "rotation") return rotation_action(group);
  if (kind == "block-rotation") return block_rotation_action(group);
  throw InputError("unknown action '" + kind + "'");
}

}  // namespace

PYBIND11_MODULE(_conceptkit, m) {
  m.doc() = "Executable models of concepts";

  static py::exception<InputError> input_error(m, "InputError", PyExc_ValueError);
  static py::exception<ParseError> parse_error(m, "ParseError", input_error.ptr());
  static py::exception<DomainError> domain_error(m, "DomainError", PyExc_ArithmeticError);
  static py::exception<DivergenceError> divergence_error(m, "DivergenceError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const ParseError& e) {
      PyErr_SetString(parse_error.ptr(), e.what());
    } catch (const InputError& e) {
      PyErr_SetString(input_error.ptr(), e.what());
    } catch (const DomainError& e) {
      PyErr_SetString(domain_error.ptr(), e.what());
    } catch (const DivergenceError& e) {
      PyErr_SetString(divergence_error.ptr(), e.what());
    }
  });

  // lattices
  py::class_<Context>(m, "Context")
      .def(py::init<std::vector<std::string>, std::vector<std::string>, std::vector<std::vector<bool>>>(),
           py::arg("objects"), py::arg("attributes"), py::arg("incidence"))
      .def_property_readonly("objects", &Context::objects)
      .def_property_readonly("attributes", &Context::attributes)
      .def("incident", &Context::incident)
      .def("to_csv", [](const Context& c) {
        std::ostringstream os;
        io::write_context_csv(os, c);
        return os.str();
      })
      .def_static("from_csv", [](const std::string& text) {
        std::istringstream in(text);
        return io::read_context_csv(in);
      });

  m.def("read_context", [](const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    return io::read_context_csv(in);
  });
  m.def(
      "derive_extent",
      [](const Context& c, const std::vector<std::size_t>& attrs) { return derive_extent(c, std::span(attrs)); },
      py::arg("context"), py::arg("attributes"));
  m.def(
      "derive_intent",
      [](const Context& c, const std::vector<std::size_t>& objs) { return derive_intent(c, std::span(objs)); },
      py::arg("context"), py::arg("objects"));
  m.def("enumerate_concepts", [](const Context& c) {
    std::vector<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> out;
    for (const auto& fc : enumerate_concepts(c)) out.emplace_back(to_indices(fc.extent), to_indices(fc.intent));
    return out;
  });

  py::class_<ConceptLattice>(m, "ConceptLattice")
      .def("__len__", &ConceptLattice::size)
      .def_property_readonly("top", &ConceptLattice::top)
      .def_property_readonly("bottom", &ConceptLattice::bottom)
      .def_property_readonly("height", &ConceptLattice::height)
      .def_property_readonly("covers", &ConceptLattice::covers)
      .def("extent", [](const ConceptLattice& l, std::size_t i) { return to_indices(l.concept_at(i).extent); })
      .def("intent", [](const ConceptLattice& l, std::size_t i) { return to_indices(l.concept_at(i).intent); })
      .def("leq", &ConceptLattice::leq)
      .def("join", [](const ConceptLattice& l, std::size_t a, std::size_t b) { return join(l, a, b); })
      .def("meet", [](const ConceptLattice& l, std::size_t a, std::size_t b) { return meet(l, a, b); })
      .def("check_laws", [](const ConceptLattice& l) {
        const auto r = check_lattice_laws(l);
        py::dict d;
        d["passed"] = r.passed;
        d["pairs_checked"] = r.pairs_checked;
        d["violation_count"] = r.violation_count;
        d["violations"] = r.violations;
        return d;
      });
  m.def("concept_lattice", [](const Context& c) { return build_lattice(enumerate_concepts(c)); });
  m.def("lattice_json", [](const Context& c, const ConceptLattice& l) { return json_to_py(io::lattice_to_json(c, l)); });

  // similarity
  m.def("distance_l1", &distance_l1);
  m.def("distance_euclid", &distance_euclid);
  m.def("cosine_similarity", &cosine_similarity);
  m.def(
      "classify",
      [](const Eigen::MatrixXd& train, const std::vector<std::string>& labels, const Eigen::MatrixXd& queries,
         const std::string& mode, std::size_t k, const std::string& metric, std::optional<Eigen::VectorXd> weights) {
        const auto w = make_metric(metric, std::move(weights), static_cast<std::size_t>(train.cols()));
        std::vector<std::pair<std::string, double>> out;
        if (mode == "prototype") {
          const auto model = PrototypeModel::fit(rows(train), labels, w);
          for (const auto& x : rows(queries)) {
            auto c = classify_prototype(model, x);
            out.emplace_back(c.label, c.typicality);
          }
        } else if (mode == "exemplar") {
          const auto model = ExemplarModel::fit(rows(train), labels, w, k);
          for (const auto& x : rows(queries)) {
            auto c = classify_exemplar(model, x);
            out.emplace_back(c.label, c.typicality);
          }
        } else {
          throw InputError("mode must be prototype or exemplar");
        }
        return out;
      },
      py::arg("train"), py::arg("labels"), py::arg("queries"), py::arg("mode") = "prototype", py::arg("k") = 1,
      py::arg("metric") = "weighted-euclidean", py::arg("weights") = py::none());
  m.def(
      "kmeans",
      [](const Eigen::MatrixXd& points, std::size_t k, std::uint64_t seed, std::size_t max_iter) {
        const auto r = cluster_kmeans(rows(points), k, seed, max_iter);
        py::dict d;
        d["assignments"] = r.assignments;
        d["centroids"] = r.centroids;
        d["wcss_history"] = r.wcss_history;
        d["iterations"] = r.iterations;
        d["converged"] = r.converged;
        return d;
      },
      py::arg("points"), py::arg("k"), py::arg("seed") = 0, py::arg("max_iter") = 100);

  // embeddings
  py::class_<ScoredToken>(m, "ScoredToken")
      .def_readonly("token", &ScoredToken::token)
      .def_readonly("score", &ScoredToken::score)
      .def("__repr__", [](const ScoredToken& s) { return "(" + s.token + ", " + std::to_string(s.score) + ")"; });
  py::class_<EmbeddingSpace>(m, "EmbeddingSpace")
      .def_property_readonly("tokens", [](const EmbeddingSpace& s) { return s.vocab.tokens(); })
      .def_readonly("vectors", &EmbeddingSpace::vectors)
      .def("vector", &EmbeddingSpace::vector)
      .def("analogy", &analogy, py::arg("a"), py::arg("b"), py::arg("c"), py::arg("top_k") = 10)
      .def("nearest", &nearest, py::arg("query"), py::arg("top_k") = 10,
           py::arg("exclude") = std::vector<std::string>{});
  m.def(
      "train_sgns",
      [](const Corpus& corpus, std::size_t dim, std::size_t window, std::size_t negatives, std::size_t epochs,
         double lr, std::uint64_t seed) {
        SgnsConfig cfg{dim, window, negatives, epochs, lr, seed};
        auto r = train_sgns(corpus, cfg);
        return py::make_tuple(r.space, r.loss_history);
      },
      py::arg("corpus"), py::arg("dim") = 16, py::arg("window") = 5, py::arg("negatives") = 5, py::arg("epochs") = 5,
      py::arg("lr") = 0.025, py::arg("seed") = 0);
  m.def("vector_not", py::overload_cast<const Eigen::VectorXd&, const Eigen::VectorXd&>(&vector_not));
  m.def("vector_not_span", [](const Eigen::VectorXd& a, const std::vector<Eigen::VectorXd>& terms) {
    return vector_not(a, vector_or(terms));
  });
  m.def("vector_or", [](const std::vector<Eigen::VectorXd>& terms) { return vector_or(terms).basis(); },
        "Orthonormal basis of the span, one column per direction.");

  // hierarchies
  m.def("poincare_distance", &poincare_distance);
  m.def(
      "train_poincare",
      [](const Edges& edges, std::size_t dim, std::size_t epochs, double lr, std::size_t negatives,
         std::size_t burn_in, std::uint64_t seed) {
        PoincareConfig cfg{dim, epochs, lr, negatives, burn_in, seed};
        const auto r = train_poincare(Taxonomy::from_edges(edges), cfg);
        py::dict d;
        d["nodes"] = r.embedding.taxonomy.nodes();
        d["points"] = r.embedding.points;
        d["loss_history"] = r.loss_history;
        d["mean_parent_rank"] = mean_parent_rank(r.embedding);
        return d;
      },
      py::arg("edges"), py::arg("dim") = 2, py::arg("epochs") = 200, py::arg("lr") = 0.3, py::arg("negatives") = 10,
      py::arg("burn_in") = 10, py::arg("seed") = 0);
  m.def(
      "fit_boxes",
      [](const Edges& edges, std::size_t dim, std::size_t epochs, double lr, double margin, std::size_t restarts,
         std::uint64_t seed) {
        BoxConfig cfg{dim, epochs, lr, margin, restarts, seed};
        const auto r = fit_boxes(Taxonomy::from_edges(edges), cfg);
        Eigen::MatrixXd lo(static_cast<Eigen::Index>(r.embedding.boxes.size()), static_cast<Eigen::Index>(dim));
        Eigen::MatrixXd hi = lo;
        for (std::size_t i = 0; i < r.embedding.boxes.size(); ++i) {
          lo.row(static_cast<Eigen::Index>(i)) = r.embedding.boxes[i].lo.transpose();
          hi.row(static_cast<Eigen::Index>(i)) = r.embedding.boxes[i].hi.transpose();
        }
        py::dict d;
        d["nodes"] = r.embedding.taxonomy.nodes();
        d["lo"] = lo;
        d["hi"] = hi;
        d["loss_history"] = r.loss_history;
        d["containment_accuracy"] = containment_accuracy(r.embedding);
        d["containment_context"] = containment_context(r.embedding);
        return d;
      },
      py::arg("edges"), py::arg("dim") = 2, py::arg("epochs") = 500, py::arg("lr") = 0.05, py::arg("margin") = 0.02,
      py::arg("restarts") = 5, py::arg("seed") = 0);

  // manifolds
  m.def(
      "level_membership",
      [](const std::string& field, double level, const Eigen::VectorXd& x, double tol) {
        const auto r = level_membership(make_level_set(field, level, tol), x);
        return py::make_tuple(r.member, r.residual);
      },
      py::arg("field"), py::arg("level"), py::arg("x"), py::arg("tolerance") = 1e-9);
  py::class_<VaeModel>(m, "VaeModel")
      .def_static("init", [](std::size_t input_dim, std::size_t latent_dim, std::size_t enc, std::size_t dec,
                             std::uint64_t seed) { return VaeModel::init({input_dim, latent_dim, enc, dec}, seed); },
                  py::arg("input_dim"), py::arg("latent_dim"), py::arg("encoder_hidden") = 16,
                  py::arg("decoder_hidden") = 16, py::arg("seed") = 0)
      .def("encode_mean", [](const VaeModel& v, const Eigen::VectorXd& x) { return encode_mean(v, x); })
      .def("decode", [](const VaeModel& v, const Eigen::VectorXd& z) { return decode(v, z); })
      .def("interpolate",
           [](const VaeModel& v, const Eigen::VectorXd& a, const Eigen::VectorXd& b, std::size_t steps) {
             return latent_interpolate(v, a, b, steps);
           },
           py::arg("a"), py::arg("b"), py::arg("steps") = 16)
      .def("to_json", [](const VaeModel& v) { return json_to_py(io::vae_to_json(v)); })
      .def_static("from_json", [](const py::object& o) { return io::vae_from_json(py_to_json(o)); });
  m.def(
      "train_vae",
      [](const VaeModel& init, const Eigen::MatrixXd& data, std::size_t epochs, double lr, double beta,
         std::size_t batch_size, std::uint64_t seed) {
        auto r = vae_train(init, data, {epochs, lr, beta, batch_size, seed});
        return py::make_tuple(r.model, r.loss_history);
      },
      py::arg("model"), py::arg("data"), py::arg("epochs") = 200, py::arg("lr") = 0.05, py::arg("beta") = 1.0,
      py::arg("batch_size") = 32, py::arg("seed") = 0);
  m.def("gaussian_kl", &gaussian_kl);

  // groups
  py::class_<GroupSpec>(m, "Group")
      .def_static("cyclic", &GroupSpec::cyclic)
      .def_static("from_table", &GroupSpec::from_table)
      .def_static("rotation", &GroupSpec::rotation)
      .def_static("product", &GroupSpec::product)
      .def_static("from_json", [](const py::object& o) { return io::group_from_json(py_to_json(o)); })
      .def("elements", &GroupSpec::elements)
      .def("compose", &GroupSpec::compose)
      .def("identity", &GroupSpec::identity)
      .def("__repr__", &GroupSpec::describe);
  m.def(
      "verify_group",
      [](const GroupSpec& g, std::size_t budget, std::uint64_t seed) {
        GroupCheckOptions opts;
        opts.sample_budget = budget;
        opts.seed = seed;
        return report_to_py(io::group_report_to_json(verify_group(g, opts)));
      },
      py::arg("group"), py::arg("budget") = 20000, py::arg("seed") = 0);
  m.def(
      "check_invariance",
      [](const GroupSpec& g, const std::string& action, const std::string& phi,
         const std::vector<Eigen::VectorXd>& points, double tol) {
        const auto act = make_action(g, action);
        return check_report(check_invariance(act, builtin_representation(phi, act.dim), points, g.elements(), tol));
      },
      py::arg("group"), py::arg("action"), py::arg("phi"), py::arg("points"), py::arg("tol") = 1e-9);
  m.def(
      "check_equivariance",
      [](const GroupSpec& g, const std::string& action, const std::string& phi, const std::string& psi,
         const std::vector<Eigen::VectorXd>& points, double tol) {
        const auto act = make_action(g, action);
        const auto rep = builtin_representation(phi, act.dim);
        return check_report(
            check_equivariance(act, rep, builtin_psi(psi, act, rep.output_dim), points, g.elements(), tol));
      },
      py::arg("group"), py::arg("action"), py::arg("phi"), py::arg("psi"), py::arg("points"), py::arg("tol") = 1e-9);
  m.def(
      "check_disentangled",
      [](const GroupSpec& g, const std::string& phi, const std::vector<Eigen::VectorXd>& points, double tol) {
        const auto act = block_rotation_action(g);
        const auto rep = builtin_representation(phi, act.dim);
        const auto blocks = ProductDecomposition::equal_blocks(g.factors().size(), rep.output_dim / g.factors().size());
        return report_to_py(io::disentangle_report_to_json(check_disentangled(act, rep, blocks, points, tol)));
      },
      py::arg("group"), py::arg("phi"), py::arg("points"), py::arg("tol") = 1e-9);
  m.def(
      "lie_residual",
      [](const std::string& field, const std::vector<Eigen::Vector2d>& points, double h) {
        const auto r = lie_rotation_residual(builtin_field(field).f, points, h);
        return py::make_tuple(r.max_residual, r.residuals);
      },
      py::arg("field"), py::arg("points"), py::arg("h") = 1e-5);

  // generators
  m.def("gen_context", &gen_context, py::arg("objects"), py::arg("attributes"), py::arg("density"),
        py::arg("seed") = 0);
  m.def("gen_tree", [](std::size_t depth, std::size_t branching) { return gen_tree(depth, branching).named_edges(); },
        py::arg("depth"), py::arg("branching"));
  m.def("gen_topic_corpus", &gen_topic_corpus, py::arg("topics"), py::arg("vocab_per_topic"), py::arg("sentences"),
        py::arg("seed") = 0, py::arg("sentence_length") = 10);
  m.def(
      "gen_blobs",
      [](const Eigen::MatrixXd& centers, std::size_t per_center, double spread, std::uint64_t seed) {
        auto r = gen_blobs(centers, per_center, spread, seed);
        return py::make_tuple(r.points, r.labels);
      },
      py::arg("centers"), py::arg("per_center"), py::arg("spread"), py::arg("seed") = 0);
  m.def(
      "gen_two_moons",
      [](std::size_t n, double noise, std::uint64_t seed) {
        auto r = gen_two_moons(n, noise, seed);
        return py::make_tuple(r.points, r.labels);
      },
      py::arg("points"), py::arg("noise") = 0.05, py::arg("seed") = 0);
  m.def(
      "gen_torus_orbits",
      [](std::size_t n1, std::size_t n2, std::size_t samples, std::uint64_t seed) {
        auto r = gen_torus_orbits(n1, n2, samples, seed);
        return py::make_tuple(r.group, r.points, r.labels);
      },
      py::arg("n1"), py::arg("n2"), py::arg("samples") = 0, py::arg("seed") = 0);
}
