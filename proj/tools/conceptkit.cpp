// conceptkit command-line front end.
//
// Exit codes: 0 success, 1 verification or training failure, 2 input error.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "conceptkit/boxes.hpp"
#include "conceptkit/datasets.hpp"
#include "conceptkit/embedding.hpp"
#include "conceptkit/error.hpp"
#include "conceptkit/group.hpp"
#include "conceptkit/hyperbolic.hpp"
#include "conceptkit/invariance.hpp"
#include "conceptkit/io.hpp"
#include "conceptkit/lattice.hpp"
#include "conceptkit/rng.hpp"
#include "conceptkit/similarity.hpp"
#include "conceptkit/taxonomy.hpp"
#include "conceptkit/vae.hpp"

namespace fs = std::filesystem;
namespace ck = conceptkit;
using nlohmann::json;

namespace {

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kInputError = 2;

std::ifstream open_input(const std::string& path) {
  if (!fs::is_regular_file(path)) throw ck::InputError("cannot read input file '" + path + "'");
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ck::InputError("cannot read input file '" + path + "'");
  return in;
}

json read_json_file(const std::string& path) {
  auto in = open_input(path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ck::InputError(path + ": " + e.what());
  }
}

void check_output(const std::string& path) {
  const fs::path parent = fs::path(path).parent_path();
  if (!parent.empty() && !fs::is_directory(parent)) {
    throw ck::InputError("output directory '" + parent.string() + "' does not exist");
  }
}

// Writes to a sibling temp file and renames it over the target.
void write_atomic(const std::string& path, const std::function<void(std::ostream&)>& body) {
  check_output(path);
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ck::InputError("cannot write '" + path + "'");
    body(out);
    out.flush();
    if (!out) throw ck::InputError("failed writing '" + path + "'");
  }
  fs::rename(tmp, path);
}

void write_json(const std::string& path, const json& j) {
  write_atomic(path, [&](std::ostream& out) { out << j.dump(2) << '\n'; });
}

std::string default_loss_path(const std::string& out) {
  fs::path p(out);
  p.replace_extension();
  return p.string() + ".loss.csv";
}

// Prints a report to stdout, or writes it to `out` and prints the verdict.
int emit_report(const json& report, const std::string& out) {
  const bool passed = report.at("verdict") == "pass";
  if (out.empty()) {
    std::cout << report.dump(2) << '\n';
  } else {
    write_json(out, report);
    std::cout << (passed ? "pass" : "fail") << '\n';
  }
  return passed ? kOk : kFail;
}

void write_csv_rows(std::ostream& out, const std::vector<std::string>& header,
                    const std::vector<std::vector<std::string>>& rows) {
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
    out << '\n';
  };
  line(header);
  for (const auto& r : rows) line(r);
}

std::vector<std::string> numeric_cells(const Eigen::VectorXd& v) {
  std::vector<std::string> cells;
  for (Eigen::Index i = 0; i < v.size(); ++i) cells.push_back(ck::io::format_double(v(i)));
  return cells;
}

ck::io::PointTable read_points(const std::string& path, const std::string& label_column) {
  auto in = open_input(path);
  return ck::io::read_points_csv(in, label_column.empty() ? std::nullopt : std::optional(label_column));
}

ck::Taxonomy read_taxonomy(const std::string& path) {
  auto in = open_input(path);
  return ck::io::read_taxonomy_csv(in);
}

ck::EmbeddingSpace read_vectors(const std::string& path) {
  auto in = open_input(path);
  return ck::io::read_embedding_tsv(in);
}

// --- actions --------------------------------------------------------------

// Action file:
//   {"group": <group spec>, "action": "rotation" | "block-rotation",
//    "points": <count> | [[x, ...], ...], "seed": 0}
struct ActionSetup {
  ck::GroupAction action;
  std::vector<Eigen::VectorXd> points;
};

ActionSetup load_action(const std::string& path, const std::string& points_csv) {
  const json j = read_json_file(path);
  try {
    ck::GroupSpec group = ck::io::group_from_json(j.at("group"));
    const std::string default_kind = group.kind() == ck::GroupSpec::Kind::product ? "block-rotation" : "rotation";
    const std::string kind = j.value("action", default_kind);
    ActionSetup setup;
    if (kind == "rotation") {
      setup.action = ck::rotation_action(std::move(group));
    } else if (kind == "block-rotation") {
      setup.action = ck::block_rotation_action(std::move(group));
    } else {
      throw ck::InputError("unknown action '" + kind + "'");
    }
    const auto dim = static_cast<Eigen::Index>(setup.action.dim);
    if (!points_csv.empty()) {
      const auto table = read_points(points_csv, "");
      if (table.values.cols() != dim) throw ck::InputError("points file does not match the action dimension");
      setup.points = ck::io::rows_of(table.values);
    } else if (j.contains("points") && j.at("points").is_array()) {
      for (const auto& p : j.at("points")) {
        const auto coords = p.get<std::vector<double>>();
        if (static_cast<Eigen::Index>(coords.size()) != dim) {
          throw ck::InputError("action point does not match the action dimension");
        }
        setup.points.push_back(Eigen::Map<const Eigen::VectorXd>(coords.data(), dim));
      }
    } else {
      const auto count = j.value("points", std::size_t{32});
      ck::Rng rng = ck::Rng(j.value("seed", std::uint64_t{0})).split("action-points");
      for (std::size_t i = 0; i < count; ++i) {
        Eigen::VectorXd x(dim);
        for (Eigen::Index c = 0; c < dim; ++c) x(c) = rng.uniform(-2.0, 2.0);
        setup.points.push_back(std::move(x));
      }
    }
    if (setup.points.empty()) throw ck::InputError("action file has no points");
    return setup;
  } catch (const json::exception& e) {
    throw ck::InputError(path + ": " + e.what());
  }
}

// A builtin name, or the path of a VAE checkpoint.
ck::RepresentationMap load_phi(const std::string& phi, std::size_t dim) {
  if (fs::is_regular_file(phi)) {
    const auto model = ck::io::vae_from_json(read_json_file(phi));
    if (model.shape.input_dim != dim) throw ck::InputError("VAE input dimension does not match the action");
    return ck::vae_encoder_map(model);
  }
  return ck::builtin_representation(phi, dim);
}

// --- config ---------------------------------------------------------------

std::string config_value(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number()) return v.dump();
  throw ck::InputError("config values must be strings, numbers, booleans or arrays of those");
}

void apply_option(CLI::App* leaf, const std::string& key, const json& value) {
  CLI::Option* opt = leaf->get_option_no_throw("--" + key);
  if (opt == nullptr || key == "config") throw ck::InputError("unknown config key '" + key + "'");
  if (opt->count() > 0) return;  // explicit flags win
  if (value.is_array()) {
    std::vector<std::string> items;
    for (const auto& v : value) items.push_back(config_value(v));
    opt->add_result(items);
  } else {
    opt->add_result(config_value(value));
  }
  opt->run_callback();
}

// Top-level keys apply to the selected subcommand; objects named after a
// subcommand on the selected path are descended into, other objects ignored.
void merge_config(const json& j, const std::vector<CLI::App*>& path, std::size_t depth) {
  if (!j.is_object()) throw ck::InputError("config file must hold a JSON object");
  CLI::App* leaf = path.back();
  for (const auto& [key, value] : j.items()) {
    if (value.is_object()) {
      if (depth + 1 < path.size() && path[depth + 1]->get_name() == key) merge_config(value, path, depth + 1);
      continue;
    }
    apply_option(leaf, key, value);
  }
}

// --- subcommands ----------------------------------------------------------

struct Command {
  CLI::App* app = nullptr;
  std::vector<CLI::Option*> required;
  std::function<int()> run;
};

class Cli {
 public:
  Cli() : app_("Executable models of concepts: lattices, similarity spaces, manifolds and group invariance.", "conceptkit") {
    app_.require_subcommand(1);
    app_.fallthrough();
    app_.add_option("--config", config_path_, "JSON file of option values; explicit flags take precedence");
    add_fca();
    add_verify();
    add_invariance();
    add_classify();
    add_cluster();
    add_train();
    add_vae();
    add_analogy();
    add_logic();
    add_gen();
  }

  int main(int argc, char** argv) {
    try {
      app_.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
      return app_.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
      return app_.exit(e);
    } catch (const CLI::ParseError& e) {
      app_.exit(e);
      return kInputError;
    }
    try {
      std::vector<CLI::App*> path{&app_};
      while (true) {
        auto subs = path.back()->get_subcommands();
        if (subs.empty()) break;
        path.push_back(subs.front());
      }
      const auto it = commands_.find(path.back());
      if (it == commands_.end()) throw ck::InputError("missing subcommand after '" + path.back()->get_name() + "'");
      if (!config_path_.empty()) merge_config(read_json_file(config_path_), path, 0);
      for (CLI::Option* opt : it->second.required) {
        if (opt->count() == 0) throw ck::InputError("missing required option " + opt->get_name());
      }
      return it->second.run();
    } catch (const CLI::ParseError& e) {
      std::cerr << "error: " << e.what() << '\n';
      return kInputError;
    } catch (const ck::DivergenceError& e) {
      const double last = e.last_finite_loss();
      std::cerr << "error: " << e.what() << "; last finite loss "
                << (std::isfinite(last) ? ck::io::format_double(last) : std::string("none")) << '\n';
      return kFail;
    } catch (const ck::InputError& e) {
      std::cerr << "error: " << e.what() << '\n';
      return kInputError;
    } catch (const ck::DomainError& e) {
      std::cerr << "error: " << e.what() << '\n';
      return kInputError;
    } catch (const json::exception& e) {
      std::cerr << "error: " << e.what() << '\n';
      return kInputError;
    } catch (const fs::filesystem_error& e) {
      std::cerr << "error: " << e.what() << '\n';
      return kInputError;
    }
  }

 private:
  Command& command(CLI::App* parent, const std::string& name, const std::string& help) {
    CLI::App* sub = parent->add_subcommand(name, help);
    return commands_[sub] = Command{sub, {}, {}};
  }

  static CLI::Option* req(Command& cmd, CLI::Option* opt) {
    cmd.required.push_back(opt);
    return opt;
  }

  void add_fca() {
    auto& cmd = command(&app_, "fca", "Build the concept lattice of a context CSV");
    req(cmd, cmd.app->add_option("--input", fca_.input, "Context CSV"));
    cmd.app->add_option("--out-dir", fca_.out_dir, "Directory for lattice.dot and lattice.json")->capture_default_str();
    cmd.run = [this] {
      auto in = open_input(fca_.input);
      const ck::Context ctx = ck::io::read_context_csv(in);
      if (!fca_.out_dir.empty()) fs::create_directories(fca_.out_dir);
      const std::string dot = (fs::path(fca_.out_dir) / "lattice.dot").string();
      const std::string js = (fs::path(fca_.out_dir) / "lattice.json").string();
      const auto lattice = ck::build_lattice(ck::enumerate_concepts(ctx));
      write_atomic(dot, [&](std::ostream& out) { ck::io::write_lattice_dot(out, ctx, lattice); });
      write_json(js, ck::io::lattice_to_json(ctx, lattice));
      std::cout << lattice.size() << " concepts, height " << lattice.height() << '\n';
      return kOk;
    };
  }

  void add_verify() {
    CLI::App* verify = app_.add_subcommand("verify", "Run a checker and report pass/fail");
    verify->require_subcommand(1);

    auto& lat = command(verify, "lattice", "Check a lattice JSON for lattice laws and order duality");
    req(lat, lat.app->add_option("--lattice", vlat_.lattice, "lattice.json"));
    lat.app->add_option("--context", vlat_.context, "Context CSV the lattice must be the concept lattice of");
    lat.app->add_option("--out", vlat_.out, "Report path (stdout when omitted)");
    lat.run = [this] { return verify_lattice(); };

    auto& grp = command(verify, "group", "Check the group axioms of a group spec");
    req(grp, grp.app->add_option("--group", vgrp_.group, "Group JSON, or an action JSON with a group entry"));
    grp.app->add_option("--budget", vgrp_.options.sample_budget, "Triples sampled for large or infinite groups")
        ->capture_default_str();
    grp.app->add_option("--exhaustive-limit", vgrp_.options.exhaustive_limit)->capture_default_str();
    grp.app->add_option("--tol", vgrp_.options.tol, "Angle tolerance")->capture_default_str();
    grp.app->add_option("--seed", vgrp_.options.seed)->capture_default_str();
    grp.app->add_option("--out", vgrp_.out, "Report path (stdout when omitted)");
    grp.run = [this] {
      json j = read_json_file(vgrp_.group);
      if (j.contains("group")) j = j.at("group");
      const auto report = ck::verify_group(ck::io::group_from_json(j), vgrp_.options);
      return emit_report(ck::io::group_report_to_json(report), vgrp_.out);
    };

    add_invariance_options(command(verify, "invariance", "Check phi(g x) = phi(x)"), false);
    add_equivariance(command(verify, "equivariance", "Check phi(g x) = psi(g) phi(x)"));
    add_disentangle(command(verify, "disentangle", "Check that each group factor moves only its own block"));
  }

  void add_invariance() {
    CLI::App* inv = app_.add_subcommand("invariance", "Invariance checks");
    inv->require_subcommand(1);
    add_invariance_options(command(inv, "check", "Check phi(g x) = phi(x)"), true);
  }

  void add_action_options(Command& cmd) {
    req(cmd, cmd.app->add_option("--action", act_.action, "Action JSON"));
    cmd.app->add_option("--points", act_.points, "CSV of points overriding the action file's points");
    cmd.app->add_option("--tol", act_.tol, "Tolerance")->capture_default_str();
    cmd.app->add_option("--out", act_.out, "Report path (stdout when omitted)");
  }

  void add_invariance_options(Command& cmd, bool /*alias*/) {
    add_action_options(cmd);
    req(cmd, cmd.app->add_option("--phi", act_.phi, "Builtin map name or VAE checkpoint"));
    cmd.run = [this] {
      const auto setup = load_action(act_.action, act_.points);
      const auto phi = load_phi(act_.phi, setup.action.dim);
      const auto elements = setup.action.group.elements();
      const auto laws = ck::check_action_laws(setup.action, setup.points, elements, act_.tol);
      const auto report = ck::check_invariance(setup.action, phi, setup.points, elements, act_.tol);
      json j = ck::io::check_report_to_json(report);
      j["phi"] = phi.name;
      j["action"] = setup.action.name;
      j["action_laws"] = ck::io::check_report_to_json(laws);
      if (!laws.passed) j["verdict"] = "fail";
      return emit_report(j, act_.out);
    };
  }

  void add_equivariance(Command& cmd) {
    add_action_options(cmd);
    req(cmd, cmd.app->add_option("--phi", act_.phi, "Builtin map name or VAE checkpoint"));
    cmd.app->add_option("--psi", act_.psi, "identity, same-as-action or angle-shift")->capture_default_str();
    cmd.run = [this] {
      const auto setup = load_action(act_.action, act_.points);
      const auto phi = load_phi(act_.phi, setup.action.dim);
      const auto psi = ck::builtin_psi(act_.psi, setup.action, phi.output_dim);
      const auto elements = setup.action.group.elements();
      const auto report = ck::check_equivariance(setup.action, phi, psi, setup.points, elements, act_.tol);
      json j = ck::io::check_report_to_json(report);
      j["phi"] = phi.name;
      j["psi"] = psi.name;
      j["action"] = setup.action.name;
      return emit_report(j, act_.out);
    };
  }

  void add_disentangle(Command& cmd) {
    add_action_options(cmd);
    req(cmd, cmd.app->add_option("--phi", act_.phi, "Builtin map name or VAE checkpoint"));
    cmd.app->add_option("--blocks", act_.blocks, "Number of equal-width blocks (default: one per group factor)");
    cmd.run = [this] {
      const auto setup = load_action(act_.action, act_.points);
      const auto phi = load_phi(act_.phi, setup.action.dim);
      std::size_t blocks = act_.blocks;
      if (blocks == 0) {
        const auto& g = setup.action.group;
        blocks = g.kind() == ck::GroupSpec::Kind::product ? g.factors().size() : 1;
      }
      if (phi.output_dim % blocks != 0) throw ck::InputError("representation dimension is not divisible by --blocks");
      const auto decomposition = ck::ProductDecomposition::equal_blocks(blocks, phi.output_dim / blocks);
      const auto report = ck::check_disentangled(setup.action, phi, decomposition, setup.points, act_.tol);
      json j = ck::io::disentangle_report_to_json(report);
      j["phi"] = phi.name;
      j["action"] = setup.action.name;
      return emit_report(j, act_.out);
    };
  }

  int verify_lattice() {
    const auto file = ck::io::lattice_from_json(read_json_file(vlat_.lattice));
    const auto& lattice = file.lattice;
    const auto laws = ck::check_lattice_laws(lattice);
    json problems = json::array();
    for (const auto& v : laws.violations) problems.push_back(v);
    bool passed = laws.passed;
    const bool covers_ok = file.stored_covers == lattice.covers();
    if (!covers_ok) {
      passed = false;
      problems.push_back("stored covers differ from the Hasse diagram of the concepts");
    }
    json j{{"concepts", lattice.size()}, {"height", lattice.height()}, {"pairs_checked", laws.pairs_checked},
           {"violation_count", laws.violation_count}, {"covers_match", covers_ok}};
    if (!vlat_.context.empty()) {
      auto in = open_input(vlat_.context);
      const ck::Context ctx = ck::io::read_context_csv(in);
      if (ctx.objects() != file.objects || ctx.attributes() != file.attributes) {
        throw ck::InputError("context and lattice name different objects or attributes");
      }
      std::size_t not_closed = 0;
      for (std::size_t i = 0; i < lattice.size(); ++i) {
        const auto& c = lattice.concept_at(i);
        if (ck::derive_intent(ctx, c.extent) != c.intent || ck::derive_extent(ctx, c.intent) != c.extent) {
          ++not_closed;
          problems.push_back("concept " + std::to_string(i) + " is not closed in the context");
        }
      }
      const std::size_t expected = ck::enumerate_concepts(ctx).size();
      j["expected_concepts"] = expected;
      if (not_closed > 0 || expected != lattice.size()) passed = false;
    }
    j["verdict"] = passed ? "pass" : "fail";
    j["violations"] = std::move(problems);
    return emit_report(j, vlat_.out);
  }

  void add_model_options(Command& cmd) {
    cmd.app->add_option("--label-column", cls_.label_column, "Label column of the training CSV")->capture_default_str();
    cmd.app->add_option("--mode", cls_.mode, "prototype or exemplar")->capture_default_str();
    cmd.app->add_option("--k", cls_.k, "Neighbours for exemplar mode")->capture_default_str();
    cmd.app->add_option("--metric", cls_.metric, "weighted-l1, weighted-euclidean or cosine-distance")
        ->capture_default_str();
    cmd.app->add_option("--weights", cls_.weights, "Comma-separated metric weights (default all 1)")->delimiter(',');
  }

  void add_classify() {
    auto& cmd = command(&app_, "classify", "Classify points by prototype or exemplar similarity");
    cmd.app->add_option("--train", cls_.train, "Labelled training CSV");
    cmd.app->add_option("--model", cls_.model, "Saved model JSON, instead of --train");
    req(cmd, cmd.app->add_option("--input", cls_.input, "Points to classify"));
    cmd.app->add_option("--input-label-column", cls_.input_label_column, "Label column to skip in --input");
    req(cmd, cmd.app->add_option("--out", cls_.out, "Output CSV: features, label, typicality"));
    cmd.app->add_option("--model-out", cls_.model_out, "Write the fitted model JSON");
    add_model_options(cmd);
    cmd.run = [this] { return classify(); };
  }

  int classify() {
    if (cls_.train.empty() == cls_.model.empty()) throw ck::InputError("give exactly one of --train and --model");
    if (cls_.mode != "prototype" && cls_.mode != "exemplar") throw ck::InputError("--mode must be prototype or exemplar");
    check_output(cls_.out);
    if (!cls_.model_out.empty()) check_output(cls_.model_out);
    const auto input = read_points(cls_.input, cls_.input_label_column);

    std::optional<ck::PrototypeModel> proto;
    std::optional<ck::ExemplarModel> exemplar;
    if (!cls_.model.empty()) {
      const json j = read_json_file(cls_.model);
      if (j.value("model", "") == "exemplar") {
        exemplar = ck::io::exemplar_from_json(j);
      } else {
        proto = ck::io::prototype_from_json(j);
      }
    } else {
      const auto train = read_points(cls_.train, cls_.label_column);
      const auto dim = static_cast<std::size_t>(train.values.cols());
      ck::WeightedMetric metric = ck::WeightedMetric::uniform(ck::metric_kind_from_string(cls_.metric), dim);
      if (!cls_.weights.empty()) metric.weights = Eigen::Map<const Eigen::VectorXd>(cls_.weights.data(), cls_.weights.size());
      const auto points = ck::io::rows_of(train.values);
      if (cls_.mode == "prototype") {
        proto = ck::PrototypeModel::fit(points, train.labels, metric);
      } else {
        exemplar = ck::ExemplarModel::fit(points, train.labels, metric, cls_.k);
      }
    }
    const std::size_t dim = proto ? proto->dim() : exemplar->dim();
    if (static_cast<std::size_t>(input.values.cols()) != dim) {
      throw ck::InputError("input has " + std::to_string(input.values.cols()) + " features, model expects " +
                           std::to_string(dim));
    }
    std::vector<std::vector<std::string>> rows;
    for (const auto& x : ck::io::rows_of(input.values)) {
      const auto c = proto ? ck::classify_prototype(*proto, x) : ck::classify_exemplar(*exemplar, x);
      auto cells = numeric_cells(x);
      cells.push_back(c.label);
      cells.push_back(ck::io::format_double(c.typicality));
      rows.push_back(std::move(cells));
    }
    auto header = input.columns;
    header.push_back("label");
    header.push_back("typicality");
    write_atomic(cls_.out, [&](std::ostream& out) { write_csv_rows(out, header, rows); });
    if (!cls_.model_out.empty()) {
      write_json(cls_.model_out, proto ? ck::io::prototype_to_json(*proto) : ck::io::exemplar_to_json(*exemplar));
    }
    std::cout << rows.size() << " points classified\n";
    return kOk;
  }

  void add_cluster() {
    auto& cmd = command(&app_, "cluster", "k-means clustering of a points CSV");
    req(cmd, cmd.app->add_option("--input", clu_.input, "Points CSV"));
    cmd.app->add_option("--label-column", clu_.label_column, "Label column to skip");
    req(cmd, cmd.app->add_option("--k", clu_.k, "Number of clusters"));
    cmd.app->add_option("--max-iter", clu_.max_iter)->capture_default_str();
    cmd.app->add_option("--seed", clu_.seed)->capture_default_str();
    req(cmd, cmd.app->add_option("--out", clu_.out, "Output CSV: features and cluster index"));
    cmd.app->add_option("--centroids", clu_.centroids, "Write centroids CSV");
    cmd.app->add_option("--loss", clu_.loss, "Write within-cluster sum of squares per iteration");
    cmd.run = [this] {
      check_output(clu_.out);
      const auto table = read_points(clu_.input, clu_.label_column);
      const auto points = ck::io::rows_of(table.values);
      const auto result = ck::cluster_kmeans(points, clu_.k, clu_.seed, clu_.max_iter);
      std::vector<std::string> labels;
      for (auto a : result.assignments) labels.push_back(std::to_string(a));
      write_atomic(clu_.out, [&](std::ostream& out) {
        ck::io::write_points_csv(out, table.columns, table.values, labels, "cluster");
      });
      if (!clu_.centroids.empty()) {
        Eigen::MatrixXd c(static_cast<Eigen::Index>(result.centroids.size()), table.values.cols());
        for (std::size_t i = 0; i < result.centroids.size(); ++i) c.row(static_cast<Eigen::Index>(i)) = result.centroids[i];
        write_atomic(clu_.centroids, [&](std::ostream& out) { ck::io::write_points_csv(out, table.columns, c); });
      }
      if (!clu_.loss.empty()) {
        write_atomic(clu_.loss, [&](std::ostream& out) { ck::io::write_loss_csv(out, result.wcss_history); });
      }
      std::cout << result.iterations << " iterations, " << (result.converged ? "converged" : "not converged")
                << ", wcss " << ck::io::format_double(result.wcss_history.back()) << '\n';
      return kOk;
    };
  }

  void add_train_outputs(Command& cmd, const std::string& what) {
    req(cmd, cmd.app->add_option("--out", train_.out, what));
    cmd.app->add_option("--loss", train_.loss, "Loss history CSV (default: <out>.loss.csv)");
  }

  std::string loss_path() const { return train_.loss.empty() ? default_loss_path(train_.out) : train_.loss; }

  void add_train() {
    CLI::App* train = app_.add_subcommand("train", "Train an embedding or model");
    train->require_subcommand(1);

    auto& sg = command(train, "sgns", "Skip-gram with negative sampling on a corpus");
    req(sg, sg.app->add_option("--corpus", train_.input, "Text corpus, one sentence per line"));
    add_train_outputs(sg, "Vectors TSV");
    sg.app->add_option("--dim", sgns_.dim)->capture_default_str();
    sg.app->add_option("--window", sgns_.window)->capture_default_str();
    sg.app->add_option("--negatives", sgns_.negatives)->capture_default_str();
    sg.app->add_option("--epochs", sgns_.epochs)->capture_default_str();
    sg.app->add_option("--lr", sgns_.lr)->capture_default_str();
    sg.app->add_option("--seed", sgns_.seed)->capture_default_str();
    sg.run = [this] {
      check_output(train_.out);
      check_output(loss_path());
      auto in = open_input(train_.input);
      const auto corpus = ck::io::read_corpus(in);
      const auto result = ck::train_sgns(corpus, sgns_);
      write_atomic(train_.out, [&](std::ostream& out) { ck::io::write_embedding_tsv(out, result.space); });
      write_atomic(loss_path(), [&](std::ostream& out) { ck::io::write_loss_csv(out, result.loss_history); });
      std::cout << result.space.vocab.size() << " tokens, final loss "
                << ck::io::format_double(result.loss_history.empty() ? 0.0 : result.loss_history.back()) << '\n';
      return kOk;
    };

    auto& pc = command(train, "poincare", "Poincare-ball embedding of a taxonomy");
    req(pc, pc.app->add_option("--taxonomy", train_.input, "child,parent CSV"));
    add_train_outputs(pc, "Points TSV");
    pc.app->add_option("--dim", poincare_.dim)->capture_default_str();
    pc.app->add_option("--epochs", poincare_.epochs)->capture_default_str();
    pc.app->add_option("--lr", poincare_.lr)->capture_default_str();
    pc.app->add_option("--negatives", poincare_.negatives)->capture_default_str();
    pc.app->add_option("--burn-in", poincare_.burn_in)->capture_default_str();
    pc.app->add_option("--seed", poincare_.seed)->capture_default_str();
    pc.run = [this] {
      check_output(train_.out);
      check_output(loss_path());
      const auto taxonomy = read_taxonomy(train_.input);
      const auto result = ck::train_poincare(taxonomy, poincare_);
      write_atomic(train_.out, [&](std::ostream& out) { ck::io::write_hyperbolic_tsv(out, result.embedding); });
      write_atomic(loss_path(), [&](std::ostream& out) { ck::io::write_loss_csv(out, result.loss_history); });
      std::cout << "mean parent rank " << ck::io::format_double(ck::mean_parent_rank(result.embedding)) << '\n';
      return kOk;
    };

    auto& bx = command(train, "boxes", "Box embedding of a taxonomy");
    req(bx, bx.app->add_option("--taxonomy", train_.input, "child,parent CSV"));
    add_train_outputs(bx, "Boxes TSV");
    bx.app->add_option("--context-out", train_.context_out, "Write the leaf x node containment context CSV");
    bx.app->add_option("--dim", boxes_.dim)->capture_default_str();
    bx.app->add_option("--epochs", boxes_.epochs)->capture_default_str();
    bx.app->add_option("--lr", boxes_.lr)->capture_default_str();
    bx.app->add_option("--margin", boxes_.margin)->capture_default_str();
    bx.app->add_option("--restarts", boxes_.restarts)->capture_default_str();
    bx.app->add_option("--seed", boxes_.seed)->capture_default_str();
    bx.run = [this] {
      check_output(train_.out);
      check_output(loss_path());
      if (!train_.context_out.empty()) check_output(train_.context_out);
      const auto taxonomy = read_taxonomy(train_.input);
      const auto result = ck::fit_boxes(taxonomy, boxes_);
      write_atomic(train_.out, [&](std::ostream& out) { ck::io::write_boxes_tsv(out, result.embedding); });
      write_atomic(loss_path(), [&](std::ostream& out) { ck::io::write_loss_csv(out, result.loss_history); });
      if (!train_.context_out.empty()) {
        const auto ctx = ck::containment_context(result.embedding);
        write_atomic(train_.context_out, [&](std::ostream& out) { ck::io::write_context_csv(out, ctx); });
      }
      std::cout << "containment accuracy " << ck::io::format_double(ck::containment_accuracy(result.embedding))
                << '\n';
      return kOk;
    };

    add_vae_train(command(train, "vae", "Variational autoencoder on a points CSV"));
  }

  void add_vae_train(Command& cmd) {
    req(cmd, cmd.app->add_option("--data", train_.input, "Points CSV"));
    cmd.app->add_option("--label-column", train_.label_column, "Label column to skip");
    add_train_outputs(cmd, "Checkpoint JSON");
    cmd.app->add_option("--latent-dim", vae_shape_.latent_dim)->capture_default_str();
    cmd.app->add_option("--encoder-hidden", vae_shape_.encoder_hidden)->capture_default_str();
    cmd.app->add_option("--decoder-hidden", vae_shape_.decoder_hidden)->capture_default_str();
    cmd.app->add_option("--epochs", vae_cfg_.epochs)->capture_default_str();
    cmd.app->add_option("--lr", vae_cfg_.lr)->capture_default_str();
    cmd.app->add_option("--beta", vae_cfg_.beta)->capture_default_str();
    cmd.app->add_option("--batch-size", vae_cfg_.batch_size)->capture_default_str();
    cmd.app->add_option("--seed", vae_cfg_.seed)->capture_default_str();
    cmd.run = [this] {
      check_output(train_.out);
      check_output(loss_path());
      const auto table = read_points(train_.input, train_.label_column);
      ck::VaeShape shape = vae_shape_;
      shape.input_dim = static_cast<std::size_t>(table.values.cols());
      auto result = ck::vae_train(ck::VaeModel::init(shape, vae_cfg_.seed), table.values, vae_cfg_);
      write_json(train_.out, ck::io::vae_to_json(result.model));
      write_atomic(loss_path(), [&](std::ostream& out) { ck::io::write_loss_csv(out, result.loss_history); });
      if (!result.loss_history.empty()) {
        std::cout << "loss " << ck::io::format_double(result.loss_history.front()) << " -> "
                  << ck::io::format_double(result.loss_history.back()) << '\n';
      } else {
        std::cout << "no epochs run\n";
      }
      return kOk;
    };
  }

  void add_vae() {
    CLI::App* vae = app_.add_subcommand("vae", "Variational autoencoder pipelines");
    vae->require_subcommand(1);
    add_vae_train(command(vae, "train", "Train a VAE on a points CSV"));

    auto& ip = command(vae, "interpolate", "Decode a straight latent path between two data points");
    req(ip, ip.app->add_option("--model", interp_.model, "Checkpoint JSON"));
    req(ip, ip.app->add_option("--data", interp_.data, "Points CSV"));
    ip.app->add_option("--label-column", interp_.label_column, "Label column to skip");
    req(ip, ip.app->add_option("--from", interp_.from, "Row index of the start point"));
    req(ip, ip.app->add_option("--to", interp_.to, "Row index of the end point"));
    ip.app->add_option("--steps", interp_.steps)->capture_default_str();
    req(ip, ip.app->add_option("--out", interp_.out, "Decoded path CSV"));
    ip.run = [this] {
      check_output(interp_.out);
      const auto model = ck::io::vae_from_json(read_json_file(interp_.model));
      const auto table = read_points(interp_.data, interp_.label_column);
      const auto rows = static_cast<std::size_t>(table.values.rows());
      if (interp_.from >= rows || interp_.to >= rows) throw ck::InputError("--from/--to out of range");
      if (static_cast<std::size_t>(table.values.cols()) != model.shape.input_dim) {
        throw ck::InputError("data dimension does not match the model");
      }
      const Eigen::VectorXd a = table.values.row(static_cast<Eigen::Index>(interp_.from)).transpose();
      const Eigen::VectorXd b = table.values.row(static_cast<Eigen::Index>(interp_.to)).transpose();
      const auto path = ck::latent_interpolate(model, a, b, interp_.steps);
      write_atomic(interp_.out, [&](std::ostream& out) { ck::io::write_points_csv(out, table.columns, path); });
      double max_step = 0.0;
      for (Eigen::Index i = 1; i < path.rows(); ++i) max_step = std::max(max_step, (path.row(i) - path.row(i - 1)).norm());
      std::cout << path.rows() << " steps, max step " << ck::io::format_double(max_step) << '\n';
      return kOk;
    };
  }

  void print_scored(const std::vector<ck::ScoredToken>& ranked) {
    std::vector<std::vector<std::string>> rows;
    for (const auto& s : ranked) rows.push_back({s.token, ck::io::format_double(s.score)});
    if (vec_.out.empty()) {
      write_csv_rows(std::cout, {"token", "score"}, rows);
    } else {
      write_atomic(vec_.out, [&](std::ostream& out) { write_csv_rows(out, {"token", "score"}, rows); });
    }
  }

  void add_analogy() {
    auto& cmd = command(&app_, "analogy", "Tokens closest to b - a + c");
    req(cmd, cmd.app->add_option("--vectors", vec_.vectors, "Vectors TSV"));
    req(cmd, cmd.app->add_option("--a", vec_.a));
    req(cmd, cmd.app->add_option("--b", vec_.b));
    req(cmd, cmd.app->add_option("--c", vec_.c));
    cmd.app->add_option("--top", vec_.top)->capture_default_str();
    cmd.app->add_option("--out", vec_.out, "CSV path (stdout when omitted)");
    cmd.run = [this] {
      const auto space = read_vectors(vec_.vectors);
      print_scored(ck::analogy(space, vec_.a, vec_.b, vec_.c, vec_.top));
      return kOk;
    };
  }

  void add_logic() {
    CLI::App* logic = app_.add_subcommand("logic", "Vector negation and disjunction");
    logic->require_subcommand(1);

    auto& nt = command(logic, "not", "Tokens closest to a with the span of the --b tokens projected out");
    req(nt, nt.app->add_option("--vectors", vec_.vectors, "Vectors TSV"));
    req(nt, nt.app->add_option("--a", vec_.a));
    req(nt, nt.app->add_option("--b", vec_.terms, "Token to negate; repeat for several"));
    nt.app->add_option("--top", vec_.top)->capture_default_str();
    nt.app->add_option("--out", vec_.out, "CSV path (stdout when omitted)");
    nt.run = [this] {
      const auto space = read_vectors(vec_.vectors);
      std::vector<Eigen::VectorXd> negated;
      for (const auto& t : vec_.terms) negated.push_back(space.vector(t));
      const auto result = ck::vector_not(space.vector(vec_.a), ck::vector_or(negated));
      std::vector<std::string> exclude = vec_.terms;
      exclude.push_back(vec_.a);
      print_scored(ck::nearest(space, result, vec_.top, exclude));
      return kOk;
    };

    auto& orr = command(logic, "or", "Tokens ranked by how much of them lies in the span of the --term tokens");
    req(orr, orr.app->add_option("--vectors", vec_.vectors, "Vectors TSV"));
    req(orr, orr.app->add_option("--term", vec_.terms, "Token in the disjunction; repeat for several"));
    orr.app->add_option("--top", vec_.top)->capture_default_str();
    orr.app->add_option("--out", vec_.out, "CSV path (stdout when omitted)");
    orr.run = [this] {
      const auto space = read_vectors(vec_.vectors);
      std::vector<Eigen::VectorXd> terms;
      for (const auto& t : vec_.terms) terms.push_back(space.vector(t));
      const auto span = ck::vector_or(terms);
      std::vector<ck::ScoredToken> ranked;
      for (std::size_t i = 0; i < space.vocab.size(); ++i) {
        const auto& token = space.vocab.token(i);
        if (std::find(vec_.terms.begin(), vec_.terms.end(), token) != vec_.terms.end()) continue;
        const Eigen::VectorXd v = space.vectors.row(static_cast<Eigen::Index>(i)).transpose();
        const double n = v.norm();
        ranked.push_back({token, n > 0.0 ? span.project(v).norm() / n : 0.0});
      }
      std::stable_sort(ranked.begin(), ranked.end(), [](const auto& x, const auto& y) { return x.score > y.score; });
      if (ranked.size() > vec_.top) ranked.resize(vec_.top);
      print_scored(ranked);
      return kOk;
    };
  }

  void add_gen() {
    CLI::App* gen = app_.add_subcommand("gen", "Generate synthetic data");
    gen->require_subcommand(1);

    auto& cx = command(gen, "context", "Random context CSV");
    cx.app->add_option("--objects", gen_.objects)->capture_default_str();
    cx.app->add_option("--attributes", gen_.attributes)->capture_default_str();
    cx.app->add_option("--density", gen_.density)->capture_default_str();
    cx.app->add_option("--seed", gen_.seed)->capture_default_str();
    req(cx, cx.app->add_option("--out", gen_.out));
    cx.run = [this] {
      check_output(gen_.out);
      const auto ctx = ck::gen_context(gen_.objects, gen_.attributes, gen_.density, gen_.seed);
      write_atomic(gen_.out, [&](std::ostream& out) { ck::io::write_context_csv(out, ctx); });
      return kOk;
    };

    auto& tr = command(gen, "tree", "Complete tree as child,parent CSV");
    tr.app->add_option("--depth", gen_.depth)->capture_default_str();
    tr.app->add_option("--branching", gen_.branching)->capture_default_str();
    req(tr, tr.app->add_option("--out", gen_.out));
    tr.run = [this] {
      check_output(gen_.out);
      const auto tree = ck::gen_tree(gen_.depth, gen_.branching);
      write_atomic(gen_.out, [&](std::ostream& out) { ck::io::write_taxonomy_csv(out, tree); });
      return kOk;
    };

    auto& co = command(gen, "corpus", "Planted-topic text corpus");
    co.app->add_option("--topics", gen_.topics)->capture_default_str();
    co.app->add_option("--vocab", gen_.vocab, "Tokens per topic")->capture_default_str();
    co.app->add_option("--sentences", gen_.sentences)->capture_default_str();
    co.app->add_option("--sentence-length", gen_.sentence_length)->capture_default_str();
    co.app->add_option("--seed", gen_.seed)->capture_default_str();
    req(co, co.app->add_option("--out", gen_.out));
    co.run = [this] {
      check_output(gen_.out);
      const auto corpus = ck::gen_topic_corpus(gen_.topics, gen_.vocab, gen_.sentences, gen_.seed, gen_.sentence_length);
      write_atomic(gen_.out, [&](std::ostream& out) { ck::io::write_corpus(out, corpus); });
      return kOk;
    };

    auto& bl = command(gen, "blobs", "Gaussian blobs with labels");
    bl.app->add_option("--centers", gen_.centers, "Centers as x,y;x,y;...")->capture_default_str();
    bl.app->add_option("--per-center", gen_.per_center)->capture_default_str();
    bl.app->add_option("--spread", gen_.spread)->capture_default_str();
    bl.app->add_option("--seed", gen_.seed)->capture_default_str();
    req(bl, bl.app->add_option("--out", gen_.out));
    bl.run = [this] {
      check_output(gen_.out);
      const auto centers = parse_centers(gen_.centers);
      const auto data = ck::gen_blobs(centers, gen_.per_center, gen_.spread, gen_.seed);
      write_atomic(gen_.out, [&](std::ostream& out) {
        ck::io::write_points_csv(out, axis_names(centers.cols()), data.points, data.labels);
      });
      return kOk;
    };

    auto& mo = command(gen, "moons", "Two interleaved half circles");
    mo.app->add_option("--points", gen_.points)->capture_default_str();
    mo.app->add_option("--noise", gen_.noise)->capture_default_str();
    mo.app->add_option("--seed", gen_.seed)->capture_default_str();
    req(mo, mo.app->add_option("--out", gen_.out));
    mo.run = [this] {
      check_output(gen_.out);
      const auto data = ck::gen_two_moons(gen_.points, gen_.noise, gen_.seed);
      write_atomic(gen_.out, [&](std::ostream& out) {
        ck::io::write_points_csv(out, axis_names(2), data.points, data.labels);
      });
      return kOk;
    };

    auto& to = command(gen, "torus", "Points of the discrete torus with the cyclic x cyclic action");
    to.app->add_option("--n1", gen_.n1)->capture_default_str();
    to.app->add_option("--n2", gen_.n2)->capture_default_str();
    to.app->add_option("--samples", gen_.samples, "0 for the whole grid")->capture_default_str();
    to.app->add_option("--seed", gen_.seed)->capture_default_str();
    req(to, to.app->add_option("--out", gen_.out, "Points CSV"));
    to.app->add_option("--action-out", gen_.action_out, "Write the matching action JSON");
    to.run = [this] {
      check_output(gen_.out);
      if (!gen_.action_out.empty()) check_output(gen_.action_out);
      const auto torus = ck::gen_torus_orbits(gen_.n1, gen_.n2, gen_.samples, gen_.seed);
      std::vector<std::string> labels;
      for (const auto& k : torus.labels) {
        labels.push_back(std::to_string(static_cast<long>(k[0])) + "-" + std::to_string(static_cast<long>(k[1])));
      }
      write_atomic(gen_.out, [&](std::ostream& out) {
        ck::io::write_points_csv(out, {"cos1", "sin1", "cos2", "sin2"}, torus.points, labels, "cell");
      });
      if (!gen_.action_out.empty()) {
        json points = json::array();
        for (Eigen::Index r = 0; r < torus.points.rows(); ++r) {
          json p = json::array();
          for (Eigen::Index c = 0; c < torus.points.cols(); ++c) p.push_back(torus.points(r, c));
          points.push_back(std::move(p));
        }
        write_json(gen_.action_out, {{"group", ck::io::group_to_json(torus.group)},
                                     {"action", "block-rotation"},
                                     {"points", std::move(points)}});
      }
      return kOk;
    };
  }

  static std::vector<std::string> axis_names(Eigen::Index n) {
    std::vector<std::string> names;
    for (Eigen::Index i = 0; i < n; ++i) names.push_back("x" + std::to_string(i));
    return names;
  }

  static Eigen::MatrixXd parse_centers(const std::string& text) {
    std::vector<std::vector<double>> rows;
    std::stringstream all(text);
    std::string row;
    while (std::getline(all, row, ';')) {
      std::vector<double> coords;
      std::stringstream cells(row);
      std::string cell;
      while (std::getline(cells, cell, ',')) coords.push_back(ck::io::parse_double(cell, 1));
      if (!rows.empty() && coords.size() != rows.front().size()) throw ck::InputError("centers differ in dimension");
      rows.push_back(std::move(coords));
    }
    if (rows.empty() || rows.front().empty()) throw ck::InputError("no centers given");
    Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
    for (std::size_t r = 0; r < rows.size(); ++r) {
      for (std::size_t c = 0; c < rows[r].size(); ++c) {
        m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
      }
    }
    return m;
  }

  CLI::App app_;
  std::string config_path_;
  std::map<CLI::App*, Command> commands_;

  struct {
    std::string input;
    std::string out_dir = ".";
  } fca_;
  struct {
    std::string lattice, context, out;
  } vlat_;
  struct {
    std::string group, out;
    ck::GroupCheckOptions options;
  } vgrp_;
  struct {
    std::string action, points, phi, psi = "same-as-action", out;
    double tol = 1e-9;
    std::size_t blocks = 0;
  } act_;
  struct {
    std::string train, model, input, input_label_column, out, model_out;
    std::string label_column = "label";
    std::string mode = "prototype";
    std::size_t k = 1;
    std::string metric = "weighted-euclidean";
    std::vector<double> weights;
  } cls_;
  struct {
    std::string input, label_column, out, centroids, loss;
    std::size_t k = 2;
    std::size_t max_iter = 100;
    std::uint64_t seed = 0;
  } clu_;
  struct {
    std::string input, out, loss, context_out, label_column;
  } train_;
  ck::SgnsConfig sgns_;
  ck::PoincareConfig poincare_;
  ck::BoxConfig boxes_;
  ck::VaeShape vae_shape_;
  ck::VaeTrainConfig vae_cfg_;
  struct {
    std::string model, data, label_column, out;
    std::size_t from = 0, to = 0, steps = 16;
  } interp_;
  struct {
    std::string vectors, a, b, c, out;
    std::vector<std::string> terms;
    std::size_t top = 10;
  } vec_;
  struct {
    std::size_t objects = 10, attributes = 10;
    double density = 0.3;
    std::size_t depth = 3, branching = 2;
    std::size_t topics = 2, vocab = 20, sentences = 2000, sentence_length = 10;
    std::string centers = "0,0;6,6";
    std::size_t per_center = 50;
    double spread = 0.5;
    std::size_t points = 200;
    double noise = 0.05;
    std::size_t n1 = 8, n2 = 8, samples = 0;
    std::uint64_t seed = 0;
    std::string out, action_out;
  } gen_;
};

}  // namespace

int main(int argc, char** argv) {
  Cli cli;
  return cli.main(argc, argv);
}
