#pragma once

// File formats shared by the CLI and the Python bindings.
//
//   context     CSV, header row = attribute names, first column = object names, cells 1/0
//   lattice     DOT (Hasse covers, label "extent|intent") and JSON
//   points      CSV with a header row, optional label column
//   corpus      whitespace-tokenized text, one sentence per line
//   taxonomy    CSV child,parent (header optional)
//   embeddings  TSV: name, then coordinates
//   models      JSON (prototype/exemplar models, VAE checkpoints, group specs)
//
// Readers throw ParseError with the offending line.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "json.hpp"

#include "conceptkit/boxes.hpp"
#include "conceptkit/embedding.hpp"
#include "conceptkit/group.hpp"
#include "conceptkit/hyperbolic.hpp"
#include "conceptkit/invariance.hpp"
#include "conceptkit/lattice.hpp"
#include "conceptkit/similarity.hpp"
#include "conceptkit/taxonomy.hpp"
#include "conceptkit/vae.hpp"

namespace conceptkit::io {

using nlohmann::json;

/// Shortest decimal text that reads back to the same double.
std::string format_double(double value);
double parse_double(const std::string& text, std::size_t line);

Context read_context_csv(std::istream& in);
void write_context_csv(std::ostream& out, const Context& ctx);

void write_lattice_dot(std::ostream& out, const Context& ctx, const ConceptLattice& lattice);
json lattice_to_json(const Context& ctx, const ConceptLattice& lattice);

struct LatticeFile {
  std::vector<std::string> objects;
  std::vector<std::string> attributes;
  ConceptLattice lattice;
  /// Cover pairs as stored in the file; compare with lattice.covers() to
  /// detect a tampered file.
  std::vector<std::pair<std::size_t, std::size_t>> stored_covers;
};
LatticeFile lattice_from_json(const json& j);

struct PointTable {
  std::vector<std::string> columns;  // feature columns only
  Eigen::MatrixXd values;            // one row per point
  std::vector<std::string> labels;   // empty without a label column
};
PointTable read_points_csv(std::istream& in, const std::optional<std::string>& label_column = std::nullopt);
void write_points_csv(std::ostream& out, const std::vector<std::string>& columns, const Eigen::MatrixXd& values,
                      const std::vector<std::string>& labels = {}, const std::string& label_column = "label");
std::vector<FeatureVector> rows_of(const Eigen::MatrixXd& m);

json metric_to_json(const WeightedMetric& metric);
WeightedMetric metric_from_json(const json& j);
json prototype_to_json(const PrototypeModel& model);
PrototypeModel prototype_from_json(const json& j);
json exemplar_to_json(const ExemplarModel& model);
ExemplarModel exemplar_from_json(const json& j);

Corpus read_corpus(std::istream& in);
void write_corpus(std::ostream& out, const Corpus& corpus);

Taxonomy read_taxonomy_csv(std::istream& in);
void write_taxonomy_csv(std::ostream& out, const Taxonomy& taxonomy);

void write_embedding_tsv(std::ostream& out, const EmbeddingSpace& space);
/// Counts are not stored in the dump; every token reads back with count 1.
EmbeddingSpace read_embedding_tsv(std::istream& in);

void write_hyperbolic_tsv(std::ostream& out, const HyperbolicEmbedding& embedding);
HyperbolicEmbedding read_hyperbolic_tsv(std::istream& in, const Taxonomy& taxonomy);

/// name, lo_1..lo_d, hi_1..hi_d
void write_boxes_tsv(std::ostream& out, const BoxEmbedding& embedding);
BoxEmbedding read_boxes_tsv(std::istream& in, const Taxonomy& taxonomy);

json vae_to_json(const VaeModel& model);
VaeModel vae_from_json(const json& j);

void write_loss_csv(std::ostream& out, const std::vector<double>& history);

/// {"kind": "cyclic", "n": 4} | {"kind": "table", "table": [[...]]} |
/// {"kind": "rotation", "angles": [...]} | {"kind": "rotation", "samples": N, "seed": s} |
/// {"kind": "product", "factors": [...]}
GroupSpec group_from_json(const json& j);
json group_to_json(const GroupSpec& group);

json group_report_to_json(const GroupReport& report);
json check_report_to_json(const CheckReport& report);
json disentangle_report_to_json(const DisentangleReport& report);
json lie_report_to_json(const LieReport& report);

}  // namespace conceptkit::io
