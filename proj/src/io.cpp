#include "conceptkit/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <set>
#include <sstream>

#include "conceptkit/error.hpp"
#include "conceptkit/rng.hpp"

namespace conceptkit::io {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, sep)) out.push_back(trim(cell));
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

bool blank(const std::string& line) { return trim(line).empty(); }

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

std::string join_names(const BitSet& set, const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t i : to_indices(set)) {
    if (!out.empty()) out += ',';
    out += names[i];
  }
  return out;
}

json matrix_to_json(const Eigen::MatrixXd& m) {
  json data = json::array();
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) data.push_back(m(i, j));
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

Eigen::MatrixXd matrix_from_json(const json& j, Eigen::Index rows, Eigen::Index cols, const std::string& what) {
  if (j.at("rows").get<Eigen::Index>() != rows || j.at("cols").get<Eigen::Index>() != cols) {
    throw InputError("checkpoint parameter '" + what + "' has the wrong shape");
  }
  const auto& data = j.at("data");
  if (static_cast<Eigen::Index>(data.size()) != rows * cols) throw InputError("checkpoint parameter '" + what + "' has the wrong size");
  Eigen::MatrixXd m(rows, cols);
  std::size_t k = 0;
  for (Eigen::Index c = 0; c < cols; ++c) {
    for (Eigen::Index r = 0; r < rows; ++r) m(r, c) = data[k++].get<double>();
  }
  return m;
}

json vector_to_json(const Eigen::VectorXd& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

Eigen::VectorXd vector_from_json(const json& j) {
  const auto values = j.get<std::vector<double>>();
  return Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
}

template <typename Fn>
auto wrap_json_errors(Fn&& fn) {
  try {
    return fn();
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed JSON document: ") + e.what());
  }
}

// Reads `name<TAB>v1<TAB>v2...` lines. Blank lines are skipped.
std::vector<std::pair<std::string, std::vector<double>>> read_named_rows(std::istream& in) {
  std::vector<std::pair<std::string, std::vector<double>>> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (blank(line)) continue;
    auto cells = split(line, '\t');
    if (cells.size() < 2) throw ParseError("expected a name followed by values", lineno);
    std::vector<double> values;
    for (std::size_t i = 1; i < cells.size(); ++i) values.push_back(parse_double(cells[i], lineno));
    if (!rows.empty() && values.size() != rows.front().second.size()) {
      throw ParseError("row has " + std::to_string(values.size()) + " values, expected " +
                           std::to_string(rows.front().second.size()),
                       lineno);
    }
    rows.emplace_back(cells[0], std::move(values));
  }
  return rows;
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

double parse_double(const std::string& text, std::size_t line) {
  const std::string t = trim(text);
  double v = 0.0;
  const char* begin = t.data();
  if (!t.empty() && t.front() == '+') ++begin;
  auto [ptr, ec] = std::from_chars(begin, t.data() + t.size(), v);
  if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) throw ParseError("'" + t + "' is not a number", line);
  if (!std::isfinite(v)) throw ParseError("'" + t + "' is not finite", line);
  return v;
}

Context read_context_csv(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  std::vector<std::string> attributes;
  bool have_header = false;
  while (!have_header && std::getline(in, line)) {
    ++lineno;
    if (blank(line)) continue;
    auto cells = split(line, ',');
    attributes.assign(cells.begin() + 1, cells.end());
    for (const auto& a : attributes) {
      if (a.empty()) throw ParseError("empty attribute name in header", lineno);
    }
    have_header = true;
  }
  if (!have_header) throw ParseError("context file is empty", lineno == 0 ? 1 : lineno);

  std::vector<std::string> objects;
  std::vector<std::vector<bool>> incidence;
  std::set<std::string> seen;
  while (std::getline(in, line)) {
    ++lineno;
    if (blank(line)) continue;
    auto cells = split(line, ',');
    if (cells.size() != attributes.size() + 1) {
      throw ParseError("row has " + std::to_string(cells.size()) + " cells, header has " +
                           std::to_string(attributes.size() + 1),
                       lineno);
    }
    if (cells[0].empty()) throw ParseError("empty object name", lineno);
    if (!seen.insert(cells[0]).second) throw ParseError("duplicate object '" + cells[0] + "'", lineno);
    auto& row = incidence.emplace_back();
    for (std::size_t j = 1; j < cells.size(); ++j) {
      if (cells[j] == "1") {
        row.push_back(true);
      } else if (cells[j] == "0") {
        row.push_back(false);
      } else {
        throw ParseError("cell '" + cells[j] + "' in column " + std::to_string(j + 1) + " is not 0 or 1", lineno);
      }
    }
    objects.push_back(cells[0]);
  }
  if (objects.empty()) throw ParseError("context has a header but no object rows", lineno + 1);
  std::set<std::string> unique_attrs(attributes.begin(), attributes.end());
  if (unique_attrs.size() != attributes.size()) throw ParseError("duplicate attribute name in header", 1);
  return Context(std::move(objects), std::move(attributes), incidence);
}

void write_context_csv(std::ostream& out, const Context& ctx) {
  out << "object";
  for (const auto& a : ctx.attributes()) out << ',' << a;
  out << '\n';
  for (std::size_t o = 0; o < ctx.num_objects(); ++o) {
    out << ctx.objects()[o];
    for (std::size_t a = 0; a < ctx.num_attributes(); ++a) out << ',' << (ctx.incident(o, a) ? '1' : '0');
    out << '\n';
  }
}

void write_lattice_dot(std::ostream& out, const Context& ctx, const ConceptLattice& lattice) {
  out << "digraph lattice {\n  rankdir=BT;\n  node [shape=box];\n";
  for (std::size_t i = 0; i < lattice.size(); ++i) {
    const auto& c = lattice.concept_at(i);
    out << "  c" << i << " [label=\"" << dot_escape(join_names(c.extent, ctx.objects())) << '|'
        << dot_escape(join_names(c.intent, ctx.attributes())) << "\"];\n";
  }
  for (auto [lo, hi] : lattice.covers()) out << "  c" << lo << " -> c" << hi << ";\n";
  out << "}\n";
}

json lattice_to_json(const Context& ctx, const ConceptLattice& lattice) {
  json concepts = json::array();
  for (const auto& c : lattice.concepts()) {
    concepts.push_back({{"extent", to_indices(c.extent)}, {"intent", to_indices(c.intent)}});
  }
  json covers = json::array();
  for (auto [lo, hi] : lattice.covers()) covers.push_back({lo, hi});
  return {{"objects", ctx.objects()}, {"attributes", ctx.attributes()}, {"concepts", std::move(concepts)},
          {"covers", std::move(covers)},  {"top", lattice.top()},         {"bottom", lattice.bottom()},
          {"height", lattice.height()}};
}

LatticeFile lattice_from_json(const json& j) {
  return wrap_json_errors([&] {
    LatticeFile file;
    file.objects = j.at("objects").get<std::vector<std::string>>();
    file.attributes = j.at("attributes").get<std::vector<std::string>>();
    std::vector<FormalConcept> concepts;
    for (const auto& c : j.at("concepts")) {
      BitSet extent(file.objects.size()), intent(file.attributes.size());
      for (auto i : c.at("extent").get<std::vector<std::size_t>>()) {
        if (i >= extent.size()) throw InputError("extent index out of range in lattice file");
        extent.set(i);
      }
      for (auto i : c.at("intent").get<std::vector<std::size_t>>()) {
        if (i >= intent.size()) throw InputError("intent index out of range in lattice file");
        intent.set(i);
      }
      concepts.push_back({std::move(extent), std::move(intent)});
    }
    for (const auto& pair : j.at("covers")) file.stored_covers.emplace_back(pair.at(0).get<std::size_t>(), pair.at(1).get<std::size_t>());
    std::sort(file.stored_covers.begin(), file.stored_covers.end());
    file.lattice = build_lattice(std::move(concepts));
    return file;
  });
}

PointTable read_points_csv(std::istream& in, const std::optional<std::string>& label_column) {
  std::string line;
  std::size_t lineno = 0;
  std::vector<std::string> header;
  while (header.empty() && std::getline(in, line)) {
    ++lineno;
    if (!blank(line)) header = split(line, ',');
  }
  if (header.empty()) throw ParseError("points file is empty", 1);

  std::optional<std::size_t> label_at;
  if (label_column) {
    auto it = std::find(header.begin(), header.end(), *label_column);
    if (it == header.end()) throw ParseError("no column named '" + *label_column + "'", lineno);
    label_at = static_cast<std::size_t>(it - header.begin());
  }
  PointTable table;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (c != label_at) table.columns.push_back(header[c]);
  }
  if (table.columns.empty()) throw ParseError("points file has no feature columns", lineno);

  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    ++lineno;
    if (blank(line)) continue;
    auto cells = split(line, ',');
    if (cells.size() != header.size()) {
      throw ParseError("row has " + std::to_string(cells.size()) + " cells, header has " + std::to_string(header.size()), lineno);
    }
    auto& row = rows.emplace_back();
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (c == label_at) {
        table.labels.push_back(cells[c]);
      } else {
        row.push_back(parse_double(cells[c], lineno));
      }
    }
  }
  table.values.resize(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(table.columns.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < rows[r].size(); ++c) table.values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
  }
  return table;
}

void write_points_csv(std::ostream& out, const std::vector<std::string>& columns, const Eigen::MatrixXd& values,
                      const std::vector<std::string>& labels, const std::string& label_column) {
  if (static_cast<Eigen::Index>(columns.size()) != values.cols()) throw InputError("column names do not match the matrix");
  if (!labels.empty() && static_cast<Eigen::Index>(labels.size()) != values.rows()) throw InputError("label count does not match rows");
  for (std::size_t c = 0; c < columns.size(); ++c) out << (c ? "," : "") << columns[c];
  if (!labels.empty()) out << ',' << label_column;
  out << '\n';
  for (Eigen::Index r = 0; r < values.rows(); ++r) {
    for (Eigen::Index c = 0; c < values.cols(); ++c) out << (c ? "," : "") << format_double(values(r, c));
    if (!labels.empty()) out << ',' << labels[static_cast<std::size_t>(r)];
    out << '\n';
  }
}

std::vector<FeatureVector> rows_of(const Eigen::MatrixXd& m) {
  std::vector<FeatureVector> out;
  out.reserve(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index r = 0; r < m.rows(); ++r) out.emplace_back(m.row(r).transpose());
  return out;
}

json metric_to_json(const WeightedMetric& metric) {
  return {{"kind", to_string(metric.kind)}, {"weights", vector_to_json(metric.weights)}};
}

WeightedMetric metric_from_json(const json& j) {
  return wrap_json_errors([&] {
    return WeightedMetric{metric_kind_from_string(j.at("kind").get<std::string>()), vector_from_json(j.at("weights"))};
  });
}

json prototype_to_json(const PrototypeModel& model) {
  json protos = json::object();
  for (const auto& [label, p] : model.prototypes) protos[label] = vector_to_json(p);
  return {{"model", "prototype"}, {"metric", metric_to_json(model.metric)}, {"prototypes", std::move(protos)}};
}

PrototypeModel prototype_from_json(const json& j) {
  return wrap_json_errors([&] {
    if (j.at("model").get<std::string>() != "prototype") throw InputError("not a prototype model");
    PrototypeModel m{{}, metric_from_json(j.at("metric"))};
    for (const auto& [label, v] : j.at("prototypes").items()) m.prototypes.emplace(label, vector_from_json(v));
    return m;
  });
}

json exemplar_to_json(const ExemplarModel& model) {
  json ex = json::object();
  for (const auto& [label, list] : model.exemplars) {
    json arr = json::array();
    for (const auto& v : list) arr.push_back(vector_to_json(v));
    ex[label] = std::move(arr);
  }
  return {{"model", "exemplar"}, {"metric", metric_to_json(model.metric)}, {"k", model.k}, {"exemplars", std::move(ex)}};
}

ExemplarModel exemplar_from_json(const json& j) {
  return wrap_json_errors([&] {
    if (j.at("model").get<std::string>() != "exemplar") throw InputError("not an exemplar model");
    ExemplarModel m{{}, metric_from_json(j.at("metric")), j.at("k").get<std::size_t>()};
    for (const auto& [label, list] : j.at("exemplars").items()) {
      for (const auto& v : list) m.exemplars[label].push_back(vector_from_json(v));
    }
    return m;
  });
}

Corpus read_corpus(std::istream& in) {
  Corpus corpus;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ss(line);
    Sentence s;
    std::string tok;
    while (ss >> tok) s.push_back(tok);
    if (!s.empty()) corpus.push_back(std::move(s));
  }
  return corpus;
}

void write_corpus(std::ostream& out, const Corpus& corpus) {
  for (const auto& s : corpus) {
    for (std::size_t i = 0; i < s.size(); ++i) out << (i ? " " : "") << s[i];
    out << '\n';
  }
}

Taxonomy read_taxonomy_csv(std::istream& in) {
  std::vector<std::pair<std::string, std::string>> edges;
  std::string line;
  std::size_t lineno = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++lineno;
    if (blank(line)) continue;
    auto cells = split(line, ',');
    if (cells.size() != 2) throw ParseError("expected two columns (child, parent)", lineno);
    if (first && cells[0] == "child" && cells[1] == "parent") {
      first = false;
      continue;
    }
    first = false;
    if (cells[0].empty() || cells[1].empty()) throw ParseError("empty node name", lineno);
    edges.emplace_back(cells[0], cells[1]);
  }
  if (edges.empty()) throw ParseError("taxonomy has no edges", lineno == 0 ? 1 : lineno);
  return Taxonomy::from_edges(edges);
}

void write_taxonomy_csv(std::ostream& out, const Taxonomy& taxonomy) {
  out << "child,parent\n";
  for (const auto& [c, p] : taxonomy.named_edges()) out << c << ',' << p << '\n';
}

void write_embedding_tsv(std::ostream& out, const EmbeddingSpace& space) {
  for (std::size_t i = 0; i < space.vocab.size(); ++i) {
    out << space.vocab.token(i);
    for (Eigen::Index j = 0; j < space.vectors.cols(); ++j) out << '\t' << format_double(space.vectors(static_cast<Eigen::Index>(i), j));
    out << '\n';
  }
}

EmbeddingSpace read_embedding_tsv(std::istream& in) {
  auto rows = read_named_rows(in);
  if (rows.empty()) throw ParseError("embedding file is empty", 1);
  std::vector<std::string> tokens;
  Eigen::MatrixXd vectors(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().second.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    tokens.push_back(rows[r].first);
    for (std::size_t c = 0; c < rows[r].second.size(); ++c) vectors(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r].second[c];
  }
  std::vector<std::uint64_t> counts(tokens.size(), 1);
  return {Vocabulary(std::move(tokens), std::move(counts)), std::move(vectors)};
}

void write_hyperbolic_tsv(std::ostream& out, const HyperbolicEmbedding& embedding) {
  for (std::size_t i = 0; i < embedding.taxonomy.num_nodes(); ++i) {
    out << embedding.taxonomy.name(i);
    for (Eigen::Index j = 0; j < embedding.points.cols(); ++j) out << '\t' << format_double(embedding.points(static_cast<Eigen::Index>(i), j));
    out << '\n';
  }
}

HyperbolicEmbedding read_hyperbolic_tsv(std::istream& in, const Taxonomy& taxonomy) {
  auto rows = read_named_rows(in);
  if (rows.size() != taxonomy.num_nodes()) throw InputError("embedding rows do not match the taxonomy nodes");
  HyperbolicEmbedding emb{taxonomy, Eigen::MatrixXd(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().second.size()))};
  for (const auto& [name, values] : rows) {
    auto i = taxonomy.index(name);
    if (!i) throw InputError("embedding names unknown node '" + name + "'");
    for (std::size_t c = 0; c < values.size(); ++c) emb.points(static_cast<Eigen::Index>(*i), static_cast<Eigen::Index>(c)) = values[c];
    if (emb.points.row(static_cast<Eigen::Index>(*i)).squaredNorm() >= 1.0) throw InputError("point for '" + name + "' is outside the unit ball");
  }
  return emb;
}

void write_boxes_tsv(std::ostream& out, const BoxEmbedding& embedding) {
  for (std::size_t i = 0; i < embedding.boxes.size(); ++i) {
    out << embedding.taxonomy.name(i);
    for (Eigen::Index j = 0; j < embedding.boxes[i].lo.size(); ++j) out << '\t' << format_double(embedding.boxes[i].lo[j]);
    for (Eigen::Index j = 0; j < embedding.boxes[i].hi.size(); ++j) out << '\t' << format_double(embedding.boxes[i].hi[j]);
    out << '\n';
  }
}

BoxEmbedding read_boxes_tsv(std::istream& in, const Taxonomy& taxonomy) {
  auto rows = read_named_rows(in);
  if (rows.size() != taxonomy.num_nodes()) throw InputError("box rows do not match the taxonomy nodes");
  const std::size_t width = rows.front().second.size();
  if (width % 2 != 0) throw InputError("box rows need an even number of coordinates");
  const auto D = static_cast<Eigen::Index>(width / 2);
  BoxEmbedding emb{taxonomy, std::vector<Box>(taxonomy.num_nodes())};
  for (const auto& [name, values] : rows) {
    auto i = taxonomy.index(name);
    if (!i) throw InputError("box file names unknown node '" + name + "'");
    Box b{Eigen::Map<const Eigen::VectorXd>(values.data(), D), Eigen::Map<const Eigen::VectorXd>(values.data() + D, D)};
    b.validate();
    emb.boxes[*i] = std::move(b);
  }
  return emb;
}

json vae_to_json(const VaeModel& model) {
  const auto& s = model.shape;
  return {{"model", "vae"},
          {"shape",
           {{"input_dim", s.input_dim},
            {"latent_dim", s.latent_dim},
            {"encoder_hidden", s.encoder_hidden},
            {"decoder_hidden", s.decoder_hidden}}},
          {"seed", model.seed},
          {"params",
           {{"enc_w", matrix_to_json(model.enc_w)},
            {"enc_b", vector_to_json(model.enc_b)},
            {"mu_w", matrix_to_json(model.mu_w)},
            {"mu_b", vector_to_json(model.mu_b)},
            {"logvar_w", matrix_to_json(model.logvar_w)},
            {"logvar_b", vector_to_json(model.logvar_b)},
            {"dec_w", matrix_to_json(model.dec_w)},
            {"dec_b", vector_to_json(model.dec_b)},
            {"out_w", matrix_to_json(model.out_w)},
            {"out_b", vector_to_json(model.out_b)}}}};
}

VaeModel vae_from_json(const json& j) {
  return wrap_json_errors([&] {
    if (j.at("model").get<std::string>() != "vae") throw InputError("not a VAE checkpoint");
    const auto& s = j.at("shape");
    VaeShape shape{s.at("input_dim").get<std::size_t>(), s.at("latent_dim").get<std::size_t>(),
                   s.at("encoder_hidden").get<std::size_t>(), s.at("decoder_hidden").get<std::size_t>()};
    VaeModel m = VaeModel::init(shape, j.at("seed").get<std::uint64_t>());
    const auto& p = j.at("params");
    auto dims = [](std::size_t v) { return static_cast<Eigen::Index>(v); };
    m.enc_w = matrix_from_json(p.at("enc_w"), dims(shape.encoder_hidden), dims(shape.input_dim), "enc_w");
    m.mu_w = matrix_from_json(p.at("mu_w"), dims(shape.latent_dim), dims(shape.encoder_hidden), "mu_w");
    m.logvar_w = matrix_from_json(p.at("logvar_w"), dims(shape.latent_dim), dims(shape.encoder_hidden), "logvar_w");
    m.dec_w = matrix_from_json(p.at("dec_w"), dims(shape.decoder_hidden), dims(shape.latent_dim), "dec_w");
    m.out_w = matrix_from_json(p.at("out_w"), dims(shape.input_dim), dims(shape.decoder_hidden), "out_w");
    auto bias = [&](const char* key, std::size_t len) {
      Eigen::VectorXd v = vector_from_json(p.at(key));
      if (static_cast<std::size_t>(v.size()) != len) throw InputError(std::string("checkpoint bias '") + key + "' has the wrong size");
      return v;
    };
    m.enc_b = bias("enc_b", shape.encoder_hidden);
    m.mu_b = bias("mu_b", shape.latent_dim);
    m.logvar_b = bias("logvar_b", shape.latent_dim);
    m.dec_b = bias("dec_b", shape.decoder_hidden);
    m.out_b = bias("out_b", shape.input_dim);
    if (!m.all_finite()) throw InputError("checkpoint contains non-finite parameters");
    return m;
  });
}

void write_loss_csv(std::ostream& out, const std::vector<double>& history) {
  out << "epoch,loss\n";
  for (std::size_t i = 0; i < history.size(); ++i) out << (i + 1) << ',' << format_double(history[i]) << '\n';
}

GroupSpec group_from_json(const json& j) {
  return wrap_json_errors([&]() -> GroupSpec {
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "cyclic") return GroupSpec::cyclic(j.at("n").get<std::size_t>());
    if (kind == "table") return GroupSpec::from_table(j.at("table").get<std::vector<std::vector<std::size_t>>>());
    if (kind == "rotation") {
      if (j.contains("angles")) return GroupSpec::rotation(j.at("angles").get<std::vector<double>>());
      const auto samples = j.at("samples").get<std::size_t>();
      Rng rng = Rng(j.value("seed", std::uint64_t{0})).split("rotation-samples");
      std::vector<double> angles;
      for (std::size_t i = 0; i < samples; ++i) angles.push_back(rng.uniform(0.0, 2.0 * std::numbers::pi));
      return GroupSpec::rotation(std::move(angles));
    }
    if (kind == "product") {
      std::vector<GroupSpec> factors;
      for (const auto& f : j.at("factors")) factors.push_back(group_from_json(f));
      return GroupSpec::product(std::move(factors));
    }
    throw InputError("unknown group kind '" + kind + "'");
  });
}

json group_to_json(const GroupSpec& group) {
  switch (group.kind()) {
    case GroupSpec::Kind::cyclic: return {{"kind", "cyclic"}, {"n", group.cyclic_order()}};
    case GroupSpec::Kind::table: return {{"kind", "table"}, {"table", group.table()}};
    case GroupSpec::Kind::rotation: return {{"kind", "rotation"}, {"angles", group.sample_angles()}};
    case GroupSpec::Kind::product: {
      json factors = json::array();
      for (const auto& f : group.factors()) factors.push_back(group_to_json(f));
      return {{"kind", "product"}, {"factors", std::move(factors)}};
    }
  }
  return {};
}

json group_report_to_json(const GroupReport& report) {
  json violations = json::array();
  for (const auto& v : report.violations) violations.push_back({{"law", v.law}, {"witness", v.witness}});
  return {{"verdict", report.passed ? "pass" : "fail"},
          {"exhaustive", report.exhaustive},
          {"triples_checked", report.triples_checked},
          {"violation_count", report.violation_count},
          {"violations", std::move(violations)}};
}

json check_report_to_json(const CheckReport& report) {
  return {{"verdict", report.passed ? "pass" : "fail"},
          {"tolerance", report.tolerance},
          {"max_deviation", report.max_deviation},
          {"mean_deviation", report.mean_deviation},
          {"samples", report.samples},
          {"worst_element", report.worst_element},
          {"worst_point", vector_to_json(report.worst_point)}};
}

json disentangle_report_to_json(const DisentangleReport& report) {
  json factors = json::array();
  for (const auto& f : report.factors) {
    factors.push_back({{"leakage", f.leakage}, {"own_change", f.own_change}, {"non_degenerate", f.non_degenerate}});
  }
  return {{"verdict", report.passed ? "pass" : "fail"},
          {"tolerance", report.tolerance},
          {"leakage", report.leakage},
          {"factors", std::move(factors)}};
}

json lie_report_to_json(const LieReport& report) {
  return {{"max_residual", report.max_residual},
          {"worst_point", {report.worst_point.x(), report.worst_point.y()}},
          {"points", report.residuals.size()}};
}

}  // namespace conceptkit::io
