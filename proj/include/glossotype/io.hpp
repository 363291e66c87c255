#pragma once

// On-disk formats: profiles (TSV + JSON sidecar), distance matrices (TSV,
// PHYLIP), trees (Newick), similarity graphs (DOT, JSON), cross-validation
// metrics (TSV + JSON) and trained models (JSON).

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "glossotype/cluster.hpp"
#include "glossotype/corpus.hpp"
#include "glossotype/distance.hpp"
#include "glossotype/error.hpp"
#include "glossotype/format.hpp"
#include "glossotype/neural.hpp"
#include "glossotype/ngram.hpp"

namespace glossotype {

namespace fs = std::filesystem;
using nlohmann::json;

namespace detail {

inline std::string read_file(const fs::path& path) {
  auto in = open_input(path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

/// Writes `content` to `path`, creating parent directories.
inline void write_file(const fs::path& path, std::string_view content) {
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::io_error, "cannot write " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw Error(Errc::io_error, "write failed: " + path.string());
}

inline std::string dump_json(const json& doc) { return doc.dump(2) + "\n"; }

inline json parse_json(const fs::path& path, Errc on_error) {
  try {
    return json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw Error(on_error, path.string() + ": " + e.what());
  }
}

inline std::vector<std::string> read_lines(const fs::path& path) {
  auto in = open_input(path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    strip_line_ending(line);
    lines.push_back(line);
  }
  return lines;
}

inline double parse_number(std::string_view text, const fs::path& path, std::size_t line) {
  const auto value = parse_double(text);
  if (!value) throw Error(Errc::malformed_line, path.string() + ": not a number '" + std::string(text) + "'", line);
  return *value;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Profiles

inline std::optional<FeatureKind> parse_feature_kind(std::string_view name) {
  if (name == "char-ngram") return FeatureKind::char_ngram;
  if (name == "pos-trigram") return FeatureKind::pos_trigram;
  return std::nullopt;
}

inline fs::path sidecar_path(const fs::path& tsv) {
  fs::path out = tsv;
  return out.replace_extension(".json");
}

/// `key<TAB>frequency` rows under a header, frequency descending then key
/// ascending.
inline std::string profile_tsv(const FeatureProfile& profile) {
  std::string out = "key\tfrequency\n";
  for (const auto& [key, freq] : ranked_features(profile)) {
    out += key;
    out += '\t';
    out += format_double(freq);
    out += '\n';
  }
  return out;
}

inline json profile_sidecar(const FeatureProfile& profile) {
  json units = json::object();
  for (const auto& [arity, count] : profile.units_by_arity) units[std::to_string(arity)] = count;
  return {{"language_code", profile.language_code},
          {"kind", std::string(to_string(profile.kind))},
          {"total_units", profile.total_units},
          {"units_by_arity", units},
          {"feature_count", profile.size()}};
}

/// Writes `tsv_path` and its `.json` sidecar.
inline void save_profile(const FeatureProfile& profile, const fs::path& tsv_path) {
  detail::write_file(tsv_path, profile_tsv(profile));
  detail::write_file(sidecar_path(tsv_path), detail::dump_json(profile_sidecar(profile)));
}

inline FeatureProfile load_profile(const fs::path& tsv_path) {
  const json meta = detail::parse_json(sidecar_path(tsv_path), Errc::malformed_line);
  FeatureProfile profile;
  try {
    profile.language_code = meta.at("language_code").get<std::string>();
    const auto kind = parse_feature_kind(meta.at("kind").get<std::string>());
    if (!kind) throw Error(Errc::malformed_line, sidecar_path(tsv_path).string() + ": unknown profile kind");
    profile.kind = *kind;
    profile.total_units = meta.at("total_units").get<std::uint64_t>();
    if (meta.contains("units_by_arity")) {
      for (const auto& [arity, count] : meta.at("units_by_arity").items()) {
        profile.units_by_arity[std::stoul(arity)] = count.get<std::uint64_t>();
      }
    }
  } catch (const json::exception& e) {
    throw Error(Errc::malformed_line, sidecar_path(tsv_path).string() + ": " + e.what());
  }

  const auto lines = detail::read_lines(tsv_path);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto cols = detail::split_tabs(lines[i]);
    if (cols.size() != 2) throw Error(Errc::malformed_line, tsv_path.string(), i + 1);
    profile.freqs.emplace(std::string(cols[0]), detail::parse_number(cols[1], tsv_path, i + 1));
  }
  return profile;
}

// ---------------------------------------------------------------------------
// Distance matrices

/// Header row and first column hold the language codes.
inline std::string matrix_tsv(const DistanceMatrix& m) {
  std::string out = "language";
  for (const auto& label : m.labels()) out += '\t' + label;
  out += '\n';
  for (std::size_t i = 0; i < m.size(); ++i) {
    out += m.labels()[i];
    for (std::size_t j = 0; j < m.size(); ++j) out += '\t' + format_double(m(i, j));
    out += '\n';
  }
  return out;
}

/// Square PHYLIP distance matrix (relaxed: names are not padded to ten
/// characters, so they must not contain whitespace).
inline std::string matrix_phylip(const DistanceMatrix& m) {
  std::string out = std::to_string(m.size()) + '\n';
  for (std::size_t i = 0; i < m.size(); ++i) {
    out += m.labels()[i];
    for (std::size_t j = 0; j < m.size(); ++j) out += ' ' + format_double(m(i, j));
    out += '\n';
  }
  return out;
}

inline DistanceMatrix read_matrix_tsv(const fs::path& path, MatrixKind kind) {
  const auto lines = detail::read_lines(path);
  if (lines.empty()) throw Error(Errc::malformed_line, path.string() + ": empty matrix file");
  const auto header = detail::split_tabs(lines[0]);
  std::vector<std::string> labels(header.begin() + 1, header.end());
  DistanceMatrix m(labels, kind);
  std::size_t row = 0;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto cols = detail::split_tabs(lines[i]);
    if (cols.size() != labels.size() + 1 || row >= labels.size() || cols[0] != labels[row]) {
      throw Error(Errc::malformed_line, path.string(), i + 1);
    }
    for (std::size_t j = row + 1; j < labels.size(); ++j) m.set(row, j, detail::parse_number(cols[j + 1], path, i + 1));
    ++row;
  }
  if (row != labels.size()) throw Error(Errc::malformed_line, path.string() + ": missing rows");
  return m;
}

// ---------------------------------------------------------------------------
// Similarity graphs

inline constexpr std::string_view kCommunityMethod = "label propagation";

/// Undirected DOT graph. Node `color` is the community id (1-based, within
/// the set312 color scheme); edge `weight` is |z| because layout engines
/// reject negative weights, with the signed score kept in `zscore`. Edges
/// joining different communities are drawn red and bold.
inline std::string graph_dot(const SimilarityGraph& graph) {
  std::ostringstream out;
  out << "graph similarity {\n";
  out << "  // communities: " << kCommunityMethod << "\n";
  out << "  node [colorscheme=set312, style=filled];\n";
  for (std::size_t v = 0; v < graph.nodes.size(); ++v) {
    const std::size_t community = graph.communities.empty() ? v : graph.communities[v];
    const std::size_t color = community % 12 + 1;
    out << "  \"" << graph.nodes[v] << "\" [community=" << community << ", color=" << color
        << ", fillcolor=" << color << "];\n";
  }
  for (const auto& e : graph.edges) {
    const bool bridge = !graph.communities.empty() && graph.communities[e.source] != graph.communities[e.target];
    out << "  \"" << graph.nodes[e.source] << "\" -- \"" << graph.nodes[e.target]
        << "\" [weight=" << format_double(-e.zscore) << ", zscore=" << format_double(e.zscore);
    if (bridge) out << ", inter_community=true, color=red, style=bold";
    out << "];\n";
  }
  out << "}\n";
  return out.str();
}

inline json graph_json(const SimilarityGraph& graph) {
  json edges = json::array();
  for (const auto& e : graph.edges) {
    edges.push_back({{"source", graph.nodes[e.source]}, {"target", graph.nodes[e.target]}, {"zscore", e.zscore}});
  }
  json communities = json::object();
  for (std::size_t v = 0; v < graph.nodes.size() && v < graph.communities.size(); ++v) {
    communities[graph.nodes[v]] = graph.communities[v];
  }
  return {{"nodes", graph.nodes},
          {"edges", edges},
          {"communities", communities},
          {"community_method", std::string(kCommunityMethod)}};
}

inline SimilarityGraph graph_from_json(const json& doc) {
  SimilarityGraph graph;
  try {
    graph.nodes = doc.at("nodes").get<std::vector<std::string>>();
    auto index = [&](const std::string& label) {
      const auto it = std::find(graph.nodes.begin(), graph.nodes.end(), label);
      if (it == graph.nodes.end()) throw Error(Errc::label_mismatch, "edge endpoint " + label);
      return static_cast<std::size_t>(it - graph.nodes.begin());
    };
    for (const auto& e : doc.at("edges")) {
      graph.edges.push_back({index(e.at("source").get<std::string>()), index(e.at("target").get<std::string>()),
                             e.at("zscore").get<double>()});
    }
    const auto& communities = doc.at("communities");
    if (!communities.empty()) {
      for (const auto& label : graph.nodes) graph.communities.push_back(communities.at(label).get<std::size_t>());
    }
  } catch (const json::exception& e) {
    throw Error(Errc::malformed_line, std::string("graph: ") + e.what());
  }
  return graph;
}

// ---------------------------------------------------------------------------
// Metrics

/// One row per class from the pooled confusion matrix.
inline std::string metrics_tsv(const CrossValidationResult& cv, const std::vector<std::string>& label_names) {
  std::string out = "language\tprecision\trecall\tf_score\tsupport\n";
  const auto& m = cv.pooled;
  for (std::size_t c = 0; c < label_names.size(); ++c) {
    out += label_names[c] + '\t' + format_double(m.precision[c]) + '\t' + format_double(m.recall[c]) + '\t' +
           format_double(m.f_score[c]) + '\t' + std::to_string(m.support[c]) + '\n';
  }
  return out;
}

inline json class_metrics_json(const ClassMetrics& m, const std::vector<std::string>& label_names) {
  json per_class = json::object();
  for (std::size_t c = 0; c < label_names.size(); ++c) {
    per_class[label_names[c]] = {
        {"precision", m.precision[c]}, {"recall", m.recall[c]}, {"f_score", m.f_score[c]}, {"support", m.support[c]}};
  }
  return {{"accuracy", m.accuracy}, {"per_class", per_class}, {"confusion", m.confusion}};
}

inline json metrics_json(const CrossValidationResult& cv, const std::vector<std::string>& label_names) {
  json folds = json::array();
  for (const auto& fold : cv.folds) folds.push_back(class_metrics_json(fold, label_names));
  return {{"labels", label_names},
          {"folds", cv.folds.size()},
          {"mean_accuracy", cv.mean_accuracy},
          {"stddev_accuracy", cv.stddev_accuracy},
          {"pooled_accuracy", cv.pooled.accuracy},
          {"pooled", class_metrics_json(cv.pooled, label_names)},
          {"per_fold", folds}};
}

// ---------------------------------------------------------------------------
// Models

/// A trained network together with everything needed to apply it.
struct TrainedModel {
  MlpModel model;
  FeatureIndex feature_index;
  std::vector<std::string> label_names;
  TrainOptions train;
  DatasetOptions dataset;

  friend bool operator==(const TrainedModel& a, const TrainedModel& b) {
    return a.model == b.model && a.feature_index == b.feature_index && a.label_names == b.label_names;
  }
};

namespace detail {

inline json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows; ++r) {
    const auto row = m.row(r);
    rows.push_back(std::vector<double>(row.begin(), row.end()));
  }
  return rows;
}

inline Matrix matrix_from_json(const json& rows, std::size_t expected_cols, const char* name) {
  if (!rows.is_array()) throw Error(Errc::model_format_error, std::string(name) + " must be an array of rows");
  Matrix m(rows.size(), expected_cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto values = rows[r].get<std::vector<double>>();
    if (values.size() != expected_cols) {
      throw Error(Errc::model_format_error, std::string(name) + " row " + std::to_string(r) + " has wrong width");
    }
    std::copy(values.begin(), values.end(), m.data.begin() + static_cast<std::ptrdiff_t>(r * expected_cols));
  }
  return m;
}

}  // namespace detail

/// Weights as nested arrays of shortest round-trip decimals.
inline json model_json(const TrainedModel& trained) {
  const auto& t = trained.train;
  return {{"feature_index", trained.feature_index},
          {"label_names", trained.label_names},
          {"W1", detail::matrix_json(trained.model.w1)},
          {"b1", trained.model.b1},
          {"W2", detail::matrix_json(trained.model.w2)},
          {"b2", trained.model.b2},
          {"hyperparameters",
           {{"hidden", t.hidden},
            {"epochs", t.epochs},
            {"batch_size", t.batch_size},
            {"learning_rate", t.adam.alpha},
            {"beta1", t.adam.beta1},
            {"beta2", t.adam.beta2},
            {"epsilon", t.adam.epsilon},
            {"docs_per_lang", trained.dataset.docs_per_lang},
            {"sentences_per_doc", trained.dataset.sentences_per_doc},
            {"activations", {"relu", "softmax"}},
            {"loss", "categorical_cross_entropy"}}},
          {"seed", t.seed},
          {"dataset_seed", trained.dataset.seed}};
}

inline void save_model(const TrainedModel& trained, const fs::path& path) {
  detail::write_file(path, detail::dump_json(model_json(trained)));
}

inline TrainedModel model_from_json(const json& doc) {
  TrainedModel out;
  try {
    out.feature_index = doc.at("feature_index").get<FeatureIndex>();
    out.label_names = doc.at("label_names").get<std::vector<std::string>>();
    out.model.b1 = doc.at("b1").get<std::vector<double>>();
    out.model.b2 = doc.at("b2").get<std::vector<double>>();
    out.model.w1 = detail::matrix_from_json(doc.at("W1"), out.model.b1.size(), "W1");
    out.model.w2 = detail::matrix_from_json(doc.at("W2"), out.model.b2.size(), "W2");
    const auto& hp = doc.at("hyperparameters");
    out.train.hidden = hp.value("hidden", out.model.b1.size());
    out.train.epochs = hp.value("epochs", out.train.epochs);
    out.train.batch_size = hp.value("batch_size", out.train.batch_size);
    out.train.adam.alpha = hp.value("learning_rate", out.train.adam.alpha);
    out.train.adam.beta1 = hp.value("beta1", out.train.adam.beta1);
    out.train.adam.beta2 = hp.value("beta2", out.train.adam.beta2);
    out.train.adam.epsilon = hp.value("epsilon", out.train.adam.epsilon);
    out.dataset.docs_per_lang = hp.value("docs_per_lang", out.dataset.docs_per_lang);
    out.dataset.sentences_per_doc = hp.value("sentences_per_doc", out.dataset.sentences_per_doc);
    out.train.seed = doc.value("seed", std::uint64_t{0});
    out.dataset.seed = doc.value("dataset_seed", std::uint64_t{0});
  } catch (const json::exception& e) {
    throw Error(Errc::model_format_error, e.what());
  }
  const auto& m = out.model;
  if (m.w1.rows != out.feature_index.size() || m.w2.rows != m.b1.size() || m.b2.size() != out.label_names.size() ||
      out.label_names.empty()) {
    throw Error(Errc::model_format_error, "parameter shapes do not match feature index and labels");
  }
  if (!std::is_sorted(out.feature_index.begin(), out.feature_index.end())) {
    throw Error(Errc::model_format_error, "feature_index must be sorted");
  }
  if (!m.all_finite()) throw Error(Errc::model_format_error, "non-finite parameter");
  return out;
}

inline TrainedModel load_model(const fs::path& path) {
  return model_from_json(detail::parse_json(path, Errc::model_format_error));
}

}  // namespace glossotype
