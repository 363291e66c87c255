#pragma once

// End-to-end commands behind the command-line tool. Each command is a pure
// function of its inputs, the configuration and its seeds.
//
// Corpus layout:   <corpus_dir>/<language>/{raw.txt, tagged.conllu}
// Output layout:   <output_dir>/profiles/<language>.{char,pos}.{tsv,json}
//                  <output_dir>/profiles/summary.tsv
//                  <output_dir>/compare/{written,structure,overall}.{tsv,phy,nwk}
//                  <output_dir>/compare/graph.{dot,json}
//                  <output_dir>/model.json
//                  <output_dir>/metrics/{metrics.tsv,summary.json}
//                  <output_dir>/report.md

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "glossotype/cluster.hpp"
#include "glossotype/corpus.hpp"
#include "glossotype/distance.hpp"
#include "glossotype/error.hpp"
#include "glossotype/format.hpp"
#include "glossotype/io.hpp"
#include "glossotype/neural.hpp"
#include "glossotype/ngram.hpp"
#include "glossotype/posgram.hpp"
#include "glossotype/translit.hpp"

namespace glossotype {

struct PipelineConfig {
  fs::path corpus_dir;
  fs::path output_dir = "out";
  std::vector<std::string> languages;  // empty: every subdirectory of corpus_dir
  std::size_t min_words = 3;
  std::map<std::string, std::size_t> min_words_per_language;
  std::optional<fs::path> charset_whitelist;
  std::vector<fs::path> translit_tables;
  std::size_t top_k_char = 1000;
  std::size_t top_k_pos = 2000;
  Linkage linkage = Linkage::average;
  bool normalize_minmax = false;
  double z_threshold = kDefaultZThreshold;
  DatasetOptions dataset;
  TrainOptions train;
  std::size_t folds = 10;
  std::uint64_t seed = 0;

  std::size_t min_words_for(const std::string& language) const {
    const auto it = min_words_per_language.find(language);
    return it == min_words_per_language.end() ? min_words : it->second;
  }

  fs::path profiles_dir() const { return output_dir / "profiles"; }
  fs::path compare_dir() const { return output_dir / "compare"; }
  fs::path metrics_dir() const { return output_dir / "metrics"; }
  fs::path model_path() const { return output_dir / "model.json"; }
};

/// Applies the keys of `doc` on top of `config`. Relative paths resolve
/// against `base`. Unknown keys are rejected.
inline void apply_config(PipelineConfig& config, const json& doc, const fs::path& base) {
  if (!doc.is_object()) throw Error(Errc::invalid_argument, "configuration must be a JSON object");
  auto path = [&](const json& v) {
    fs::path p = v.get<std::string>();
    return p.is_relative() && !base.empty() ? base / p : p;
  };
  try {
    for (const auto& [key, v] : doc.items()) {
      if (key == "corpus_dir") config.corpus_dir = path(v);
      else if (key == "output_dir") config.output_dir = path(v);
      else if (key == "languages") config.languages = v.get<std::vector<std::string>>();
      else if (key == "min_words") config.min_words = v.get<std::size_t>();
      else if (key == "min_words_per_language")
        config.min_words_per_language = v.get<std::map<std::string, std::size_t>>();
      else if (key == "charset_whitelist") config.charset_whitelist = path(v);
      else if (key == "translit_tables") {
        config.translit_tables.clear();
        for (const auto& p : v) config.translit_tables.push_back(path(p));
      } else if (key == "top_k_char") config.top_k_char = v.get<std::size_t>();
      else if (key == "top_k_pos") config.top_k_pos = v.get<std::size_t>();
      else if (key == "linkage") {
        const auto name = v.get<std::string>();
        if (name == "average") config.linkage = Linkage::average;
        else if (name == "single") config.linkage = Linkage::single;
        else if (name == "complete") config.linkage = Linkage::complete;
        else throw Error(Errc::invalid_argument, "unknown linkage " + name);
      } else if (key == "normalize") {
        const auto name = v.get<std::string>();
        if (name != "none" && name != "minmax") throw Error(Errc::invalid_argument, "unknown normalization " + name);
        config.normalize_minmax = name == "minmax";
      } else if (key == "z_threshold") config.z_threshold = v.get<double>();
      else if (key == "docs_per_lang") config.dataset.docs_per_lang = v.get<std::size_t>();
      else if (key == "sentences_per_doc") config.dataset.sentences_per_doc = v.get<std::size_t>();
      else if (key == "epochs") config.train.epochs = v.get<std::size_t>();
      else if (key == "batch_size") config.train.batch_size = v.get<std::size_t>();
      else if (key == "hidden") config.train.hidden = v.get<std::size_t>();
      else if (key == "learning_rate") config.train.adam.alpha = v.get<double>();
      else if (key == "beta1") config.train.adam.beta1 = v.get<double>();
      else if (key == "beta2") config.train.adam.beta2 = v.get<double>();
      else if (key == "epsilon") config.train.adam.epsilon = v.get<double>();
      else if (key == "folds") config.folds = v.get<std::size_t>();
      else if (key == "seed") config.seed = v.get<std::uint64_t>();
      else throw Error(Errc::invalid_argument, "unknown configuration key '" + key + "'");
    }
  } catch (const json::exception& e) {
    throw Error(Errc::invalid_argument, std::string("configuration: ") + e.what());
  }
}

inline PipelineConfig load_config(const fs::path& path) {
  PipelineConfig config;
  json doc;
  try {
    doc = json::parse(detail::read_file(path));
  } catch (const json::exception& e) {
    throw Error(Errc::invalid_argument, path.string() + ": " + e.what());
  }
  apply_config(config, doc, path.parent_path());
  return config;
}

namespace detail {

// Seed streams.
inline constexpr std::uint64_t kDatasetStream = 1;
inline constexpr std::uint64_t kTrainStream = 2;
inline constexpr std::uint64_t kCommunityStream = 3;

inline std::vector<std::string> resolve_languages(const PipelineConfig& config) {
  if (!config.languages.empty()) return config.languages;
  if (config.corpus_dir.empty()) throw Error(Errc::invalid_argument, "no corpus directory configured");
  std::error_code ec;
  if (!fs::is_directory(config.corpus_dir, ec)) throw Error(Errc::file_not_found, config.corpus_dir.string());
  std::vector<std::string> out;
  for (const auto& entry : fs::directory_iterator(config.corpus_dir)) {
    if (entry.is_directory()) out.push_back(entry.path().filename().string());
  }
  std::sort(out.begin(), out.end());
  if (out.empty()) throw Error(Errc::empty_corpus, "no language directories under " + config.corpus_dir.string());
  return out;
}

/// Languages with a saved profile of the given suffix ("char" or "pos").
inline std::vector<std::string> profiled_languages(const PipelineConfig& config, std::string_view suffix) {
  const std::string tail = "." + std::string(suffix) + ".tsv";
  std::vector<std::string> out;
  std::error_code ec;
  if (!fs::is_directory(config.profiles_dir(), ec)) return out;
  for (const auto& entry : fs::directory_iterator(config.profiles_dir())) {
    const auto name = entry.path().filename().string();
    if (name.size() > tail.size() && name.ends_with(tail)) out.push_back(name.substr(0, name.size() - tail.size()));
  }
  std::sort(out.begin(), out.end());
  if (!config.languages.empty()) {
    std::vector<std::string> wanted;
    for (const auto& l : config.languages) {
      if (std::binary_search(out.begin(), out.end(), l)) wanted.push_back(l);
    }
    return wanted;
  }
  return out;
}

inline std::vector<TranslitTable> translit_tables(const PipelineConfig& config) {
  std::vector<TranslitTable> tables;
  for (const auto& p : config.translit_tables) tables.push_back(load_translit_table(p));
  for (const auto& t : builtin_tables()) tables.push_back(t);
  return tables;
}

inline CharsetWhitelist load_whitelist(const fs::path& path) {
  const json doc = parse_json(path, Errc::invalid_argument);
  CharsetWhitelist out;
  try {
    for (const auto& [language, scripts] : doc.items()) {
      for (const auto& s : scripts) out[language].insert(s.get<std::string>());
    }
  } catch (const json::exception& e) {
    throw Error(Errc::invalid_argument, path.string() + ": " + e.what());
  }
  return out;
}

inline fs::path raw_path(const PipelineConfig& c, const std::string& l) { return c.corpus_dir / l / "raw.txt"; }
inline fs::path tagged_path(const PipelineConfig& c, const std::string& l) {
  return c.corpus_dir / l / "tagged.conllu";
}

template <class Fn>
auto with_language(const std::string& language, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    throw e.with_context(language);
  }
}

inline TaggedCorpus load_clean_tagged(const PipelineConfig& config, const std::string& language) {
  return with_language(language, [&] {
    return preprocess(load_tagged_corpus(tagged_path(config, language), language), config.min_words_for(language));
  });
}

inline std::vector<TaggedCorpus> load_all_tagged(const PipelineConfig& config) {
  std::vector<TaggedCorpus> corpora;
  for (const auto& language : resolve_languages(config)) {
    std::error_code ec;
    if (!fs::is_regular_file(tagged_path(config, language), ec)) continue;
    corpora.push_back(load_clean_tagged(config, language));
  }
  if (corpora.size() < 2) throw Error(Errc::too_few_labels, "training needs tagged corpora for at least 2 languages");
  return corpora;
}

inline DocumentDataset dataset_for(const PipelineConfig& config) {
  const auto corpora = load_all_tagged(config);
  DatasetOptions options = config.dataset;
  options.seed = derive_seed(config.seed, kDatasetStream);
  return build_dataset(corpora, options);
}

inline TrainOptions train_options_for(const PipelineConfig& config) {
  TrainOptions options = config.train;
  options.seed = derive_seed(config.seed, kTrainStream);
  return options;
}

inline void save_matrix_outputs(const DistanceMatrix& m, const fs::path& dir, std::string_view name, Linkage linkage) {
  const std::string stem(name);
  write_file(dir / (stem + ".tsv"), matrix_tsv(m));
  write_file(dir / (stem + ".phy"), matrix_phylip(m));
  write_file(dir / (stem + ".nwk"), to_newick(upgma(m, linkage)) + "\n");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// profile

struct LanguageSummary {
  std::string language;
  std::optional<std::size_t> raw_sentences, clean_sentences, char_features;
  std::optional<std::size_t> tagged_sentences, clean_tagged_sentences, pos_features;
};

/// Builds and saves the character and POS profiles of every language, and a
/// per-language summary table.
inline std::vector<LanguageSummary> cmd_profile(const PipelineConfig& config, std::ostream& log) {
  const auto languages = detail::resolve_languages(config);
  const auto tables = detail::translit_tables(config);
  const Transliterator translit(tables);
  std::optional<CharsetWhitelist> whitelist;
  if (config.charset_whitelist) whitelist = detail::load_whitelist(*config.charset_whitelist);

  std::vector<LanguageSummary> summaries;
  for (const auto& language : languages) {
    LanguageSummary s{language, {}, {}, {}, {}, {}, {}};
    std::error_code ec;
    const bool has_raw = fs::is_regular_file(detail::raw_path(config, language), ec);
    const bool has_tagged = fs::is_regular_file(detail::tagged_path(config, language), ec);
    if (!has_raw && !has_tagged) {
      throw Error(Errc::file_not_found, "no raw.txt or tagged.conllu").with_context(language);
    }
    detail::with_language(language, [&] {
      if (has_raw) {
        auto raw = load_raw_corpus(detail::raw_path(config, language), language);
        s.raw_sentences = raw.size();
        if (whitelist) raw = filter_by_charset(raw, *whitelist);
        raw = preprocess(raw, config.min_words_for(language));
        s.clean_sentences = raw.size();
        for (auto& sentence : raw.sentences) sentence.text = translit(sentence.text);
        const auto profile = build_char_profile(raw, config.top_k_char);
        s.char_features = profile.size();
        save_profile(profile, config.profiles_dir() / (language + ".char.tsv"));
      }
      if (has_tagged) {
        const auto tagged = load_tagged_corpus(detail::tagged_path(config, language), language);
        s.tagged_sentences = tagged.size();
        const auto clean = preprocess(tagged, config.min_words_for(language));
        s.clean_tagged_sentences = clean.size();
        const auto profile = build_pos_profile(clean, config.top_k_pos, false);
        s.pos_features = profile.size();
        save_profile(profile, config.profiles_dir() / (language + ".pos.tsv"));
      }
    });
    summaries.push_back(s);
  }

  auto cell = [](const std::optional<std::size_t>& v) { return v ? std::to_string(*v) : std::string("-"); };
  std::string table =
      "language\traw_sentences\tclean_sentences\tchar_features\ttagged_sentences\tclean_tagged_sentences\t"
      "pos_features\n";
  for (const auto& s : summaries) {
    table += s.language + '\t' + cell(s.raw_sentences) + '\t' + cell(s.clean_sentences) + '\t' +
             cell(s.char_features) + '\t' + cell(s.tagged_sentences) + '\t' + cell(s.clean_tagged_sentences) +
             '\t' + cell(s.pos_features) + '\n';
  }
  detail::write_file(config.profiles_dir() / "summary.tsv", table);
  log << table;
  return summaries;
}

// ---------------------------------------------------------------------------
// compare

struct CompareResult {
  std::optional<DistanceMatrix> written, structure, overall;
  SimilarityGraph graph;
};

/// Distance matrices and trees per profile kind, their average, and the
/// z-filtered similarity graph of the overall matrix with communities.
inline CompareResult cmd_compare(const PipelineConfig& config, std::ostream& log) {
  auto load_kind = [&](std::string_view suffix) {
    std::vector<FeatureProfile> profiles;
    for (const auto& l : detail::profiled_languages(config, suffix)) {
      profiles.push_back(load_profile(config.profiles_dir() / (l + "." + std::string(suffix) + ".tsv")));
    }
    return profiles;
  };
  const auto char_profiles = load_kind("char");
  const auto pos_profiles = load_kind("pos");
  if (char_profiles.size() < 2 && pos_profiles.size() < 2) {
    throw Error(Errc::too_few_labels, "compare needs profiles for at least 2 languages; run `profile` first");
  }

  CompareResult result;
  const fs::path dir = config.compare_dir();
  auto finish = [&](DistanceMatrix m) {
    return config.normalize_minmax ? normalize_minmax(m) : m;
  };
  if (char_profiles.size() >= 2) {
    result.written = finish(distance_matrix(char_profiles));
    detail::save_matrix_outputs(*result.written, dir, "written", config.linkage);
  }
  if (pos_profiles.size() >= 2) {
    result.structure = finish(distance_matrix(pos_profiles));
    detail::save_matrix_outputs(*result.structure, dir, "structure", config.linkage);
  }

  if (result.written && result.structure) {
    std::vector<std::string> shared;
    for (const auto& l : result.written->labels()) {
      const auto& other = result.structure->labels();
      if (std::find(other.begin(), other.end(), l) != other.end()) shared.push_back(l);
    }
    if (shared.size() >= 2) {
      result.overall = average_matrices(reorder(*result.written, shared), reorder(*result.structure, shared));
    }
  } else {
    result.overall = result.written ? *result.written : *result.structure;
    result.overall->set_kind(MatrixKind::overall);
  }

  if (result.overall) {
    detail::save_matrix_outputs(*result.overall, dir, "overall", config.linkage);
    SimilarityGraph graph{result.overall->labels(), {}, {}};
    if (result.overall->size() >= 3) graph = zscore_filter(*result.overall, config.z_threshold);
    result.graph = detect_communities(graph, derive_seed(config.seed, detail::kCommunityStream));
    detail::write_file(dir / "graph.dot", graph_dot(result.graph));
    detail::write_file(dir / "graph.json", detail::dump_json(graph_json(result.graph)));
    log << "overall: " << result.overall->size() << " languages, " << result.graph.edges.size() << " edges, "
        << result.graph.community_count() << " communities (" << kCommunityMethod << ")\n";
  }
  return result;
}

// ---------------------------------------------------------------------------
// train / evaluate / identify

/// Trains on every document of the tagged corpora and saves the model.
inline TrainedModel cmd_train(const PipelineConfig& config, std::ostream& log) {
  const auto dataset = detail::dataset_for(config);
  DatasetOptions dataset_options = config.dataset;
  dataset_options.seed = derive_seed(config.seed, detail::kDatasetStream);
  const TrainOptions options = detail::train_options_for(config);
  const auto result = train(dataset, options);
  TrainedModel trained{result.model, dataset.feature_index, dataset.label_names, options, dataset_options};
  save_model(trained, config.model_path());
  log << "trained on " << dataset.size() << " documents, " << dataset.feature_count() << " features, "
      << dataset.class_count() << " languages";
  if (!result.loss_history.empty()) log << ", final loss " << format_double(result.loss_history.back());
  log << "\n";
  return trained;
}

/// Stratified k-fold cross-validation; writes per-class metrics and a JSON
/// summary with per-fold, mean, standard deviation and pooled accuracy.
inline CrossValidationResult cmd_evaluate(const PipelineConfig& config, std::ostream& log) {
  const auto dataset = detail::dataset_for(config);
  const auto cv = kfold_cv(dataset, config.folds, detail::train_options_for(config));
  detail::write_file(config.metrics_dir() / "metrics.tsv", metrics_tsv(cv, dataset.label_names));
  detail::write_file(config.metrics_dir() / "summary.json", detail::dump_json(metrics_json(cv, dataset.label_names)));
  log << config.folds << "-fold accuracy " << format_double(cv.mean_accuracy) << " +/- "
      << format_double(cv.stddev_accuracy) << " (pooled " << format_double(cv.pooled.accuracy) << ")\n";
  return cv;
}

inline std::vector<std::pair<std::string, double>> cmd_identify(const fs::path& model_path,
                                                                const fs::path& tagged_input) {
  const auto trained = load_model(model_path);
  const auto passage = load_tagged_corpus(tagged_input, "input");
  return identify(trained.model, trained.feature_index, trained.label_names, passage.sentences);
}

// ---------------------------------------------------------------------------
// report

struct ReportOptions {
  std::size_t top = 5;
  bool distinct_only = false;  // POS tri-grams of three different tags only
};

namespace detail {

inline bool distinct_tags(std::string_view key) {
  const auto a = key.find('|');
  const auto b = key.find('|', a + 1);
  const auto t1 = key.substr(0, a), t2 = key.substr(a + 1, b - a - 1), t3 = key.substr(b + 1);
  return t1 != t2 && t2 != t3 && t1 != t3;
}

inline std::string top_features(const FeatureProfile& p, std::size_t arity, std::size_t top, bool distinct_only) {
  std::string out;
  std::size_t taken = 0;
  for (const auto& [key, freq] : ranked_features(p)) {
    if (taken == top) break;
    if (p.kind == FeatureKind::char_ngram && key.size() != arity) continue;
    if (p.kind == FeatureKind::pos_trigram && distinct_only && !distinct_tags(key)) continue;
    if (taken++) out += ", ";
    out += key;
  }
  return out;
}

}  // namespace detail

/// Markdown summary of whatever artifacts exist in the output directory.
inline std::string cmd_report(const PipelineConfig& config, const ReportOptions& options) {
  std::ostringstream md;
  md << "# Language typology report\n";

  const auto char_langs = detail::profiled_languages(config, "char");
  if (!char_langs.empty()) {
    md << "\n## Written patterns\n\n| language | top di-grams | top tri-grams |\n|---|---|---|\n";
    for (const auto& l : char_langs) {
      const auto p = load_profile(config.profiles_dir() / (l + ".char.tsv"));
      md << "| " << l << " | " << detail::top_features(p, 2, options.top, false) << " | "
         << detail::top_features(p, 3, options.top, false) << " |\n";
    }
  }
  const auto pos_langs = detail::profiled_languages(config, "pos");
  if (!pos_langs.empty()) {
    md << "\n## Sentence structure\n\n";
    if (options.distinct_only) md << "Only tri-grams of three different tags are shown.\n\n";
    md << "| language | top POS tri-grams |\n|---|---|\n";
    for (const auto& l : pos_langs) {
      const auto p = load_profile(config.profiles_dir() / (l + ".pos.tsv"));
      md << "| " << l << " | " << detail::top_features(p, 3, options.top, options.distinct_only) << " |\n";
    }
  }

  std::error_code ec;
  const fs::path dir = config.compare_dir();
  if (fs::is_regular_file(dir / "overall.nwk", ec)) {
    md << "\n## Overall similarity\n\n";
    for (const char* name : {"written", "structure", "overall"}) {
      const auto nwk = dir / (std::string(name) + ".nwk");
      if (!fs::is_regular_file(nwk, ec)) continue;
      auto tree = detail::read_file(nwk);
      while (!tree.empty() && tree.back() == '\n') tree.pop_back();
      md << "- " << name << " tree: `" << tree << "`\n";
    }
    if (fs::is_regular_file(dir / "graph.json", ec)) {
      const auto graph = graph_from_json(detail::parse_json(dir / "graph.json", Errc::malformed_line));
      md << "\nCommunities were detected with " << kCommunityMethod
         << " (used in place of Infomap) on pairs with z <= -" << format_double(config.z_threshold) << ".\n\n";
      std::map<std::size_t, std::vector<std::string>> members;
      for (std::size_t v = 0; v < graph.nodes.size(); ++v) {
        members[graph.communities.empty() ? v : graph.communities[v]].push_back(graph.nodes[v]);
      }
      for (const auto& [id, nodes] : members) {
        md << "- community " << id << ":";
        for (const auto& n : nodes) md << ' ' << n;
        md << "\n";
      }
      md << "- similarity edges: " << graph.edges.size() << "\n";
    }
  }

  if (fs::is_regular_file(config.metrics_dir() / "summary.json", ec)) {
    const auto summary = detail::parse_json(config.metrics_dir() / "summary.json", Errc::malformed_line);
    md << "\n## Language identification\n\n";
    md << "- " << summary.at("folds").get<std::size_t>() << "-fold mean accuracy: "
       << format_double(summary.at("mean_accuracy").get<double>())
       << " (sd " << format_double(summary.at("stddev_accuracy").get<double>()) << ")\n";
    md << "- pooled accuracy: " << format_double(summary.at("pooled_accuracy").get<double>()) << "\n\n";
    md << "| language | precision | recall | F-score |\n|---|---|---|---|\n";
    for (const auto& [label, m] : summary.at("pooled").at("per_class").items()) {
      md << "| " << label << " | " << format_double(m.at("precision").get<double>()) << " | "
         << format_double(m.at("recall").get<double>()) << " | " << format_double(m.at("f_score").get<double>())
         << " |\n";
    }
  }

  const std::string text = md.str();
  detail::write_file(config.output_dir / "report.md", text);
  return text;
}

}  // namespace glossotype
