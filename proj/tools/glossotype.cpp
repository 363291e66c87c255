// glossotype: language fingerprints from character n-grams and POS
// tri-grams.
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 numeric failure.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "glossotype/glossotype.hpp"

namespace {

namespace gt = glossotype;

constexpr int kUsage = 1;
constexpr int kData = 2;
constexpr int kNumeric = 3;

/// Flags shared by the pipeline subcommands. Values given on the command
/// line override the configuration file.
struct Flags {
  std::string config;
  std::optional<std::string> corpus_dir, output_dir, charset_whitelist, linkage, normalize;
  std::vector<std::string> languages, translit_tables;
  std::optional<std::size_t> min_words, top_k_char, top_k_pos, docs_per_lang, sentences_per_doc, epochs,
      batch_size, hidden, folds;
  std::optional<double> z_threshold, learning_rate;
  std::optional<std::uint64_t> seed;
};

void add_pipeline_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("-c,--config", f.config, "JSON configuration file")->check(CLI::ExistingFile);
  cmd->add_option("--corpus-dir", f.corpus_dir, "directory with one subdirectory per language");
  cmd->add_option("-o,--output-dir", f.output_dir, "artifact directory");
  cmd->add_option("--languages", f.languages, "language codes (default: all corpus subdirectories)")
      ->delimiter(',');
  cmd->add_option("--seed", f.seed, "master seed");
}

void add_profile_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--min-words", f.min_words, "drop sentences with fewer words");
  cmd->add_option("--top-k-char", f.top_k_char, "di-grams and tri-grams kept per family");
  cmd->add_option("--top-k-pos", f.top_k_pos, "POS tri-grams kept");
  cmd->add_option("--translit-table", f.translit_tables, "extra transliteration table (repeatable)");
  cmd->add_option("--charset-whitelist", f.charset_whitelist, "JSON map language -> allowed script names");
}

void add_compare_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--linkage", f.linkage, "tree linkage")->check(CLI::IsMember({"average", "single", "complete"}));
  cmd->add_option("--normalize", f.normalize, "rescale matrices before averaging")
      ->check(CLI::IsMember({"none", "minmax"}));
  cmd->add_option("--z-threshold", f.z_threshold, "keep pairs with z <= -threshold");
}

void add_train_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--min-words", f.min_words, "drop sentences with fewer tags");
  cmd->add_option("--docs-per-lang", f.docs_per_lang, "documents sampled per language");
  cmd->add_option("--sentences-per-doc", f.sentences_per_doc, "sentences per document");
  cmd->add_option("--epochs", f.epochs, "training epochs");
  cmd->add_option("--batch-size", f.batch_size, "mini-batch size");
  cmd->add_option("--hidden", f.hidden, "hidden units");
  cmd->add_option("--learning-rate", f.learning_rate, "Adam step size");
}

gt::PipelineConfig make_config(const Flags& f) {
  gt::PipelineConfig config;
  if (!f.config.empty()) config = gt::load_config(f.config);
  nlohmann::json o = nlohmann::json::object();
  auto set = [&](const char* key, const auto& v) {
    if (v) o[key] = *v;
  };
  set("corpus_dir", f.corpus_dir);
  set("output_dir", f.output_dir);
  set("charset_whitelist", f.charset_whitelist);
  set("linkage", f.linkage);
  set("normalize", f.normalize);
  set("min_words", f.min_words);
  set("top_k_char", f.top_k_char);
  set("top_k_pos", f.top_k_pos);
  set("docs_per_lang", f.docs_per_lang);
  set("sentences_per_doc", f.sentences_per_doc);
  set("epochs", f.epochs);
  set("batch_size", f.batch_size);
  set("hidden", f.hidden);
  set("folds", f.folds);
  set("z_threshold", f.z_threshold);
  set("learning_rate", f.learning_rate);
  set("seed", f.seed);
  if (!f.languages.empty()) o["languages"] = f.languages;
  if (!f.translit_tables.empty()) o["translit_tables"] = f.translit_tables;
  gt::apply_config(config, o, {});
  return config;
}

int exit_code_for(const gt::Error& e) {
  if (gt::is_numeric_failure(e.code())) return kNumeric;
  if (e.code() == gt::Errc::invalid_argument) return kUsage;
  return kData;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Language fingerprints from character n-grams and part-of-speech tri-grams"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "glossotype 0.1.0");
  Flags flags;

  auto* profile = app.add_subcommand("profile", "build character and POS profiles for every language");
  add_pipeline_flags(profile, flags);
  add_profile_flags(profile, flags);

  auto* compare = app.add_subcommand(
      "compare",
      "distance matrices, trees and the z-filtered similarity graph; communities use label propagation in place "
      "of Infomap");
  add_pipeline_flags(compare, flags);
  add_compare_flags(compare, flags);

  auto* train = app.add_subcommand("train", "train the language identifier on all tagged corpora");
  add_pipeline_flags(train, flags);
  add_train_flags(train, flags);

  auto* evaluate = app.add_subcommand("evaluate", "stratified k-fold cross-validation of the identifier");
  add_pipeline_flags(evaluate, flags);
  add_train_flags(evaluate, flags);
  evaluate->add_option("--folds", flags.folds, "number of folds");

  std::string model_path, input_path;
  auto* identify = app.add_subcommand("identify", "rank languages for a tagged passage");
  identify->add_option("-m,--model", model_path, "model file written by train")->required();
  identify->add_option("input", input_path, "CoNLL-U passage")->required();

  gt::ReportOptions report_options;
  auto* report = app.add_subcommand("report", "summarize the artifacts of an output directory");
  add_pipeline_flags(report, flags);
  report->add_option("--top", report_options.top, "features listed per language");
  report->add_flag("--distinct-only", report_options.distinct_only,
                   "list only POS tri-grams made of three different tags");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (*identify) {
      const auto ranked = gt::cmd_identify(model_path, input_path);
      for (const auto& [language, p] : ranked) std::cout << language << '\t' << gt::format_double(p) << '\n';
      return 0;
    }
    const auto config = make_config(flags);
    if (*profile) gt::cmd_profile(config, std::cerr);
    else if (*compare) gt::cmd_compare(config, std::cerr);
    else if (*train) gt::cmd_train(config, std::cerr);
    else if (*evaluate) gt::cmd_evaluate(config, std::cerr);
    else if (*report) std::cout << gt::cmd_report(config, report_options);
  } catch (const gt::Error& e) {
    std::cerr << "glossotype: " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "glossotype: " << e.what() << '\n';
    return kData;
  }
  return 0;
}
