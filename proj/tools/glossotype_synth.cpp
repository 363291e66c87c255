// glossotype-synth: writes a synthetic corpus tree (<dir>/<code>/raw.txt and
// tagged.conllu) for trying the pipeline without real data.

#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "glossotype/synthetic.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Generate a synthetic multi-language corpus"};
  std::string out_dir;
  std::size_t families = 3, per_family = 3, independent = 0, raw = 1500, tagged = 1500;
  double own_weight = 0.2;
  std::uint64_t seed = 1;
  app.add_option("output", out_dir, "directory to create")->required();
  app.add_option("--families", families, "language families");
  app.add_option("--per-family", per_family, "languages per family");
  app.add_option("--own-weight", own_weight, "weight of each language's own chains against its family's")
      ->check(CLI::Range(0.0, 1.0));
  app.add_option("--independent", independent, "generate this many unrelated languages instead of families");
  app.add_option("--raw-sentences", raw, "raw sentences per language");
  app.add_option("--tagged-sentences", tagged, "tagged sentences per language");
  app.add_option("--seed", seed, "generator seed");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  namespace syn = glossotype::synthetic;
  try {
    const auto languages = independent > 0 ? syn::independent_languages(independent, seed)
                                           : syn::family_languages(families, per_family, seed, own_weight);
    syn::write_corpus_tree(out_dir, languages, raw, tagged, glossotype::derive_seed(seed, 99));
    for (const auto& l : languages) std::cout << l.code << '\n';
  } catch (const std::exception& e) {
    std::cerr << "glossotype-synth: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
