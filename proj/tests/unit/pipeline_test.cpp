#include <gtest/gtest.h>

#include "support/oracles.hpp"

namespace gt = glossotype;
namespace syn = glossotype::synthetic;

namespace {

gt::PipelineConfig toy_config(const gt::fs::path& root, const std::string& out = "out") {
  gt::PipelineConfig c;
  c.corpus_dir = root / "corpus";
  c.output_dir = root / out;
  c.dataset.docs_per_lang = 20;
  c.dataset.sentences_per_doc = 10;
  c.train.epochs = 5;
  c.train.batch_size = 16;
  c.folds = 4;
  c.seed = 12;
  return c;
}

void write_toy_corpus(const gt::fs::path& root) {
  syn::write_corpus_tree(root / "corpus", syn::family_languages(2, 2, 5), 300, 200, 6);
}

void run_all(const gt::PipelineConfig& c) {
  std::ostringstream log;
  gt::cmd_profile(c, log);
  gt::cmd_compare(c, log);
  gt::cmd_train(c, log);
  gt::cmd_evaluate(c, log);
  gt::cmd_report(c, gt::ReportOptions{});
}

}  // namespace

TEST(Config, AppliesKeysAndResolvesPaths) {
  oracle::TempDir dir("cfg");
  oracle::write_text(dir / "c.json", R"({"corpus_dir": "data", "output_dir": "/tmp/x", "languages": ["en", "fr"],
    "min_words_per_language": {"zh": 1}, "linkage": "complete", "normalize": "minmax", "epochs": 7,
    "learning_rate": 0.01, "seed": 99})");
  const auto c = gt::load_config(dir / "c.json");
  EXPECT_EQ(c.corpus_dir, dir / "data");
  EXPECT_EQ(c.output_dir, gt::fs::path("/tmp/x"));
  EXPECT_EQ(c.languages, (std::vector<std::string>{"en", "fr"}));
  EXPECT_EQ(c.min_words_for("zh"), 1u);
  EXPECT_EQ(c.min_words_for("en"), 3u);
  EXPECT_EQ(c.linkage, gt::Linkage::complete);
  EXPECT_TRUE(c.normalize_minmax);
  EXPECT_EQ(c.train.epochs, 7u);
  EXPECT_EQ(c.train.adam.alpha, 0.01);
  EXPECT_EQ(c.seed, 99u);
}

TEST(Config, RejectsUnknownKeysAndBadValues) {
  gt::PipelineConfig c;
  for (const char* text : {R"({"epoch": 3})", R"({"linkage": "ward"})", R"({"epochs": "many"})", "[1]"}) {
    try {
      gt::apply_config(c, nlohmann::json::parse(text), {});
      FAIL() << text;
    } catch (const gt::Error& e) {
      EXPECT_EQ(e.code(), gt::Errc::invalid_argument) << text;
    }
  }
}

TEST(Pipeline, ProducesEveryArtifact) {
  oracle::TempDir dir("pipe");
  write_toy_corpus(dir.path());
  const auto c = toy_config(dir.path());
  run_all(c);
  for (const char* rel :
       {"profiles/f0l0.char.tsv", "profiles/f0l0.char.json", "profiles/f1l1.pos.tsv", "profiles/summary.tsv",
        "compare/written.tsv", "compare/written.phy", "compare/written.nwk", "compare/structure.nwk",
        "compare/overall.tsv", "compare/graph.dot", "compare/graph.json", "model.json", "metrics/metrics.tsv",
        "metrics/summary.json", "report.md"}) {
    EXPECT_TRUE(gt::fs::is_regular_file(c.output_dir / rel)) << rel;
  }
  const auto report = oracle::read_text(c.output_dir / "report.md");
  EXPECT_NE(report.find("label propagation"), std::string::npos);
  EXPECT_NE(report.find("f1l0"), std::string::npos);

  const auto overall = gt::read_matrix_tsv(c.compare_dir() / "overall.tsv", gt::MatrixKind::overall);
  const auto written = gt::read_matrix_tsv(c.compare_dir() / "written.tsv", gt::MatrixKind::written);
  const auto structure = gt::read_matrix_tsv(c.compare_dir() / "structure.tsv", gt::MatrixKind::structure);
  EXPECT_EQ(overall, gt::average_matrices(written, structure));

  const auto ranked = gt::cmd_identify(c.model_path(), c.corpus_dir / "f1l0" / "tagged.conllu");
  ASSERT_EQ(ranked.size(), 4u);
  double sum = 0;
  for (const auto& [l, p] : ranked) sum += p;
  EXPECT_NEAR(sum, 1.0, 1e-9);
}

TEST(Pipeline, RerunIsByteIdentical) {
  oracle::TempDir dir("pipe");
  write_toy_corpus(dir.path());
  const auto a = toy_config(dir.path(), "a");
  const auto b = toy_config(dir.path(), "b");
  run_all(a);
  run_all(b);
  const auto sa = oracle::snapshot(a.output_dir);
  EXPECT_FALSE(sa.empty());
  EXPECT_EQ(sa, oracle::snapshot(b.output_dir));
}

TEST(Pipeline, MissingCorpusIsADataError) {
  oracle::TempDir dir("pipe");
  auto c = toy_config(dir.path());
  c.languages = {"zz"};
  std::ostringstream log;
  try {
    gt::cmd_profile(c, log);
    FAIL();
  } catch (const gt::Error& e) {
    EXPECT_FALSE(gt::is_numeric_failure(e.code()));
  }
}
