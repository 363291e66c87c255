#include <gtest/gtest.h>

#include <sys/wait.h>

#include "support/oracles.hpp"

namespace gt = glossotype;
namespace syn = glossotype::synthetic;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args, const oracle::TempDir& dir) {
  const auto out_file = dir / "stdout.txt";
  const std::string cmd = std::string(GLOSSOTYPE_CLI) + " " + args + " > " + out_file.string() + " 2> " +
                          (dir / "stderr.txt").string();
  const int status = std::system(cmd.c_str());
  Run r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = oracle::read_text(out_file);
  return r;
}

std::string pipeline_flags(const oracle::TempDir& dir, const std::string& out) {
  return "--corpus-dir " + (dir / "corpus").string() + " -o " + (dir / out).string() + " --seed 3";
}

std::string train_flags() { return " --docs-per-lang 20 --sentences-per-doc 10 --epochs 5 --batch-size 16"; }

}  // namespace

TEST(Cli, UsageErrorsExitWithOne) {
  oracle::TempDir dir("cli");
  EXPECT_EQ(run("", dir).code, 1);
  EXPECT_EQ(run("frobnicate", dir).code, 1);
  EXPECT_EQ(run("compare --linkage ward", dir).code, 1);
  EXPECT_EQ(run("identify", dir).code, 1);
  oracle::write_text(dir / "bad.json", R"({"no_such_key": 1})");
  EXPECT_EQ(run("profile -c " + (dir / "bad.json").string(), dir).code, 1);
}

TEST(Cli, HelpAndVersionSucceed) {
  oracle::TempDir dir("cli");
  EXPECT_EQ(run("--help", dir).code, 0);
  const auto v = run("--version", dir);
  EXPECT_EQ(v.code, 0);
  EXPECT_NE(v.out.find("glossotype"), std::string::npos);
}

TEST(Cli, DataErrorsExitWithTwo) {
  oracle::TempDir dir("cli");
  EXPECT_EQ(run("profile --corpus-dir " + (dir / "missing").string() + " -o " + (dir / "o").string(), dir).code, 2);
  oracle::write_text(dir / "corpus" / "aa" / "tagged.conllu", "1\tx\t_\tNOPE\t_\t_\t_\t_\t_\t_\n\n");
  EXPECT_EQ(run("profile " + pipeline_flags(dir, "o"), dir).code, 2);
  oracle::write_text(dir / "model.json", "{}");
  oracle::write_text(dir / "p.conllu", "1\tx\t_\tNOUN\t_\t_\t_\t_\t_\t_\n\n");
  EXPECT_EQ(run("identify -m " + (dir / "model.json").string() + " " + (dir / "p.conllu").string(), dir).code, 2);
}

TEST(Cli, IdenticalLanguagesAreANumericFailure) {
  oracle::TempDir dir("cli");
  syn::write_corpus_tree(dir / "corpus", syn::independent_languages(1, 4), 100, 100, 1);
  for (const char* code : {"l1", "l2"}) {
    gt::fs::copy(dir / "corpus" / "l0", dir / "corpus" / code);
  }
  ASSERT_EQ(run("profile " + pipeline_flags(dir, "o"), dir).code, 0);
  EXPECT_EQ(run("compare " + pipeline_flags(dir, "o"), dir).code, 3);
}

TEST(Cli, FullRunIsDeterministic) {
  oracle::TempDir dir("cli");
  syn::write_corpus_tree(dir / "corpus", syn::family_languages(2, 2, 8), 200, 200, 2);
  for (const char* out : {"a", "b"}) {
    const auto flags = pipeline_flags(dir, out);
    ASSERT_EQ(run("profile " + flags, dir).code, 0);
    ASSERT_EQ(run("compare " + flags, dir).code, 0);
    ASSERT_EQ(run("train " + flags + train_flags(), dir).code, 0);
    ASSERT_EQ(run("evaluate " + flags + train_flags() + " --folds 4", dir).code, 0);
    const auto report = run("report --top 3 --distinct-only " + flags, dir);
    ASSERT_EQ(report.code, 0);
    EXPECT_NE(report.out.find("# Language typology report"), std::string::npos);
  }
  EXPECT_EQ(oracle::snapshot(dir / "a"), oracle::snapshot(dir / "b"));

  const auto id = run("identify -m " + (dir / "a" / "model.json").string() + " " +
                          (dir / "corpus" / "f1l1" / "tagged.conllu").string(),
                      dir);
  ASSERT_EQ(id.code, 0);
  std::istringstream lines(id.out);
  std::string label;
  double p = 0, sum = 0;
  int rows = 0;
  while (lines >> label >> p) {
    sum += p;
    ++rows;
  }
  EXPECT_EQ(rows, 4);
  EXPECT_NEAR(sum, 1.0, 1e-9);
}

TEST(Cli, ConfigFileWithFlagOverride) {
  oracle::TempDir dir("cli");
  syn::write_corpus_tree(dir / "corpus", syn::independent_languages(3, 1), 100, 50, 2);
  oracle::write_text(dir / "cfg.json", R"({"corpus_dir": "corpus", "output_dir": "from_config", "top_k_char": 5})");
  ASSERT_EQ(run("profile -c " + (dir / "cfg.json").string() + " --top-k-char 7", dir).code, 0);
  const auto p = gt::load_profile(dir / "from_config" / "profiles" / "l0.char.tsv");
  EXPECT_EQ(p.size(), 14u);
}
