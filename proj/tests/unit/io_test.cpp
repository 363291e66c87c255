#include <gtest/gtest.h>

#include "support/oracles.hpp"

namespace gt = glossotype;

TEST(ProfileFiles, RoundTrip) {
  oracle::TempDir dir("io");
  gt::FeatureProfile p;
  p.language_code = "en";
  p.kind = gt::FeatureKind::char_ngram;
  p.freqs = {{"th", 0.1 + 1e-17}, {"he", 1.0 / 3.0}, {"the", 0.0625}};
  p.units_by_arity = {{2, 30}, {3, 16}};
  p.total_units = 46;
  gt::save_profile(p, dir / "en.char.tsv");
  EXPECT_TRUE(gt::fs::exists(dir / "en.char.json"));
  EXPECT_EQ(gt::load_profile(dir / "en.char.tsv"), p);
  const auto text = oracle::read_text(dir / "en.char.tsv");
  EXPECT_EQ(text.substr(0, text.find('\n')), "key\tfrequency");
  EXPECT_EQ(text.substr(text.find('\n') + 1, 2), "he");
}

TEST(ProfileFiles, MalformedRowsReportLine) {
  oracle::TempDir dir("io");
  gt::FeatureProfile p;
  p.language_code = "xx";
  p.freqs = {{"ab", 1.0}};
  gt::save_profile(p, dir / "xx.char.tsv");
  oracle::write_text(dir / "xx.char.tsv", "key\tfrequency\nab\tnot-a-number\n");
  try {
    gt::load_profile(dir / "xx.char.tsv");
    FAIL();
  } catch (const gt::Error& e) {
    EXPECT_EQ(e.code(), gt::Errc::malformed_line);
    EXPECT_NE(std::string(e.what()).find('2'), std::string::npos);
  }
}

TEST(MatrixFiles, TsvRoundTripAndPhylip) {
  oracle::TempDir dir("io");
  gt::SplitMix64 rng(3);
  const auto m = oracle::random_metric_matrix(5, rng);
  oracle::write_text(dir / "m.tsv", gt::matrix_tsv(m));
  EXPECT_EQ(gt::read_matrix_tsv(dir / "m.tsv", gt::MatrixKind::overall), m);
  const auto phy = gt::matrix_phylip(m);
  std::istringstream in(phy);
  std::size_t n = 0;
  in >> n;
  EXPECT_EQ(n, 5u);
  for (std::size_t i = 0; i < n; ++i) {
    std::string label;
    in >> label;
    EXPECT_EQ(label, m.labels()[i]);
    for (std::size_t j = 0; j < n; ++j) {
      double v = 0;
      in >> v;
      EXPECT_EQ(v, m(i, j));
    }
  }
}

TEST(GraphFiles, JsonRoundTripAndDot) {
  gt::SimilarityGraph g{{"a", "b", "c", "d"}, {{0, 1, -1.5}, {1, 2, -1.2}, {2, 3, -2.0}}, {0, 0, 1, 1}};
  const auto doc = gt::graph_json(g);
  EXPECT_EQ(doc.at("community_method"), "label propagation");
  EXPECT_EQ(gt::graph_from_json(nlohmann::json::parse(doc.dump())), g);
  const auto dot = gt::graph_dot(g);
  EXPECT_NE(dot.find("\"a\" -- \"b\" [weight=1.5, zscore=-1.5]"), std::string::npos);
  EXPECT_NE(dot.find("\"b\" -- \"c\" [weight=1.2, zscore=-1.2, inter_community=true, color=red, style=bold]"),
            std::string::npos);
  EXPECT_NE(dot.find("\"c\" [community=1, color=2, fillcolor=2]"), std::string::npos);
}

TEST(ModelFiles, RoundTripIsExact) {
  oracle::TempDir dir("io");
  gt::SplitMix64 rng(8);
  gt::TrainedModel t;
  t.model = oracle::random_model(3, 8, 2, rng);
  t.model.w1(0, 0) = 0.1 + 0.2;
  t.feature_index = {"ADP|DET|NOUN", "DET|NOUN|VERB", "NOUN|VERB|ADP"};
  t.label_names = {"en", "fr"};
  t.train.seed = 17;
  t.dataset.seed = 4;
  gt::save_model(t, dir / "model.json");
  const auto back = gt::load_model(dir / "model.json");
  EXPECT_EQ(back, t);
  EXPECT_EQ(back.train.seed, 17u);
  EXPECT_EQ(back.dataset.seed, 4u);
  EXPECT_EQ(back.train.hidden, 8u);
}

TEST(ModelFiles, RejectsInconsistentShapes) {
  gt::SplitMix64 rng(8);
  gt::TrainedModel t;
  t.model = oracle::random_model(3, 8, 2, rng);
  t.feature_index = {"a", "b", "c"};
  t.label_names = {"en", "fr"};
  auto doc = gt::model_json(t);
  doc["label_names"] = {"en"};
  EXPECT_THROW(gt::model_from_json(doc), gt::Error);
  doc = gt::model_json(t);
  doc["feature_index"] = {"c", "b", "a"};
  EXPECT_THROW(gt::model_from_json(doc), gt::Error);
  doc = gt::model_json(t);
  doc["W1"][0] = {1.0};
  EXPECT_THROW(gt::model_from_json(doc), gt::Error);
  doc = gt::model_json(t);
  doc.erase("b2");
  try {
    gt::model_from_json(doc);
    FAIL();
  } catch (const gt::Error& e) {
    EXPECT_EQ(e.code(), gt::Errc::model_format_error);
  }
}

TEST(MetricsFiles, TsvColumns) {
  gt::CrossValidationResult cv;
  cv.pooled = gt::metrics({{3, 1}, {0, 4}});
  cv.folds = {cv.pooled};
  const auto tsv = gt::metrics_tsv(cv, {"en", "fr"});
  EXPECT_EQ(tsv, "language\tprecision\trecall\tf_score\tsupport\nen\t1\t0.75\t0.8571428571428571\t4\n"
                 "fr\t0.8\t1\t0.888888888888889\t4\n");
  const auto doc = gt::metrics_json(cv, {"en", "fr"});
  EXPECT_EQ(doc.at("pooled_accuracy").get<double>(), 7.0 / 8.0);
}
