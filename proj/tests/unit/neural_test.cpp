#include <gtest/gtest.h>

#include "support/oracles.hpp"

namespace gt = glossotype;
namespace syn = glossotype::synthetic;

namespace {

std::vector<double> random_input(std::size_t n, gt::SplitMix64& rng) {
  std::vector<double> x(n);
  for (auto& v : x) v = rng.uniform();
  return x;
}

gt::SparseVector sparsify(const std::vector<double>& x) {
  gt::SparseVector s;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] != 0.0) {
      s.index.push_back(static_cast<std::uint32_t>(i));
      s.value.push_back(x[i]);
    }
  }
  return s;
}

double relative_error(double a, double b) { return std::abs(a - b) / std::max(1e-8, std::abs(a) + std::abs(b)); }

std::vector<gt::TaggedCorpus> synthetic_corpora(std::size_t languages, std::uint64_t seed) {
  std::vector<gt::TaggedCorpus> out;
  for (const auto& lang : syn::independent_languages(languages, seed)) {
    out.push_back(syn::tagged_corpus(lang, 400, seed + out.size()));
  }
  return out;
}

gt::DocumentDataset small_dataset(std::uint64_t seed = 1) {
  const auto corpora = synthetic_corpora(3, seed);
  return gt::build_dataset(corpora, gt::DatasetOptions{30, 20, seed});
}

}  // namespace

TEST(Forward, MatchesOracle) {
  gt::SplitMix64 rng(1);
  for (int trial = 0; trial < 50; ++trial) {
    const auto model = oracle::random_model(12, 8, 4, rng);
    auto x = random_input(12, rng);
    for (auto& v : x)
      if (rng.uniform() < 0.5) v = 0.0;
    const auto want = oracle::forward(model, x);
    const auto dense = gt::forward(model, x);
    const auto sparse = gt::forward(model, sparsify(x));
    for (std::size_t c = 0; c < 4; ++c) {
      EXPECT_NEAR(dense[c], want[c], 1e-14);
      EXPECT_NEAR(sparse[c], want[c], 1e-14);
    }
  }
}

TEST(Forward, ZeroModelIsUniform) {
  const auto model = gt::MlpModel::zeros(5, 8, 39);
  const std::vector<double> x = {0.2, 0.2, 0.2, 0.2, 0.2};
  const auto p = gt::forward(model, x);
  for (double v : p) EXPECT_DOUBLE_EQ(v, 1.0 / 39.0);
  EXPECT_NEAR(gt::loss(p, 0), std::log(39.0), 1e-9);
}

TEST(Forward, ExtremeLogitsStayFinite) {
  auto model = gt::MlpModel::zeros(1, 1, 2);
  model.w1(0, 0) = 1e6;
  model.w2(0, 0) = 1e6;
  const auto p = gt::forward(model, std::vector<double>{1.0});
  EXPECT_EQ(p[0], 1.0);
  EXPECT_EQ(p[1], 0.0);
  EXPECT_TRUE(std::isfinite(gt::loss(p, 1)));
}

TEST(Forward, DimensionMismatch) {
  const auto model = gt::MlpModel::zeros(3, 2, 2);
  EXPECT_THROW(gt::forward(model, std::vector<double>{1.0}), gt::Error);
  EXPECT_THROW(gt::forward(model, gt::SparseVector{{7}, {1.0}}), gt::Error);
}

TEST(Backward, MatchesFiniteDifferences) {
  gt::SplitMix64 rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    auto model = oracle::random_model(10, 8, 4, rng);
    gt::Matrix rows(6, 10);
    std::vector<std::size_t> labels;
    for (std::size_t r = 0; r < rows.rows; ++r) {
      for (std::size_t f = 0; f < rows.cols; ++f) rows(r, f) = rng.uniform();
      labels.push_back(rng.below(4));
    }
    double mean_loss = 0.0;
    const auto grads = gt::backward(model, rows, labels, &mean_loss);
    EXPECT_NEAR(mean_loss, oracle::batch_loss(model, rows, labels), 1e-12);
    auto params = model.parameters();
    const auto g = grads.parameters();
    for (std::size_t block = 0; block < 4; ++block) {
      for (std::size_t i = 0; i < params[block].size(); ++i) {
        const double saved = params[block][i];
        const double h = 1e-6;
        params[block][i] = saved + h;
        const double up = oracle::batch_loss(model, rows, labels);
        params[block][i] = saved - h;
        const double down = oracle::batch_loss(model, rows, labels);
        params[block][i] = saved;
        const double numeric = (up - down) / (2 * h);
        EXPECT_LE(relative_error(g[block][i], numeric), 1e-4)
            << "block " << block << " index " << i << ": " << g[block][i] << " vs " << numeric;
      }
    }
  }
}

TEST(Backward, SparseEqualsDense) {
  gt::SplitMix64 rng(9);
  const auto model = oracle::random_model(15, 8, 3, rng);
  gt::Matrix dense(5, 15);
  std::vector<gt::SparseVector> sparse;
  std::vector<std::size_t> labels;
  for (std::size_t r = 0; r < 5; ++r) {
    auto x = random_input(15, rng);
    for (auto& v : x)
      if (rng.uniform() < 0.6) v = 0.0;
    std::copy(x.begin(), x.end(), dense.data.begin() + static_cast<std::ptrdiff_t>(r * 15));
    sparse.push_back(sparsify(x));
    labels.push_back(rng.below(3));
  }
  const std::vector<std::size_t> batch = {0, 1, 2, 3, 4};
  const auto a = gt::backward(model, dense, labels);
  const auto b = gt::backward(model, sparse, labels, batch);
  const auto pa = a.parameters();
  const auto pb = b.parameters();
  for (std::size_t block = 0; block < 4; ++block) {
    for (std::size_t i = 0; i < pa[block].size(); ++i) EXPECT_NEAR(pa[block][i], pb[block][i], 1e-15);
  }
}

TEST(Backward, Errors) {
  const auto model = gt::MlpModel::zeros(2, 2, 2);
  gt::Matrix rows(1, 2, 0.5);
  EXPECT_THROW(gt::backward(model, rows, std::vector<std::size_t>{5}), gt::Error);
  EXPECT_THROW(gt::backward(model, rows, std::vector<std::size_t>{0, 1}), gt::Error);
  EXPECT_THROW(gt::backward(model, gt::Matrix(0, 2), std::vector<std::size_t>{}), gt::Error);
}

TEST(Adam, MatchesScalarTrace) {
  gt::SplitMix64 rng(4);
  std::vector<double> params(20), scalar_params;
  for (auto& p : params) p = rng.uniform(-1, 1);
  scalar_params = params;
  gt::AdamVectorState state(params.size());
  std::vector<oracle::ScalarAdam> scalar(params.size());
  for (int step = 0; step < 10; ++step) {
    std::vector<double> grads(params.size());
    for (auto& g : grads) g = rng.uniform(-2, 2);
    gt::adam_step(params, grads, state);
    for (std::size_t i = 0; i < params.size(); ++i) scalar_params[i] = scalar[i].step(scalar_params[i], grads[i]);
    for (std::size_t i = 0; i < params.size(); ++i) EXPECT_NEAR(params[i], scalar_params[i], 1e-12);
  }
  EXPECT_EQ(state.t, 10u);
}

TEST(Adam, FirstStepMovesByAlpha) {
  std::vector<double> params = {0.0, 0.0, 0.0};
  const std::vector<double> grads = {3.0, -0.5, 1e-3};
  gt::AdamVectorState state(3);
  gt::adam_step(params, grads, state);
  EXPECT_NEAR(params[0], -0.001, 1e-10);
  EXPECT_NEAR(params[1], 0.001, 1e-10);
  EXPECT_NEAR(params[2], -0.001, 1e-8);
}

TEST(Adam, ModelStepMatchesFlatStep) {
  gt::SplitMix64 rng(12);
  auto model = oracle::random_model(4, 3, 2, rng);
  const auto grads = oracle::random_model(4, 3, 2, rng);
  auto expected = model;
  auto state = gt::AdamState::for_model(model);
  gt::adam_step(model, grads, state);
  auto params = expected.parameters();
  const auto g = grads.parameters();
  for (std::size_t block = 0; block < 4; ++block) {
    gt::AdamVectorState flat(params[block].size());
    gt::adam_step(params[block], g[block], flat);
  }
  EXPECT_EQ(model, expected);
}

TEST(Adam, ShapeMismatch) {
  std::vector<double> params(3), grads(2);
  gt::AdamVectorState state(3);
  EXPECT_THROW(gt::adam_step(params, grads, state), gt::Error);
}

TEST(Initialization, HeAndGlorotScales) {
  const auto model = gt::initialize_model(2000, 8, 5, 3);
  double ss = 0.0;
  for (double w : model.w1.data) ss += w * w;
  const double sd = std::sqrt(ss / static_cast<double>(model.w1.data.size()));
  EXPECT_NEAR(sd, std::sqrt(2.0 / 2000.0), 0.05 * std::sqrt(2.0 / 2000.0));
  const double limit = std::sqrt(6.0 / 13.0);
  for (double w : model.w2.data) EXPECT_LE(std::abs(w), limit);
  for (double b : model.b1) EXPECT_EQ(b, 0.0);
  for (double b : model.b2) EXPECT_EQ(b, 0.0);
  EXPECT_EQ(gt::initialize_model(2000, 8, 5, 3), model);
  EXPECT_NE(gt::initialize_model(2000, 8, 5, 4), model);
}

TEST(Dataset, RowsAreNormalizedXFreeTrigrams) {
  const auto ds = small_dataset();
  EXPECT_EQ(ds.size(), 90u);
  EXPECT_EQ(ds.label_names, (std::vector<std::string>{"l0", "l1", "l2"}));
  EXPECT_TRUE(std::is_sorted(ds.feature_index.begin(), ds.feature_index.end()));
  for (const auto& key : ds.feature_index) {
    EXPECT_TRUE(key.rfind("X|", 0) != 0 && key.find("|X|") == std::string::npos &&
                key.substr(key.size() - 2) != "|X")
        << key;
  }
  for (std::size_t r = 0; r < ds.size(); ++r) {
    const auto& row = ds.rows[r];
    EXPECT_TRUE(std::is_sorted(row.index.begin(), row.index.end()));
    double sum = 0.0;
    for (double v : row.value) sum += v;
    EXPECT_NEAR(sum, 1.0, 1e-12);
    EXPECT_EQ(ds.labels[r], r / 30);
  }
  EXPECT_EQ(small_dataset(), ds);
  EXPECT_NE(small_dataset(2), ds);
}

TEST(Dataset, DocumentMatchesSampledSentences) {
  const auto corpora = synthetic_corpora(2, 5);
  const gt::DatasetOptions opts{4, 10, 77};
  const auto ds = gt::build_dataset(corpora, opts);
  // Document 2 of language 1 is drawn with its own derived seed.
  const auto sample = gt::sample_sentences(corpora[1], 10, gt::derive_seed(77, 1, 2));
  const auto row = gt::document_features(sample, ds.feature_index);
  EXPECT_EQ(ds.rows[4 + 2], row);
}

TEST(Dataset, SkipsDocumentsWithoutTriples) {
  using gt::UposTag;
  gt::TaggedCorpus a{"a", {{{UposTag::NOUN, UposTag::VERB, UposTag::NOUN}, "x y z"}}};
  gt::TaggedCorpus b{"b", {{{UposTag::DET, UposTag::NOUN, UposTag::VERB}, "p q r"},
                           {{UposTag::X, UposTag::X, UposTag::X}, "u v w"}}};
  const std::vector<gt::TaggedCorpus> corpora = {a, b};
  const auto ds = gt::build_dataset(corpora, gt::DatasetOptions{40, 1, 3});
  std::size_t b_rows = 0;
  for (auto l : ds.labels) b_rows += l == 1;
  EXPECT_GT(b_rows, 0u);
  EXPECT_LT(b_rows, 40u);
  EXPECT_EQ(ds.size(), 40u + b_rows);

  gt::TaggedCorpus only_x{"x", {{{UposTag::X, UposTag::NOUN, UposTag::X}, "u v w"}}};
  const std::vector<gt::TaggedCorpus> bad = {a, only_x};
  try {
    gt::build_dataset(bad, gt::DatasetOptions{5, 1, 3});
    FAIL();
  } catch (const gt::Error& e) {
    EXPECT_EQ(e.code(), gt::Errc::no_triples);
  }
}

TEST(DocumentFeatures, IgnoresUnknownTrigrams) {
  using gt::UposTag;
  const gt::FeatureIndex index = {"DET|NOUN|VERB", "NOUN|VERB|ADP"};
  const std::vector<gt::PosSentence> passage = {
      {{UposTag::DET, UposTag::NOUN, UposTag::VERB, UposTag::ADP, UposTag::PRON}, ""},
      {{UposTag::DET, UposTag::NOUN, UposTag::VERB}, ""}};
  const auto row = gt::document_features(passage, index);
  EXPECT_EQ(row.index, (std::vector<std::uint32_t>{0, 1}));
  EXPECT_DOUBLE_EQ(row.value[0], 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(row.value[1], 1.0 / 3.0);
  const std::vector<gt::PosSentence> unknown = {{{UposTag::PRON, UposTag::PRON, UposTag::PRON}, ""}};
  EXPECT_THROW(gt::document_features(unknown, index), gt::Error);
}

TEST(Train, LearnsSeparableLanguages) {
  const auto ds = small_dataset();
  gt::TrainOptions opts;
  opts.epochs = 40;
  opts.batch_size = 8;
  opts.adam.alpha = 0.01;
  opts.seed = 3;
  const auto result = gt::train(ds, opts);
  ASSERT_EQ(result.loss_history.size(), 40u);
  EXPECT_LT(result.loss_history.back(), result.loss_history.front());
  std::vector<std::size_t> all(ds.size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  EXPECT_GE(gt::metrics(gt::evaluate(result.model, ds, all)).accuracy, 0.95);
  EXPECT_EQ(gt::train(ds, opts).model, result.model);
}

TEST(Train, RejectsBadOptions) {
  const auto ds = small_dataset();
  gt::TrainOptions opts;
  opts.batch_size = 0;
  EXPECT_THROW(gt::train(ds, opts), gt::Error);
  EXPECT_THROW(gt::train(gt::DocumentDataset{}, gt::TrainOptions{}), gt::Error);
}

TEST(Train, DivergenceIsANumericFailure) {
  const auto ds = small_dataset();
  gt::TrainOptions opts;
  opts.epochs = 3;
  opts.adam.alpha = std::numeric_limits<double>::infinity();
  try {
    gt::train(ds, opts);
    FAIL();
  } catch (const gt::Error& e) {
    EXPECT_TRUE(gt::is_numeric_failure(e.code()));
  }
}

TEST(Identify, RankedPosteriorsSumToOne) {
  const auto ds = small_dataset();
  const auto model = gt::train(ds, 5, 16, 1).model;
  const auto corpora = synthetic_corpora(3, 1);
  const auto ranked = gt::identify(model, ds.feature_index, ds.label_names,
                                   std::span<const gt::PosSentence>(corpora[2].sentences).first(20));
  ASSERT_EQ(ranked.size(), 3u);
  double sum = 0.0;
  for (const auto& [l, p] : ranked) sum += p;
  EXPECT_NEAR(sum, 1.0, 1e-12);
  EXPECT_GE(ranked[0].second, ranked[1].second);
  EXPECT_GE(ranked[1].second, ranked[2].second);
  EXPECT_THROW(gt::identify(model, ds.feature_index, {"a"}, corpora[0].sentences), gt::Error);
}

TEST(Metrics, HandExample) {
  const gt::ConfusionMatrix c = {{5, 1, 0}, {2, 3, 0}, {0, 0, 0}};
  const auto m = gt::metrics(c);
  EXPECT_DOUBLE_EQ(m.accuracy, 8.0 / 11.0);
  EXPECT_DOUBLE_EQ(m.precision[0], 5.0 / 7.0);
  EXPECT_DOUBLE_EQ(m.recall[0], 5.0 / 6.0);
  EXPECT_DOUBLE_EQ(m.f_score[0], 2 * (5.0 / 7.0) * (5.0 / 6.0) / (5.0 / 7.0 + 5.0 / 6.0));
  EXPECT_DOUBLE_EQ(m.precision[1], 3.0 / 4.0);
  EXPECT_DOUBLE_EQ(m.recall[1], 3.0 / 5.0);
  EXPECT_EQ(m.precision[2], 0.0);
  EXPECT_EQ(m.f_score[2], 0.0);
  EXPECT_EQ(m.support, (std::vector<std::uint64_t>{6, 5, 0}));
  EXPECT_THROW(gt::metrics(gt::ConfusionMatrix{{0, 0}, {0, 0}}), gt::Error);
}

TEST(StratifiedFolds, PartitionAndBalance) {
  const auto ds = small_dataset();
  const auto folds = gt::stratified_folds(ds, 10, 5);
  ASSERT_EQ(folds.size(), 10u);
  std::vector<int> seen(ds.size(), 0);
  for (const auto& fold : folds) {
    std::vector<std::size_t> per_class(3, 0);
    for (auto r : fold) {
      ++seen[r];
      ++per_class[ds.labels[r]];
    }
    for (auto n : per_class) EXPECT_EQ(n, 3u);
  }
  for (int s : seen) EXPECT_EQ(s, 1);
  EXPECT_EQ(gt::stratified_folds(ds, 10, 5), folds);
  try {
    gt::stratified_folds(ds, 31, 5);
    FAIL();
  } catch (const gt::Error& e) {
    EXPECT_EQ(e.code(), gt::Errc::too_few_rows_per_class);
  }
}

TEST(KFold, DeterministicAndOrderInvariant) {
  const auto ds = small_dataset();
  gt::TrainOptions opts;
  opts.epochs = 5;
  opts.batch_size = 16;
  opts.seed = 9;
  const auto a = gt::kfold_cv(ds, 5, opts);
  EXPECT_EQ(a.folds.size(), 5u);
  std::uint64_t pooled_total = 0;
  for (const auto& row : a.pooled.confusion)
    for (auto v : row) pooled_total += v;
  EXPECT_EQ(pooled_total, ds.size());

  auto permuted = ds;
  std::vector<std::size_t> order(ds.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  gt::SplitMix64 rng(1);
  rng.shuffle(std::span<std::size_t>(order));
  for (std::size_t i = 0; i < order.size(); ++i) {
    permuted.rows[i] = ds.rows[order[i]];
    permuted.labels[i] = ds.labels[order[i]];
  }
  const auto b = gt::kfold_cv(permuted, 5, opts);
  EXPECT_EQ(b.pooled.confusion, a.pooled.confusion);
  EXPECT_EQ(b.mean_accuracy, a.mean_accuracy);
}
