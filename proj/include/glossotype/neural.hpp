#pragma once

// Two-layer feed-forward classifier over POS tri-gram probabilities:
// inputs -> dense(relu, `hidden` units) -> dense(softmax, one unit per
// language), trained with categorical cross-entropy and Adam.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "glossotype/corpus.hpp"
#include "glossotype/distance.hpp"
#include "glossotype/error.hpp"
#include "glossotype/parallel.hpp"
#include "glossotype/posgram.hpp"
#include "glossotype/rng.hpp"

namespace glossotype {

// ---------------------------------------------------------------------------
// Storage

/// Row-major dense matrix.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c, double fill = 0.0) : rows(r), cols(c), data(r * c, fill) {}

  double& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }
  std::span<const double> row(std::size_t r) const { return {data.data() + r * cols, cols}; }

  friend bool operator==(const Matrix&, const Matrix&) = default;
};

/// Sparse feature vector with strictly increasing indices.
struct SparseVector {
  std::vector<std::uint32_t> index;
  std::vector<double> value;

  std::size_t nonzeros() const noexcept { return index.size(); }

  std::vector<double> to_dense(std::size_t size) const {
    std::vector<double> out(size, 0.0);
    for (std::size_t k = 0; k < index.size(); ++k) out[index[k]] = value[k];
    return out;
  }

  friend bool operator==(const SparseVector&, const SparseVector&) = default;
};

// ---------------------------------------------------------------------------
// Model

struct MlpModel {
  Matrix w1;               // inputs x hidden
  std::vector<double> b1;  // hidden
  Matrix w2;               // hidden x classes
  std::vector<double> b2;  // classes

  static MlpModel zeros(std::size_t inputs, std::size_t hidden, std::size_t classes) {
    return MlpModel{Matrix(inputs, hidden), std::vector<double>(hidden, 0.0), Matrix(hidden, classes),
                    std::vector<double>(classes, 0.0)};
  }

  std::size_t inputs() const noexcept { return w1.rows; }
  std::size_t hidden() const noexcept { return w1.cols; }
  std::size_t classes() const noexcept { return w2.cols; }

  /// The four parameter arrays in a fixed order: w1, b1, w2, b2.
  std::array<std::span<double>, 4> parameters() { return {w1.data, b1, w2.data, b2}; }
  std::array<std::span<const double>, 4> parameters() const { return {w1.data, b1, w2.data, b2}; }

  bool all_finite() const {
    for (auto block : parameters()) {
      for (double v : block) {
        if (!std::isfinite(v)) return false;
      }
    }
    return true;
  }

  friend bool operator==(const MlpModel&, const MlpModel&) = default;
};

/// Gradients share the parameter layout.
using MlpGradients = MlpModel;

inline constexpr std::size_t kDefaultHiddenUnits = 8;
inline constexpr double kLossClip = 1e-12;

/// Intermediate values of one forward pass.
struct Activations {
  std::vector<double> hidden_pre;
  std::vector<double> hidden;
  std::vector<double> logits;
  std::vector<double> probs;
};

namespace detail {

inline void softmax_in_place(std::vector<double>& z) {
  const double peak = *std::max_element(z.begin(), z.end());
  double sum = 0.0;
  for (double& v : z) {
    v = std::exp(v - peak);
    sum += v;
  }
  for (double& v : z) v /= sum;
}

template <class Accumulate>
Activations forward_from(const MlpModel& model, Accumulate&& accumulate_input) {
  Activations act;
  act.hidden_pre = model.b1;
  accumulate_input(act.hidden_pre);
  act.hidden.resize(act.hidden_pre.size());
  for (std::size_t h = 0; h < act.hidden.size(); ++h) act.hidden[h] = std::max(0.0, act.hidden_pre[h]);
  act.logits = model.b2;
  for (std::size_t h = 0; h < model.hidden(); ++h) {
    const double hv = act.hidden[h];
    if (hv == 0.0) continue;
    for (std::size_t c = 0; c < model.classes(); ++c) act.logits[c] += hv * model.w2(h, c);
  }
  act.probs = act.logits;
  softmax_in_place(act.probs);
  return act;
}

inline void check_model_shape(const MlpModel& model) {
  if (model.b1.size() != model.hidden() || model.w2.rows != model.hidden() ||
      model.b2.size() != model.classes() || model.classes() == 0) {
    throw Error(Errc::dimension_mismatch, "inconsistent model parameter shapes");
  }
}

}  // namespace detail

inline Activations forward_pass(const MlpModel& model, std::span<const double> x) {
  detail::check_model_shape(model);
  if (x.size() != model.inputs()) {
    throw Error(Errc::dimension_mismatch, "input has " + std::to_string(x.size()) + " features, model expects " +
                                              std::to_string(model.inputs()));
  }
  return detail::forward_from(model, [&](std::vector<double>& acc) {
    for (std::size_t f = 0; f < x.size(); ++f) {
      if (x[f] == 0.0) continue;
      for (std::size_t h = 0; h < acc.size(); ++h) acc[h] += x[f] * model.w1(f, h);
    }
  });
}

inline Activations forward_pass(const MlpModel& model, const SparseVector& x) {
  detail::check_model_shape(model);
  for (auto f : x.index) {
    if (f >= model.inputs()) throw Error(Errc::dimension_mismatch, "feature index out of range");
  }
  return detail::forward_from(model, [&](std::vector<double>& acc) {
    for (std::size_t k = 0; k < x.index.size(); ++k) {
      const std::size_t f = x.index[k];
      for (std::size_t h = 0; h < acc.size(); ++h) acc[h] += x.value[k] * model.w1(f, h);
    }
  });
}

/// Class probabilities: softmax(relu(x W1 + b1) W2 + b2).
inline std::vector<double> forward(const MlpModel& model, std::span<const double> x) {
  return forward_pass(model, x).probs;
}

inline std::vector<double> forward(const MlpModel& model, const SparseVector& x) {
  return forward_pass(model, x).probs;
}

/// Categorical cross-entropy for one example.
inline double loss(std::span<const double> probs, std::size_t label) {
  if (label >= probs.size()) throw Error(Errc::dimension_mismatch, "label out of range");
  return -std::log(probs[label] + kLossClip);
}

namespace detail {

template <class Row>
void accumulate_gradient(const MlpModel& model, const Row& x, std::size_t label, MlpGradients& g,
                         double& loss_sum) {
  if (label >= model.classes()) throw Error(Errc::dimension_mismatch, "label out of range");
  const Activations act = forward_pass(model, x);
  loss_sum += loss(act.probs, label);

  std::vector<double> delta_out = act.probs;
  delta_out[label] -= 1.0;
  for (std::size_t c = 0; c < model.classes(); ++c) g.b2[c] += delta_out[c];
  std::vector<double> delta_hidden(model.hidden(), 0.0);
  for (std::size_t h = 0; h < model.hidden(); ++h) {
    const double hv = act.hidden[h];
    double back = 0.0;
    for (std::size_t c = 0; c < model.classes(); ++c) {
      g.w2(h, c) += hv * delta_out[c];
      back += model.w2(h, c) * delta_out[c];
    }
    delta_hidden[h] = act.hidden_pre[h] > 0.0 ? back : 0.0;
  }
  for (std::size_t h = 0; h < model.hidden(); ++h) g.b1[h] += delta_hidden[h];
  if constexpr (std::is_same_v<Row, SparseVector>) {
    for (std::size_t k = 0; k < x.index.size(); ++k) {
      for (std::size_t h = 0; h < model.hidden(); ++h) g.w1(x.index[k], h) += x.value[k] * delta_hidden[h];
    }
  } else {
    for (std::size_t f = 0; f < x.size(); ++f) {
      if (x[f] == 0.0) continue;
      for (std::size_t h = 0; h < model.hidden(); ++h) g.w1(f, h) += x[f] * delta_hidden[h];
    }
  }
}

inline void scale(MlpGradients& g, double factor) {
  for (auto block : g.parameters()) {
    for (double& v : block) v *= factor;
  }
}

}  // namespace detail

/// Mean cross-entropy gradients over a batch of dense rows, using the fused
/// softmax/cross-entropy output gradient p - onehot(y).
inline MlpGradients backward(const MlpModel& model, const Matrix& rows, std::span<const std::size_t> labels,
                             double* mean_loss = nullptr) {
  if (rows.rows == 0) throw Error(Errc::empty_dataset, "empty batch");
  if (rows.rows != labels.size()) throw Error(Errc::dimension_mismatch, "rows and labels differ in count");
  MlpGradients g = MlpModel::zeros(model.inputs(), model.hidden(), model.classes());
  double loss_sum = 0.0;
  for (std::size_t r = 0; r < rows.rows; ++r) detail::accumulate_gradient(model, rows.row(r), labels[r], g, loss_sum);
  detail::scale(g, 1.0 / static_cast<double>(rows.rows));
  if (mean_loss) *mean_loss = loss_sum / static_cast<double>(rows.rows);
  return g;
}

/// Sparse-row variant; `batch` holds indices into `rows`.
inline MlpGradients backward(const MlpModel& model, std::span<const SparseVector> rows,
                             std::span<const std::size_t> labels, std::span<const std::size_t> batch,
                             double* mean_loss = nullptr) {
  if (batch.empty()) throw Error(Errc::empty_dataset, "empty batch");
  MlpGradients g = MlpModel::zeros(model.inputs(), model.hidden(), model.classes());
  double loss_sum = 0.0;
  for (std::size_t r : batch) detail::accumulate_gradient(model, rows[r], labels[r], g, loss_sum);
  detail::scale(g, 1.0 / static_cast<double>(batch.size()));
  if (mean_loss) *mean_loss = loss_sum / static_cast<double>(batch.size());
  return g;
}

// ---------------------------------------------------------------------------
// Adam

struct AdamHyperparameters {
  double alpha = 0.001;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

/// One Adam update of `params` at step `t` (1-based, already incremented).
inline void adam_update(std::span<double> params, std::span<const double> grads, std::span<double> m,
                        std::span<double> v, std::uint64_t t, const AdamHyperparameters& hp) {
  if (grads.size() != params.size() || m.size() != params.size() || v.size() != params.size()) {
    throw Error(Errc::dimension_mismatch, "adam: parameter and state shapes differ");
  }
  const double bias1 = 1.0 - std::pow(hp.beta1, static_cast<double>(t));
  const double bias2 = 1.0 - std::pow(hp.beta2, static_cast<double>(t));
  for (std::size_t i = 0; i < params.size(); ++i) {
    m[i] = hp.beta1 * m[i] + (1.0 - hp.beta1) * grads[i];
    v[i] = hp.beta2 * v[i] + (1.0 - hp.beta2) * grads[i] * grads[i];
    const double m_hat = m[i] / bias1;
    const double v_hat = v[i] / bias2;
    params[i] -= hp.alpha * m_hat / (std::sqrt(v_hat) + hp.epsilon);
  }
}

/// Adam state for a flat parameter vector.
struct AdamVectorState {
  std::vector<double> m;
  std::vector<double> v;
  std::uint64_t t = 0;
  AdamHyperparameters hyper;

  explicit AdamVectorState(std::size_t size, AdamHyperparameters hp = {})
      : m(size, 0.0), v(size, 0.0), hyper(hp) {}
};

inline void adam_step(std::span<double> params, std::span<const double> grads, AdamVectorState& state) {
  ++state.t;
  adam_update(params, grads, state.m, state.v, state.t, state.hyper);
}

/// First and second moments shaped like the model, zero-initialized.
struct AdamState {
  MlpModel m;
  MlpModel v;
  std::uint64_t t = 0;
  AdamHyperparameters hyper;

  static AdamState for_model(const MlpModel& model, AdamHyperparameters hp = {}) {
    AdamState s;
    s.m = MlpModel::zeros(model.inputs(), model.hidden(), model.classes());
    s.v = s.m;
    s.hyper = hp;
    return s;
  }
};

inline void adam_step(MlpModel& model, const MlpGradients& grads, AdamState& state) {
  ++state.t;
  auto params = model.parameters();
  auto g = grads.parameters();
  auto m = state.m.parameters();
  auto v = state.v.parameters();
  for (std::size_t block = 0; block < params.size(); ++block) {
    adam_update(params[block], g[block], m[block], v[block], state.t, state.hyper);
  }
}

// ---------------------------------------------------------------------------
// Dataset

/// One row per sampled document: relative frequencies of its X-free POS
/// tri-grams over `feature_index`.
struct DocumentDataset {
  FeatureIndex feature_index;
  std::vector<SparseVector> rows;
  std::vector<std::size_t> labels;
  std::vector<std::string> label_names;

  std::size_t size() const noexcept { return rows.size(); }
  std::size_t feature_count() const noexcept { return feature_index.size(); }
  std::size_t class_count() const noexcept { return label_names.size(); }

  friend bool operator==(const DocumentDataset&, const DocumentDataset&) = default;
};

struct DatasetOptions {
  std::size_t docs_per_lang = 1000;
  std::size_t sentences_per_doc = 100;
  std::uint64_t seed = 0;
};

namespace detail {

inline std::map<std::string, std::uint64_t> x_free_trigram_counts(std::span<const PosSentence> sentences) {
  std::map<std::string, std::uint64_t> counts;
  for (const auto& s : sentences) {
    for (const auto& t : pos_trigrams(s)) {
      if (!contains_x(t)) ++counts[trigram_key(t)];
    }
  }
  return counts;
}

}  // namespace detail

/// For every language, `docs_per_lang` documents of `sentences_per_doc`
/// sampled sentences each. Documents without any X-free tri-gram are
/// skipped. Labels follow the order of `corpora`.
inline DocumentDataset build_dataset(std::span<const TaggedCorpus> corpora, const DatasetOptions& options) {
  if (corpora.empty()) throw Error(Errc::empty_dataset, "no corpora");
  struct Document {
    std::map<std::string, std::uint64_t> counts;
    std::uint64_t total = 0;
    std::size_t label = 0;
  };
  std::vector<Document> documents;
  DocumentDataset dataset;
  for (std::size_t lang = 0; lang < corpora.size(); ++lang) {
    const auto& corpus = corpora[lang];
    if (corpus.empty()) throw Error(Errc::empty_corpus, corpus.language_code);
    const bool any_triples = std::any_of(corpus.sentences.begin(), corpus.sentences.end(), [](const PosSentence& s) {
      for (const auto& t : pos_trigrams(s)) {
        if (!contains_x(t)) return true;
      }
      return false;
    });
    if (!any_triples) throw Error(Errc::no_triples, corpus.language_code);
    dataset.label_names.push_back(corpus.language_code);

    std::vector<Document> docs(options.docs_per_lang);
    parallel_for(options.docs_per_lang, [&](std::size_t d) {
      const auto sample = sample_sentences(corpus, options.sentences_per_doc, derive_seed(options.seed, lang, d));
      docs[d].counts = detail::x_free_trigram_counts(sample);
      for (const auto& [key, count] : docs[d].counts) docs[d].total += count;
      docs[d].label = lang;
    });
    for (auto& doc : docs) {
      if (doc.total > 0) documents.push_back(std::move(doc));
    }
  }

  std::map<std::string, std::uint32_t> position;
  for (const auto& doc : documents) {
    for (const auto& [key, count] : doc.counts) position.emplace(key, 0);
  }
  std::uint32_t next = 0;
  for (auto& [key, pos] : position) {
    pos = next++;
    dataset.feature_index.push_back(key);
  }
  for (const auto& doc : documents) {
    SparseVector row;
    for (const auto& [key, count] : doc.counts) {  // map order == index order
      row.index.push_back(position.at(key));
      row.value.push_back(static_cast<double>(count) / static_cast<double>(doc.total));
    }
    dataset.rows.push_back(std::move(row));
    dataset.labels.push_back(doc.label);
  }
  return dataset;
}

/// Features of an arbitrary tagged passage over a trained feature index.
/// Tri-grams absent from the index are ignored; the rest are normalized to
/// sum to 1.
inline SparseVector document_features(std::span<const PosSentence> sentences, const FeatureIndex& index) {
  const auto counts = detail::x_free_trigram_counts(sentences);
  SparseVector row;
  std::uint64_t total = 0;
  for (const auto& [key, count] : counts) {
    const auto it = std::lower_bound(index.begin(), index.end(), key);
    if (it == index.end() || *it != key) continue;
    row.index.push_back(static_cast<std::uint32_t>(it - index.begin()));
    row.value.push_back(static_cast<double>(count));
    total += count;
  }
  if (total == 0) throw Error(Errc::no_usable_triples, "passage has no known X-free tri-gram");
  for (double& v : row.value) v /= static_cast<double>(total);
  return row;
}

// ---------------------------------------------------------------------------
// Training

struct TrainOptions {
  std::size_t epochs = 50;
  std::size_t batch_size = 32;
  std::size_t hidden = kDefaultHiddenUnits;
  AdamHyperparameters adam;
  std::uint64_t seed = 0;
};

struct TrainResult {
  MlpModel model;
  std::vector<double> loss_history;  // mean training loss per epoch
};

/// He-normal first layer, Glorot-uniform second layer, zero biases.
inline MlpModel initialize_model(std::size_t inputs, std::size_t hidden, std::size_t classes, std::uint64_t seed) {
  MlpModel model = MlpModel::zeros(inputs, hidden, classes);
  SplitMix64 rng(seed);
  const double he_sd = std::sqrt(2.0 / static_cast<double>(std::max<std::size_t>(inputs, 1)));
  for (double& w : model.w1.data) w = he_sd * rng.normal();
  const double limit = std::sqrt(6.0 / static_cast<double>(hidden + classes));
  for (double& w : model.w2.data) w = rng.uniform(-limit, limit);
  return model;
}

/// Mini-batch training on the rows listed in `subset`, reshuffled every
/// epoch.
inline TrainResult train(const DocumentDataset& dataset, std::span<const std::size_t> subset,
                         const TrainOptions& options) {
  if (dataset.size() == 0 || subset.empty()) throw Error(Errc::empty_dataset, "nothing to train on");
  if (options.batch_size == 0 || options.hidden == 0) {
    throw Error(Errc::invalid_argument, "batch size and hidden width must be positive");
  }
  TrainResult result;
  result.model = initialize_model(dataset.feature_count(), options.hidden, dataset.class_count(),
                                  derive_seed(options.seed, 0));
  AdamState state = AdamState::for_model(result.model, options.adam);
  SplitMix64 shuffler(derive_seed(options.seed, 1));
  std::vector<std::size_t> order(subset.begin(), subset.end());

  for (std::size_t epoch = 0; epoch < options.epochs; ++epoch) {
    shuffler.shuffle(std::span<std::size_t>(order));
    double loss_sum = 0.0;
    for (std::size_t start = 0; start < order.size(); start += options.batch_size) {
      const std::size_t end = std::min(order.size(), start + options.batch_size);
      const std::span<const std::size_t> batch(order.data() + start, end - start);
      double batch_loss = 0.0;
      const MlpGradients grads = backward(result.model, dataset.rows, dataset.labels, batch, &batch_loss);
      adam_step(result.model, grads, state);
      loss_sum += batch_loss * static_cast<double>(batch.size());
    }
    const double epoch_loss = loss_sum / static_cast<double>(order.size());
    if (!std::isfinite(epoch_loss) || !result.model.all_finite()) {
      throw Error(Errc::numeric_failure, "training diverged at epoch " + std::to_string(epoch + 1));
    }
    result.loss_history.push_back(epoch_loss);
  }
  return result;
}

inline TrainResult train(const DocumentDataset& dataset, const TrainOptions& options) {
  std::vector<std::size_t> all(dataset.size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  return train(dataset, all, options);
}

inline TrainResult train(const DocumentDataset& dataset, std::size_t epochs, std::size_t batch_size,
                         std::uint64_t seed) {
  TrainOptions options;
  options.epochs = epochs;
  options.batch_size = batch_size;
  options.seed = seed;
  return train(dataset, options);
}

inline std::size_t predict(const MlpModel& model, const SparseVector& x) {
  const auto p = forward(model, x);
  return static_cast<std::size_t>(std::max_element(p.begin(), p.end()) - p.begin());
}

/// Language posteriors for a tagged passage, most probable first (ties by
/// label). Tri-grams outside `feature_index` are ignored.
inline std::vector<std::pair<std::string, double>> identify(const MlpModel& model, const FeatureIndex& feature_index,
                                                            const std::vector<std::string>& label_names,
                                                            std::span<const PosSentence> passage) {
  if (label_names.size() != model.classes() || feature_index.size() != model.inputs()) {
    throw Error(Errc::model_format_error, "model shape does not match its feature index or labels");
  }
  const auto probs = forward(model, document_features(passage, feature_index));
  std::vector<std::pair<std::string, double>> ranked;
  for (std::size_t c = 0; c < probs.size(); ++c) ranked.emplace_back(label_names[c], probs[c]);
  std::stable_sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });
  return ranked;
}

// ---------------------------------------------------------------------------
// Evaluation

using ConfusionMatrix = std::vector<std::vector<std::uint64_t>>;  // [true][predicted]

struct ClassMetrics {
  std::vector<double> precision;
  std::vector<double> recall;
  std::vector<double> f_score;
  std::vector<std::uint64_t> support;
  double accuracy = 0.0;
  ConfusionMatrix confusion;
};

/// Per-class precision, recall and F-score (each 0 when undefined) plus
/// overall accuracy.
inline ClassMetrics metrics(const ConfusionMatrix& confusion) {
  const std::size_t classes = confusion.size();
  std::uint64_t total = 0, correct = 0;
  for (std::size_t i = 0; i < classes; ++i) {
    if (confusion[i].size() != classes) throw Error(Errc::dimension_mismatch, "confusion matrix is not square");
    for (std::size_t j = 0; j < classes; ++j) total += confusion[i][j];
    correct += confusion[i][i];
  }
  if (classes == 0 || total == 0) throw Error(Errc::empty_confusion, "confusion matrix has no counts");

  ClassMetrics out;
  out.confusion = confusion;
  out.accuracy = static_cast<double>(correct) / static_cast<double>(total);
  for (std::size_t c = 0; c < classes; ++c) {
    std::uint64_t predicted = 0, actual = 0;
    for (std::size_t k = 0; k < classes; ++k) {
      predicted += confusion[k][c];
      actual += confusion[c][k];
    }
    const double tp = static_cast<double>(confusion[c][c]);
    const double p = predicted ? tp / static_cast<double>(predicted) : 0.0;
    const double r = actual ? tp / static_cast<double>(actual) : 0.0;
    out.precision.push_back(p);
    out.recall.push_back(r);
    out.f_score.push_back(p + r > 0.0 ? 2.0 * p * r / (p + r) : 0.0);
    out.support.push_back(actual);
  }
  return out;
}

inline ConfusionMatrix evaluate(const MlpModel& model, const DocumentDataset& dataset,
                                std::span<const std::size_t> subset) {
  ConfusionMatrix confusion(dataset.class_count(), std::vector<std::uint64_t>(dataset.class_count(), 0));
  for (std::size_t r : subset) ++confusion[dataset.labels[r]][predict(model, dataset.rows[r])];
  return confusion;
}

/// Row order independent of how the dataset was assembled: by label, then
/// by the row's (index, value) sequence.
inline std::vector<std::size_t> canonical_row_order(const DocumentDataset& dataset) {
  std::vector<std::size_t> order(dataset.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (dataset.labels[a] != dataset.labels[b]) return dataset.labels[a] < dataset.labels[b];
    const auto& ra = dataset.rows[a];
    const auto& rb = dataset.rows[b];
    if (ra.index != rb.index) return ra.index < rb.index;
    return ra.value < rb.value;
  });
  return order;
}

/// Stratified assignment of rows to `k` folds: each class's rows (in
/// canonical order, then shuffled) are dealt round-robin, continuing where
/// the previous class stopped so fold sizes stay balanced overall.
inline std::vector<std::vector<std::size_t>> stratified_folds(const DocumentDataset& dataset, std::size_t k,
                                                              std::uint64_t seed) {
  if (k < 2) throw Error(Errc::invalid_argument, "k-fold needs k >= 2");
  std::vector<std::vector<std::size_t>> by_class(dataset.class_count());
  for (std::size_t r : canonical_row_order(dataset)) by_class[dataset.labels[r]].push_back(r);
  for (std::size_t c = 0; c < by_class.size(); ++c) {
    if (by_class[c].size() < k) {
      throw Error(Errc::too_few_rows_per_class, dataset.label_names[c] + " has " +
                                                    std::to_string(by_class[c].size()) + " rows, need " +
                                                    std::to_string(k));
    }
  }
  std::vector<std::vector<std::size_t>> folds(k);
  SplitMix64 rng(seed);
  std::size_t cursor = 0;
  for (auto& rows : by_class) {
    rng.shuffle(std::span<std::size_t>(rows));
    for (std::size_t r : rows) folds[cursor++ % k].push_back(r);
  }
  for (auto& fold : folds) std::sort(fold.begin(), fold.end());
  return folds;
}

struct CrossValidationResult {
  std::vector<ClassMetrics> folds;
  ClassMetrics pooled;  // from the summed confusion matrices
  double mean_accuracy = 0.0;
  double stddev_accuracy = 0.0;  // sample standard deviation over folds
};

/// Stratified k-fold cross-validation; fold f trains with seed
/// derive_seed(options.seed, f + 2). Folds run concurrently.
inline CrossValidationResult kfold_cv(const DocumentDataset& dataset, std::size_t k, const TrainOptions& options) {
  const auto folds = stratified_folds(dataset, k, derive_seed(options.seed, 0xF01D));
  std::vector<ConfusionMatrix> confusions(k);
  parallel_for(k, [&](std::size_t f) {
    std::vector<std::size_t> train_rows;
    for (std::size_t g = 0; g < k; ++g) {
      if (g != f) train_rows.insert(train_rows.end(), folds[g].begin(), folds[g].end());
    }
    std::sort(train_rows.begin(), train_rows.end());
    // Train in canonical order so row permutations of the dataset do not matter.
    const auto canonical = canonical_row_order(dataset);
    std::vector<std::size_t> rank(dataset.size());
    for (std::size_t i = 0; i < canonical.size(); ++i) rank[canonical[i]] = i;
    std::sort(train_rows.begin(), train_rows.end(), [&](std::size_t a, std::size_t b) { return rank[a] < rank[b]; });

    TrainOptions fold_options = options;
    fold_options.seed = derive_seed(options.seed, f + 2);
    const auto trained = train(dataset, train_rows, fold_options);
    confusions[f] = evaluate(trained.model, dataset, folds[f]);
  });

  CrossValidationResult result;
  ConfusionMatrix pooled(dataset.class_count(), std::vector<std::uint64_t>(dataset.class_count(), 0));
  for (const auto& confusion : confusions) {
    result.folds.push_back(metrics(confusion));
    for (std::size_t i = 0; i < confusion.size(); ++i) {
      for (std::size_t j = 0; j < confusion.size(); ++j) pooled[i][j] += confusion[i][j];
    }
  }
  result.pooled = metrics(pooled);
  double sum = 0.0;
  for (const auto& m : result.folds) sum += m.accuracy;
  result.mean_accuracy = sum / static_cast<double>(k);
  double ss = 0.0;
  for (const auto& m : result.folds) ss += (m.accuracy - result.mean_accuracy) * (m.accuracy - result.mean_accuracy);
  result.stddev_accuracy = std::sqrt(ss / static_cast<double>(k - 1));
  return result;
}

}  // namespace glossotype
