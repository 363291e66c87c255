#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "glossotype/error.hpp"
#include "glossotype/ngram.hpp"
#include "glossotype/parallel.hpp"

namespace glossotype {

/// Sorted union of feature keys shared by a set of profiles.
using FeatureIndex = std::vector<std::string>;

enum class MatrixKind { written, structure, overall };

constexpr std::string_view to_string(MatrixKind kind) noexcept {
  switch (kind) {
    case MatrixKind::written: return "written";
    case MatrixKind::structure: return "structure";
    case MatrixKind::overall: return "overall";
  }
  return "unknown";
}

/// Symmetric matrix of pairwise language distances, zero on the diagonal.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  DistanceMatrix(std::vector<std::string> labels, MatrixKind kind)
      : labels_(std::move(labels)), values_(labels_.size() * labels_.size(), 0.0), kind_(kind) {}

  std::size_t size() const noexcept { return labels_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  MatrixKind kind() const noexcept { return kind_; }
  void set_kind(MatrixKind kind) noexcept { kind_ = kind; }

  double operator()(std::size_t i, std::size_t j) const { return values_[i * size() + j]; }

  /// Sets both (i, j) and (j, i).
  void set(std::size_t i, std::size_t j, double value) {
    values_[i * size() + j] = value;
    values_[j * size() + i] = value;
  }

  std::size_t index_of(std::string_view label) const {
    const auto it = std::find(labels_.begin(), labels_.end(), label);
    if (it == labels_.end()) throw Error(Errc::label_mismatch, "no label " + std::string(label));
    return static_cast<std::size_t>(it - labels_.begin());
  }

  /// Strict upper triangle, row by row.
  std::vector<double> upper_triangle() const {
    std::vector<double> out;
    out.reserve(size() * (size() - (size() > 0 ? 1 : 0)) / 2);
    for (std::size_t i = 0; i < size(); ++i) {
      for (std::size_t j = i + 1; j < size(); ++j) out.push_back((*this)(i, j));
    }
    return out;
  }

  friend bool operator==(const DistanceMatrix&, const DistanceMatrix&) = default;

 private:
  std::vector<std::string> labels_;
  std::vector<double> values_;
  MatrixKind kind_ = MatrixKind::written;
};

inline FeatureIndex align_features(std::span<const FeatureProfile> profiles) {
  std::set<std::string> keys;
  for (const auto& p : profiles) {
    if (p.kind != profiles.front().kind) {
      throw Error(Errc::mixed_kinds, p.language_code + " is " + std::string(to_string(p.kind)));
    }
    for (const auto& [key, freq] : p.freqs) keys.insert(key);
  }
  return FeatureIndex(keys.begin(), keys.end());
}

/// Dense view of a profile over `index`, absent features as 0.
inline std::vector<double> dense_vector(const FeatureProfile& profile, const FeatureIndex& index) {
  std::vector<double> out(index.size(), 0.0);
  auto it = profile.freqs.begin();
  for (std::size_t i = 0; i < index.size() && it != profile.freqs.end(); ++i) {
    while (it != profile.freqs.end() && it->first < index[i]) ++it;
    if (it != profile.freqs.end() && it->first == index[i]) out[i] = it->second;
  }
  return out;
}

inline double manhattan(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw Error(Errc::dimension_mismatch, "vectors differ in length");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += std::abs(a[i] - b[i]);
  return sum;
}

/// Sum over the index of |freq_a - freq_b|, absent features counting as 0.
inline double manhattan(const FeatureProfile& a, const FeatureProfile& b, const FeatureIndex& index) {
  if (a.kind != b.kind) throw Error(Errc::mixed_kinds, a.language_code + " vs " + b.language_code);
  auto ia = a.freqs.begin();
  auto ib = b.freqs.begin();
  double sum = 0.0;
  for (const auto& key : index) {
    while (ia != a.freqs.end() && ia->first < key) ++ia;
    while (ib != b.freqs.end() && ib->first < key) ++ib;
    const double fa = (ia != a.freqs.end() && ia->first == key) ? ia->second : 0.0;
    const double fb = (ib != b.freqs.end() && ib->first == key) ? ib->second : 0.0;
    sum += std::abs(fa - fb);
  }
  return sum;
}

inline MatrixKind matrix_kind_for(FeatureKind kind) noexcept {
  return kind == FeatureKind::char_ngram ? MatrixKind::written : MatrixKind::structure;
}

/// Pairwise Manhattan distances over the aligned feature index; labels in
/// input order.
inline DistanceMatrix distance_matrix(std::span<const FeatureProfile> profiles) {
  if (profiles.size() < 2) throw Error(Errc::too_few_labels, "need at least 2 profiles");
  std::vector<std::string> labels;
  for (const auto& p : profiles) {
    if (std::find(labels.begin(), labels.end(), p.language_code) != labels.end()) {
      throw Error(Errc::duplicate_language, p.language_code);
    }
    labels.push_back(p.language_code);
  }
  const FeatureIndex index = align_features(profiles);
  std::vector<std::vector<double>> dense(profiles.size());
  parallel_for(profiles.size(), [&](std::size_t i) { dense[i] = dense_vector(profiles[i], index); });

  DistanceMatrix matrix(std::move(labels), matrix_kind_for(profiles.front().kind));
  const std::size_t n = profiles.size();
  std::vector<double> row_values(n * n, 0.0);
  parallel_for(n, [&](std::size_t i) {
    for (std::size_t j = i + 1; j < n; ++j) row_values[i * n + j] = manhattan(dense[i], dense[j]);
  });
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) matrix.set(i, j, row_values[i * n + j]);
  }
  return matrix;
}

/// The rows/columns named by `labels`, in that order.
inline DistanceMatrix reorder(const DistanceMatrix& m, const std::vector<std::string>& labels) {
  std::vector<std::size_t> src;
  for (const auto& l : labels) src.push_back(m.index_of(l));
  DistanceMatrix out(labels, m.kind());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    for (std::size_t j = i + 1; j < labels.size(); ++j) out.set(i, j, m(src[i], src[j]));
  }
  return out;
}

/// Element-wise mean; `b` is reordered to `a`'s labels first.
inline DistanceMatrix average_matrices(const DistanceMatrix& a, const DistanceMatrix& b) {
  std::vector<std::string> la = a.labels(), lb = b.labels();
  std::sort(la.begin(), la.end());
  std::sort(lb.begin(), lb.end());
  if (la != lb) throw Error(Errc::label_mismatch, "matrices cover different languages");
  const DistanceMatrix bb = reorder(b, a.labels());
  DistanceMatrix out(a.labels(), MatrixKind::overall);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i + 1; j < a.size(); ++j) out.set(i, j, (a(i, j) + bb(i, j)) / 2.0);
  }
  return out;
}

/// Rescales off-diagonal entries linearly onto [0, 1]. A matrix whose
/// off-diagonal entries are all equal maps to all zeros.
inline DistanceMatrix normalize_minmax(const DistanceMatrix& m) {
  const auto upper = m.upper_triangle();
  DistanceMatrix out(m.labels(), m.kind());
  if (upper.empty()) return out;
  const auto [lo, hi] = std::minmax_element(upper.begin(), upper.end());
  const double range = *hi - *lo;
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = i + 1; j < m.size(); ++j) {
      out.set(i, j, range > 0.0 ? (m(i, j) - *lo) / range : 0.0);
    }
  }
  return out;
}

}  // namespace glossotype
