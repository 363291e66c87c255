#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "glossotype/corpus.hpp"
#include "glossotype/error.hpp"
#include "glossotype/parallel.hpp"
#include "glossotype/unicode.hpp"

namespace glossotype {

enum class FeatureKind { char_ngram, pos_trigram };

constexpr std::string_view to_string(FeatureKind kind) noexcept {
  return kind == FeatureKind::char_ngram ? "char-ngram" : "pos-trigram";
}

/// Relative frequencies of the most frequent features of one language.
///
/// Frequencies are computed over the full count of their family (n-grams of
/// the same arity) and are not renormalized after truncation, so each
/// family's retained frequencies sum to at most 1. `units_by_arity` records
/// each family's pre-truncation count; `total_units` is their sum.
struct FeatureProfile {
  std::string language_code;
  FeatureKind kind = FeatureKind::char_ngram;
  std::map<std::string, double> freqs;
  std::uint64_t total_units = 0;
  std::map<std::size_t, std::uint64_t> units_by_arity;

  std::size_t size() const noexcept { return freqs.size(); }

  double frequency(std::string_view key) const {
    const auto it = freqs.find(std::string(key));
    return it == freqs.end() ? 0.0 : it->second;
  }

  friend bool operator==(const FeatureProfile&, const FeatureProfile&) = default;
};

using FeatureCounts = std::unordered_map<std::string, std::uint64_t>;

/// Features ordered by frequency descending, key ascending.
inline std::vector<std::pair<std::string, double>> ranked_features(const FeatureProfile& profile) {
  std::vector<std::pair<std::string, double>> ranked(profile.freqs.begin(), profile.freqs.end());
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  return ranked;
}

namespace detail {

/// The `k` most frequent entries by count (ties: key ascending), each mapped
/// to count / total.
inline std::vector<std::pair<std::string, double>> top_k_frequencies(const FeatureCounts& counts,
                                                                     std::uint64_t total,
                                                                     std::size_t k) {
  std::vector<std::pair<std::string_view, std::uint64_t>> entries;
  entries.reserve(counts.size());
  for (const auto& [key, count] : counts) entries.emplace_back(key, count);
  auto by_rank = [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  };
  if (entries.size() > k) {
    std::nth_element(entries.begin(), entries.begin() + static_cast<std::ptrdiff_t>(k), entries.end(),
                     by_rank);
    entries.resize(k);
  }
  std::sort(entries.begin(), entries.end(), by_rank);
  std::vector<std::pair<std::string, double>> out;
  out.reserve(entries.size());
  for (const auto& [key, count] : entries) {
    out.emplace_back(std::string(key), static_cast<double>(count) / static_cast<double>(total));
  }
  return out;
}

inline void merge_counts(FeatureCounts& into, const FeatureCounts& from) {
  for (const auto& [key, count] : from) into[key] += count;
}

/// Counts features of items in parallel chunks and merges the partial
/// tables; integer counts make the result independent of the partition.
template <class Item, class Emit>
std::vector<FeatureCounts> count_partitioned(std::span<const Item> items, std::size_t families,
                                             Emit&& emit) {
  const std::size_t chunks = std::max<std::size_t>(1, std::min(thread_budget(), items.size() / 256));
  std::vector<std::vector<FeatureCounts>> partial(chunks, std::vector<FeatureCounts>(families));
  parallel_for(chunks, [&](std::size_t c) {
    const std::size_t begin = items.size() * c / chunks;
    const std::size_t end = items.size() * (c + 1) / chunks;
    for (std::size_t i = begin; i < end; ++i) emit(items[i], partial[c]);
  });
  std::vector<FeatureCounts> merged = std::move(partial.front());
  for (std::size_t c = 1; c < chunks; ++c) {
    for (std::size_t f = 0; f < families; ++f) merge_counts(merged[f], partial[c][f]);
  }
  return merged;
}

}  // namespace detail

/// Every window of `n` consecutive characters inside a maximal run of
/// non-space characters. Windows never span whitespace; runs shorter than
/// `n` yield nothing. Works on code points, so it is safe on non-ASCII input.
inline std::vector<std::string> char_ngrams(std::string_view sentence, std::size_t n) {
  std::vector<std::string> grams;
  if (n == 0) return grams;
  std::vector<std::size_t> starts;  // byte offsets of the current run's code points
  auto flush_run = [&](std::size_t run_end) {
    if (starts.size() >= n) {
      for (std::size_t i = 0; i + n <= starts.size(); ++i) {
        const std::size_t begin = starts[i];
        const std::size_t end = (i + n < starts.size()) ? starts[i + n] : run_end;
        grams.emplace_back(sentence.substr(begin, end - begin));
      }
    }
    starts.clear();
  };
  for (std::size_t i = 0; i < sentence.size();) {
    const auto byte = static_cast<unsigned char>(sentence[i]);
    const std::size_t width = (byte < 0x80) ? 1 : (byte >= 0xF0) ? 4 : (byte >= 0xE0) ? 3 : (byte >= 0xC0) ? 2 : 1;
    if (unicode::is_ascii_space(byte)) {
      flush_run(i);
    } else {
      starts.push_back(i);
    }
    i += std::min(width, sentence.size() - i);
  }
  flush_run(sentence.size());
  return grams;
}

/// Di-gram and tri-gram profile of an already transliterated corpus. Each
/// family is normalized by its own total and truncated to its
/// `top_k_per_n` most frequent members.
inline FeatureProfile build_char_profile(const RawCorpus& corpus, std::size_t top_k_per_n = 1000) {
  if (corpus.empty()) throw Error(Errc::empty_corpus, corpus.language_code);

  auto counts = detail::count_partitioned<RawSentence>(
      corpus.sentences, 2, [](const RawSentence& s, std::vector<FeatureCounts>& out) {
        for (std::size_t n = 2; n <= 3; ++n) {
          for (auto& gram : char_ngrams(s.text, n)) ++out[n - 2][std::move(gram)];
        }
      });

  FeatureProfile profile{corpus.language_code, FeatureKind::char_ngram, {}, 0, {}};
  for (std::size_t n = 2; n <= 3; ++n) {
    const auto& family = counts[n - 2];
    std::uint64_t total = 0;
    for (const auto& [key, count] : family) total += count;
    profile.units_by_arity[n] = total;
    profile.total_units += total;
    if (total == 0) continue;
    for (auto& [key, freq] : detail::top_k_frequencies(family, total, top_k_per_n)) {
      profile.freqs.emplace(std::move(key), freq);
    }
  }
  if (profile.total_units == 0) {
    throw Error(Errc::empty_corpus, corpus.language_code + ": no character n-grams");
  }
  return profile;
}

}  // namespace glossotype
