#pragma once

#include <array>
#include <string>
#include <vector>

#include "glossotype/corpus.hpp"
#include "glossotype/ngram.hpp"

namespace glossotype {

using TagTriple = std::array<UposTag, 3>;

/// Maximum number of distinct tag triples: 17^3, or 16^3 without X.
inline constexpr std::size_t kMaxPosTrigrams = kUposCount * kUposCount * kUposCount;
inline constexpr std::size_t kMaxPosTrigramsWithoutX = (kUposCount - 1) * (kUposCount - 1) * (kUposCount - 1);

inline std::string trigram_key(const TagTriple& t) {
  std::string key(to_string(t[0]));
  key += '|';
  key += to_string(t[1]);
  key += '|';
  key += to_string(t[2]);
  return key;
}

inline bool contains_x(const TagTriple& t) {
  return t[0] == UposTag::X || t[1] == UposTag::X || t[2] == UposTag::X;
}

/// All windows of three consecutive tags within one sentence.
inline std::vector<TagTriple> pos_trigrams(const PosSentence& sentence) {
  std::vector<TagTriple> triples;
  const auto& tags = sentence.tags;
  if (tags.size() < 3) return triples;
  triples.reserve(tags.size() - 2);
  for (std::size_t i = 0; i + 3 <= tags.size(); ++i) {
    triples.push_back({tags[i], tags[i + 1], tags[i + 2]});
  }
  return triples;
}

/// POS tri-gram profile: relative frequency over all counted triples
/// (X-bearing triples are dropped first when `exclude_x`), truncated to the
/// `top_k` most frequent.
inline FeatureProfile build_pos_profile(const TaggedCorpus& corpus, std::size_t top_k = 2000,
                                        bool exclude_x = false) {
  if (corpus.empty()) throw Error(Errc::empty_corpus, corpus.language_code);

  auto counts = detail::count_partitioned<PosSentence>(
      corpus.sentences, 1, [exclude_x](const PosSentence& s, std::vector<FeatureCounts>& out) {
        for (const auto& t : pos_trigrams(s)) {
          if (exclude_x && contains_x(t)) continue;
          ++out[0][trigram_key(t)];
        }
      });

  std::uint64_t total = 0;
  for (const auto& [key, count] : counts[0]) total += count;
  if (total == 0) throw Error(Errc::no_triples, corpus.language_code);

  FeatureProfile profile{corpus.language_code, FeatureKind::pos_trigram, {}, total, {{3, total}}};
  for (auto& [key, freq] : detail::top_k_frequencies(counts[0], total, top_k)) {
    profile.freqs.emplace(std::move(key), freq);
  }
  return profile;
}

}  // namespace glossotype
