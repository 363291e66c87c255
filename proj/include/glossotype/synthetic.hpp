#pragma once

// Synthetic languages for calibration and testing. A language is a pair of
// second-order Markov chains: one over UPOS tags (yielding its POS tri-gram
// distribution) and one over a small alphabet (yielding its character
// n-gram distribution). Chains are Dirichlet-sampled; related languages mix
// a shared family chain with their own.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "glossotype/corpus.hpp"
#include "glossotype/error.hpp"
#include "glossotype/ngram.hpp"
#include "glossotype/rng.hpp"

namespace glossotype::synthetic {

inline std::vector<double> dirichlet(std::size_t k, double alpha, SplitMix64& rng) {
  std::gamma_distribution<double> gamma(alpha, 1.0);
  std::vector<double> out(k);
  double sum = 0.0;
  for (auto& v : out) {
    v = gamma(rng);
    sum += v;
  }
  if (sum <= 0.0) {
    out.assign(k, 0.0);
    out[rng.below(k)] = 1.0;
    return out;
  }
  for (auto& v : out) v /= sum;
  return out;
}

inline std::size_t categorical(const std::vector<double>& p, SplitMix64& rng) {
  const double u = rng.uniform();
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    acc += p[i];
    if (u < acc) return i;
  }
  return p.size() - 1;
}

/// Second-order chain over `symbols` states: rows indexed by the previous
/// two states (a * symbols + b), plus a distribution over opening pairs.
struct Chain {
  std::size_t symbols = 0;
  std::vector<double> start;              // symbols^2
  std::vector<std::vector<double>> next;  // symbols^2 rows of symbols

  static Chain random(std::size_t symbols, double alpha, SplitMix64& rng) {
    Chain c{symbols, dirichlet(symbols * symbols, alpha, rng), {}};
    for (std::size_t r = 0; r < symbols * symbols; ++r) c.next.push_back(dirichlet(symbols, alpha, rng));
    return c;
  }

  /// (1 - w) * a + w * b, row by row.
  static Chain mix(const Chain& a, const Chain& b, double w) {
    Chain c = a;
    for (std::size_t i = 0; i < c.start.size(); ++i) c.start[i] = (1 - w) * a.start[i] + w * b.start[i];
    for (std::size_t r = 0; r < c.next.size(); ++r) {
      for (std::size_t i = 0; i < c.symbols; ++i) c.next[r][i] = (1 - w) * a.next[r][i] + w * b.next[r][i];
    }
    return c;
  }

  std::vector<std::size_t> sample(std::size_t length, SplitMix64& rng) const {
    std::vector<std::size_t> out;
    const std::size_t pair = categorical(start, rng);
    out.push_back(pair / symbols);
    out.push_back(pair % symbols);
    while (out.size() < length) {
      const auto& row = next[out[out.size() - 2] * symbols + out.back()];
      out.push_back(categorical(row, rng));
    }
    out.resize(length);
    return out;
  }
};

inline constexpr std::string_view kAlphabet = "abdegiklmnorstu";

struct Language {
  std::string code;
  Chain tags;   // over the 17 UPOS tags
  Chain chars;  // over kAlphabet
};

struct Shape {
  std::size_t min_words = 5;
  std::size_t max_words = 14;
  std::size_t min_word_length = 2;
  std::size_t max_word_length = 7;
};

/// `count` unrelated languages named l0, l1, ...
inline std::vector<Language> independent_languages(std::size_t count, std::uint64_t seed, double alpha = 0.3) {
  SplitMix64 rng(seed);
  std::vector<Language> out;
  for (std::size_t i = 0; i < count; ++i) {
    out.push_back({"l" + std::to_string(i), Chain::random(kUposCount, alpha, rng),
                   Chain::random(kAlphabet.size(), alpha, rng)});
  }
  return out;
}

/// `families` x `per_family` languages named f<F>l<L>. Each mixes its
/// family's chains (weight 1 - own_weight) with chains of its own.
inline std::vector<Language> family_languages(std::size_t families, std::size_t per_family, std::uint64_t seed,
                                              double own_weight = 0.2, double alpha = 0.3) {
  SplitMix64 rng(seed);
  std::vector<Language> out;
  for (std::size_t f = 0; f < families; ++f) {
    const Chain family_tags = Chain::random(kUposCount, alpha, rng);
    const Chain family_chars = Chain::random(kAlphabet.size(), alpha, rng);
    for (std::size_t l = 0; l < per_family; ++l) {
      const Chain own_tags = Chain::random(kUposCount, alpha, rng);
      const Chain own_chars = Chain::random(kAlphabet.size(), alpha, rng);
      out.push_back({"f" + std::to_string(f) + "l" + std::to_string(l),
                     Chain::mix(family_tags, own_tags, own_weight), Chain::mix(family_chars, own_chars, own_weight)});
    }
  }
  return out;
}

namespace detail {

inline std::size_t between(std::size_t lo, std::size_t hi, SplitMix64& rng) { return lo + rng.below(hi - lo + 1); }

inline std::string sample_word(const Language& lang, const Shape& shape, SplitMix64& rng) {
  std::string word;
  for (auto s : lang.chars.sample(between(shape.min_word_length, shape.max_word_length, rng), rng)) {
    word += kAlphabet[s];
  }
  return word;
}

}  // namespace detail

/// One tagged sentence: tags from the tag chain, a word form per tag.
inline PosSentence tagged_sentence(const Language& lang, const Shape& shape, SplitMix64& rng,
                                   std::vector<std::string>* forms = nullptr) {
  PosSentence s;
  for (auto t : lang.tags.sample(detail::between(shape.min_words, shape.max_words, rng), rng)) {
    s.tags.push_back(static_cast<UposTag>(t));
    const auto word = detail::sample_word(lang, shape, rng);
    if (forms) forms->push_back(word);
    if (!s.text.empty()) s.text += ' ';
    s.text += word;
  }
  return s;
}

inline std::string raw_sentence(const Language& lang, const Shape& shape, SplitMix64& rng) {
  std::string text;
  const std::size_t words = detail::between(shape.min_words, shape.max_words, rng);
  for (std::size_t w = 0; w < words; ++w) {
    if (w) text += ' ';
    text += detail::sample_word(lang, shape, rng);
  }
  return text;
}

inline TaggedCorpus tagged_corpus(const Language& lang, std::size_t sentences, std::uint64_t seed,
                                  const Shape& shape = {}) {
  SplitMix64 rng(seed);
  TaggedCorpus corpus{lang.code, {}};
  for (std::size_t i = 0; i < sentences; ++i) corpus.sentences.push_back(tagged_sentence(lang, shape, rng));
  return corpus;
}

inline RawCorpus raw_corpus(const Language& lang, std::size_t sentences, std::uint64_t seed,
                            const Shape& shape = {}) {
  SplitMix64 rng(seed);
  RawCorpus corpus{lang.code, {}};
  for (std::size_t i = 0; i < sentences; ++i) {
    auto text = raw_sentence(lang, shape, rng);
    const auto words = count_words(text);
    corpus.sentences.push_back({std::move(text), words});
  }
  return corpus;
}

/// Writes <dir>/<code>/raw.txt and <dir>/<code>/tagged.conllu for every
/// language.
inline void write_corpus_tree(const std::filesystem::path& dir, const std::vector<Language>& languages,
                              std::size_t raw_sentences, std::size_t tagged_sentences, std::uint64_t seed,
                              const Shape& shape = {}) {
  for (std::size_t i = 0; i < languages.size(); ++i) {
    const auto& lang = languages[i];
    const auto lang_dir = dir / lang.code;
    std::filesystem::create_directories(lang_dir);

    std::ofstream raw(lang_dir / "raw.txt", std::ios::binary);
    SplitMix64 raw_rng(derive_seed(seed, i, 0));
    for (std::size_t s = 0; s < raw_sentences; ++s) raw << raw_sentence(lang, shape, raw_rng) << '\n';

    std::ofstream tagged(lang_dir / "tagged.conllu", std::ios::binary);
    SplitMix64 tag_rng(derive_seed(seed, i, 1));
    for (std::size_t s = 0; s < tagged_sentences; ++s) {
      std::vector<std::string> forms;
      const auto sentence = tagged_sentence(lang, shape, tag_rng, &forms);
      tagged << "# sent_id = " << lang.code << '-' << s + 1 << '\n';
      for (std::size_t t = 0; t < forms.size(); ++t) {
        tagged << t + 1 << '\t' << forms[t] << "\t_\t" << to_string(sentence.tags[t]) << "\t_\t_\t_\t_\t_\t_\n";
      }
      tagged << '\n';
    }
    if (!raw || !tagged) throw Error(Errc::io_error, "cannot write corpus for " + lang.code);
  }
}

/// Total variation distance between two profiles: half their Manhattan
/// distance.
inline double total_variation(const FeatureProfile& a, const FeatureProfile& b) {
  double sum = 0.0;
  auto ia = a.freqs.begin();
  auto ib = b.freqs.begin();
  while (ia != a.freqs.end() || ib != b.freqs.end()) {
    if (ib == b.freqs.end() || (ia != a.freqs.end() && ia->first < ib->first)) {
      sum += ia++->second;
    } else if (ia == a.freqs.end() || ib->first < ia->first) {
      sum += ib++->second;
    } else {
      sum += std::abs(ia++->second - ib++->second);
    }
  }
  return sum / 2.0;
}

}  // namespace glossotype::synthetic
