#include <gtest/gtest.h>

#include <set>

#include "support/oracles.hpp"

namespace gt = glossotype;

namespace {

gt::RawCorpus raw(std::initializer_list<const char*> lines) {
  gt::RawCorpus c{"xx", {}};
  for (const char* l : lines) c.sentences.push_back({l, gt::count_words(l)});
  return c;
}

// Every window of n bytes in each space-separated word.
std::map<std::string, std::size_t> window_counts(const std::vector<std::string>& sentences, std::size_t n) {
  std::map<std::string, std::size_t> out;
  for (const auto& s : sentences) {
    std::istringstream words(s);
    std::string w;
    while (words >> w) {
      for (std::size_t i = 0; i + n <= w.size(); ++i) ++out[w.substr(i, n)];
    }
  }
  return out;
}

double family_sum(const gt::FeatureProfile& p, std::size_t arity) {
  double sum = 0.0;
  for (const auto& [k, f] : p.freqs) {
    if (k.size() == arity) sum += f;
  }
  return sum;
}

gt::RawCorpus english_sample() {
  static const gt::RawCorpus corpus = [] {
    auto c = gt::preprocess(gt::load_raw_corpus(gt::fs::path(GLOSSOTYPE_DATA_DIR) / "en" / "raw.txt", "en"));
    const gt::Transliterator tr(gt::builtin_tables());
    for (auto& s : c.sentences) s.text = tr(s.text);
    return c;
  }();
  return corpus;
}

std::vector<std::string> top_keys(const gt::FeatureProfile& p, std::size_t arity, std::size_t k) {
  std::vector<std::string> out;
  for (const auto& [key, f] : gt::ranked_features(p)) {
    if (key.size() != arity) continue;
    out.push_back(key);
    if (out.size() == k) break;
  }
  return out;
}

}  // namespace

TEST(CharNgrams, WordExample) {
  EXPECT_EQ(gt::char_ngrams("WORD", 2), (std::vector<std::string>{"WO", "OR", "RD"}));
  EXPECT_EQ(gt::char_ngrams("WORD", 3), (std::vector<std::string>{"WOR", "ORD"}));
}

TEST(CharNgrams, NeverSpansWhitespace) {
  EXPECT_TRUE(gt::char_ngrams("a b", 2).empty());
  EXPECT_TRUE(gt::char_ngrams("a b", 3).empty());
  EXPECT_EQ(gt::char_ngrams("ab  cd", 2), (std::vector<std::string>{"ab", "cd"}));
  EXPECT_TRUE(gt::char_ngrams("", 2).empty());
}

TEST(CharNgrams, CountsCodePoints) {
  // e-acute is two bytes but one character
  EXPECT_EQ(gt::char_ngrams("\xC3\xA9t\xC3\xA9", 2), (std::vector<std::string>{"\xC3\xA9t", "t\xC3\xA9"}));
}

TEST(CharNgrams, MatchesWindowOracle) {
  gt::SplitMix64 rng(11);
  const std::string alphabet = "abc  ";
  for (int trial = 0; trial < 300; ++trial) {
    std::string s;
    for (auto len = rng.below(20); len > 0; --len) s += alphabet[rng.below(alphabet.size())];
    for (std::size_t n = 2; n <= 3; ++n) {
      std::map<std::string, std::size_t> got;
      for (const auto& g : gt::char_ngrams(s, n)) ++got[g];
      EXPECT_EQ(got, window_counts({s}, n)) << '"' << s << "\" n=" << n;
    }
  }
}

TEST(CharProfile, SmallCorpus) {
  const auto p = gt::build_char_profile(raw({"aaa bbb"}));
  // di-grams: aa aa bb bb; tri-grams: aaa bbb
  EXPECT_DOUBLE_EQ(p.frequency("aa"), 0.5);
  EXPECT_DOUBLE_EQ(p.frequency("bb"), 0.5);
  EXPECT_DOUBLE_EQ(p.frequency("aaa"), 0.5);
  EXPECT_DOUBLE_EQ(p.frequency("bbb"), 0.5);
  EXPECT_EQ(p.size(), 4u);
  EXPECT_EQ(p.units_by_arity.at(2), 4u);
  EXPECT_EQ(p.units_by_arity.at(3), 2u);
  EXPECT_EQ(p.total_units, 6u);
  EXPECT_EQ(p.kind, gt::FeatureKind::char_ngram);
}

TEST(CharProfile, FrequenciesMatchOracle) {
  gt::SplitMix64 rng(5);
  gt::RawCorpus corpus{"xx", {}};
  std::vector<std::string> lines;
  for (int i = 0; i < 200; ++i) {
    std::string s;
    for (auto len = 3 + rng.below(30); len > 0; --len) s += "abcde "[rng.below(6)];
    lines.push_back(s);
    corpus.sentences.push_back({s, gt::count_words(s)});
  }
  const auto p = gt::build_char_profile(corpus);
  for (std::size_t n = 2; n <= 3; ++n) {
    const auto counts = window_counts(lines, n);
    std::size_t total = 0;
    for (const auto& [k, c] : counts) total += c;
    EXPECT_EQ(p.units_by_arity.at(n), total);
    for (const auto& [k, c] : counts) {
      EXPECT_DOUBLE_EQ(p.frequency(k), static_cast<double>(c) / static_cast<double>(total)) << k;
    }
    EXPECT_NEAR(family_sum(p, n), 1.0, 1e-12);
  }
}

TEST(CharProfile, TruncationKeepsMostFrequentPerFamily) {
  const auto corpus = english_sample();
  const auto full = gt::build_char_profile(corpus, 1000000);
  const auto top = gt::build_char_profile(corpus, 50);
  for (std::size_t n = 2; n <= 3; ++n) {
    const auto kept = top_keys(top, n, 1000);
    ASSERT_EQ(kept.size(), 50u);
    double min_kept = 1.0;
    for (const auto& k : kept) {
      EXPECT_DOUBLE_EQ(top.frequency(k), full.frequency(k));
      min_kept = std::min(min_kept, top.frequency(k));
    }
    for (const auto& [k, f] : full.freqs) {
      if (k.size() == n && !top.freqs.count(k)) {
        EXPECT_LE(f, min_kept) << k;
      }
    }
    EXPECT_LE(family_sum(top, n), 1.0 + 1e-12);
    EXPECT_NEAR(family_sum(full, n), 1.0, 1e-9);
  }
}

TEST(CharProfile, IndependentOfSentenceOrder) {
  auto corpus = english_sample();
  const auto a = gt::build_char_profile(corpus);
  gt::SplitMix64 rng(99);
  rng.shuffle(std::span<gt::RawSentence>(corpus.sentences));
  EXPECT_EQ(gt::build_char_profile(corpus), a);
}

TEST(CharProfile, EnglishTopGrams) {
  const auto p = gt::build_char_profile(english_sample());
  const auto di = top_keys(p, 2, 5);
  const auto tri = top_keys(p, 3, 5);
  EXPECT_NE(std::find(di.begin(), di.end(), "th"), di.end());
  EXPECT_NE(std::find(di.begin(), di.end(), "he"), di.end());
  EXPECT_NE(std::find(tri.begin(), tri.end(), "the"), tri.end());
  EXPECT_NE(std::find(tri.begin(), tri.end(), "and"), tri.end());
}

TEST(CharProfile, EmptyCorpusThrows) {
  EXPECT_THROW(gt::build_char_profile(gt::RawCorpus{"xx", {}}), gt::Error);
  try {
    gt::build_char_profile(raw({"a b c"}));
    FAIL();
  } catch (const gt::Error& e) {
    EXPECT_EQ(e.code(), gt::Errc::empty_corpus);
  }
}

TEST(RankedFeatures, FrequencyThenKey) {
  gt::FeatureProfile p;
  p.freqs = {{"b", 0.25}, {"a", 0.25}, {"c", 0.5}};
  const auto r = gt::ranked_features(p);
  ASSERT_EQ(r.size(), 3u);
  EXPECT_EQ(r[0].first, "c");
  EXPECT_EQ(r[1].first, "a");
  EXPECT_EQ(r[2].first, "b");
}
