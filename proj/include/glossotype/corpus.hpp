#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <type_traits>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "glossotype/error.hpp"
#include "glossotype/rng.hpp"
#include "glossotype/unicode.hpp"

namespace glossotype {

// ---------------------------------------------------------------------------
// Universal part-of-speech tags

enum class UposTag : std::uint8_t {
  ADJ, ADP, ADV, AUX, CCONJ, DET, INTJ, NOUN, NUM, PART, PRON, PROPN, PUNCT, SCONJ, SYM, VERB, X
};

inline constexpr std::size_t kUposCount = 17;

inline constexpr std::array<std::string_view, kUposCount> kUposNames = {
    "ADJ", "ADP", "ADV", "AUX", "CCONJ", "DET", "INTJ", "NOUN", "NUM",
    "PART", "PRON", "PROPN", "PUNCT", "SCONJ", "SYM", "VERB", "X"};

constexpr std::string_view to_string(UposTag tag) noexcept {
  return kUposNames[static_cast<std::size_t>(tag)];
}

constexpr std::optional<UposTag> parse_upos(std::string_view name) noexcept {
  for (std::size_t i = 0; i < kUposCount; ++i) {
    if (kUposNames[i] == name) return static_cast<UposTag>(i);
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Sentences and corpora

struct RawSentence {
  std::string text;
  std::size_t word_count = 0;

  friend bool operator==(const RawSentence&, const RawSentence&) = default;
};

/// A tagged sentence. `text` holds the surface forms joined by single
/// spaces when the source provides them; duplicates are detected on it.
struct PosSentence {
  std::vector<UposTag> tags;
  std::string text;

  std::size_t word_count() const noexcept { return tags.size(); }

  friend bool operator==(const PosSentence&, const PosSentence&) = default;
};

enum class CorpusKind { raw, tagged };

template <class Sentence>
struct SentenceCorpus {
  static constexpr CorpusKind kind =
      std::is_same_v<Sentence, RawSentence> ? CorpusKind::raw : CorpusKind::tagged;

  std::string language_code;
  std::vector<Sentence> sentences;

  std::size_t size() const noexcept { return sentences.size(); }
  bool empty() const noexcept { return sentences.empty(); }

  friend bool operator==(const SentenceCorpus&, const SentenceCorpus&) = default;
};

using RawCorpus = SentenceCorpus<RawSentence>;
using TaggedCorpus = SentenceCorpus<PosSentence>;

/// Number of whitespace-delimited tokens.
inline std::size_t count_words(std::string_view text) {
  std::size_t count = 0;
  bool in_word = false;
  for (char c : text) {
    const bool space = unicode::is_ascii_space(static_cast<unsigned char>(c));
    if (!space && !in_word) ++count;
    in_word = !space;
  }
  return count;
}

/// Collapses whitespace runs to one space and trims both ends.
inline std::string normalize_whitespace(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  bool pending_space = false;
  for (char c : text) {
    if (unicode::is_ascii_space(static_cast<unsigned char>(c))) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(c);
  }
  return out;
}

namespace detail {

inline bool is_blank(std::string_view line) {
  return std::all_of(line.begin(), line.end(),
                     [](char c) { return unicode::is_ascii_space(static_cast<unsigned char>(c)); });
}

inline void strip_line_ending(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

inline void strip_bom(std::string& line) {
  if (line.size() >= 3 && static_cast<unsigned char>(line[0]) == 0xEF &&
      static_cast<unsigned char>(line[1]) == 0xBB && static_cast<unsigned char>(line[2]) == 0xBF) {
    line.erase(0, 3);
  }
}

inline std::ifstream open_input(const std::filesystem::path& path) {
  std::error_code ec;
  if (!std::filesystem::is_regular_file(path, ec)) {
    throw Error(Errc::file_not_found, path.string());
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::io_error, "cannot open " + path.string());
  return in;
}

inline std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (;;) {
    const std::size_t tab = line.find('\t', start);
    fields.push_back(line.substr(start, tab == std::string_view::npos ? tab : tab - start));
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  return fields;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Loading

/// One sentence per non-blank line, in file order. Text is kept verbatim
/// (minus the line terminator); `preprocess` does the cleaning.
inline RawCorpus read_raw_corpus(std::istream& in, std::string language_code) {
  RawCorpus corpus{std::move(language_code), {}};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    detail::strip_line_ending(line);
    if (line_no == 1) detail::strip_bom(line);
    if (!unicode::is_valid(line)) throw Error(Errc::encoding_error, "invalid UTF-8", line_no);
    if (detail::is_blank(line)) continue;
    const std::size_t words = count_words(line);
    corpus.sentences.push_back(RawSentence{std::move(line), words});
    line.clear();
  }
  return corpus;
}

inline RawCorpus load_raw_corpus(const std::filesystem::path& path, std::string language_code) {
  auto in = detail::open_input(path);
  return read_raw_corpus(in, std::move(language_code));
}

/// CoNLL-U subset: tab-separated token lines with the UPOS tag in column 4,
/// blank lines between sentences, `#` comments. Multiword-token ranges
/// (`3-4`) and empty nodes (`5.1`) carry no tag of their own and are skipped.
inline TaggedCorpus read_tagged_corpus(std::istream& in, std::string language_code) {
  TaggedCorpus corpus{std::move(language_code), {}};
  PosSentence current;
  auto flush = [&] {
    if (!current.tags.empty()) corpus.sentences.push_back(std::move(current));
    current = PosSentence{};
  };

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    detail::strip_line_ending(line);
    if (line_no == 1) detail::strip_bom(line);
    if (!unicode::is_valid(line)) throw Error(Errc::encoding_error, "invalid UTF-8", line_no);
    if (detail::is_blank(line)) {
      flush();
      continue;
    }
    if (line.front() == '#') continue;

    const auto fields = detail::split_tabs(line);
    if (fields.size() < 4 || fields[0].empty()) {
      throw Error(Errc::malformed_line, "expected at least 4 tab-separated columns", line_no);
    }
    const std::string_view id = fields[0];
    if (id.find('-') != std::string_view::npos || id.find('.') != std::string_view::npos) continue;
    if (!std::all_of(id.begin(), id.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      throw Error(Errc::malformed_line, "token id is not numeric", line_no);
    }
    const auto tag = parse_upos(fields[3]);
    if (!tag) throw Error(Errc::unknown_tag, std::string(fields[3]), line_no);
    current.tags.push_back(*tag);
    if (!current.text.empty()) current.text.push_back(' ');
    current.text.append(fields[1]);
  }
  flush();
  return corpus;
}

inline TaggedCorpus load_tagged_corpus(const std::filesystem::path& path, std::string language_code) {
  auto in = detail::open_input(path);
  return read_tagged_corpus(in, std::move(language_code));
}

// ---------------------------------------------------------------------------
// Preprocessing

/// Keeps, in order, the first occurrence of every distinct sentence with at
/// least `min_words` tokens. Raw text is whitespace-normalized and NFC
/// normalized before comparison; tagged sentences compare on their surface
/// text when present, otherwise on the tag sequence.
inline RawCorpus preprocess(const RawCorpus& corpus, std::size_t min_words = 3) {
  RawCorpus out{corpus.language_code, {}};
  std::unordered_set<std::string> seen;
  for (const auto& sentence : corpus.sentences) {
    std::string text = unicode::nfc(normalize_whitespace(sentence.text));
    const std::size_t words = count_words(text);
    if (words < min_words || text.empty()) continue;
    if (!seen.insert(text).second) continue;
    out.sentences.push_back(RawSentence{std::move(text), words});
  }
  return out;
}

inline TaggedCorpus preprocess(const TaggedCorpus& corpus, std::size_t min_words = 3) {
  TaggedCorpus out{corpus.language_code, {}};
  std::set<std::vector<UposTag>> seen_tags;
  std::unordered_set<std::string> seen_text;
  for (const auto& sentence : corpus.sentences) {
    if (sentence.tags.size() < min_words) continue;
    PosSentence copy{sentence.tags, unicode::nfc(normalize_whitespace(sentence.text))};
    const bool fresh = copy.text.empty() ? seen_tags.insert(copy.tags).second
                                         : seen_text.insert(copy.text).second;
    if (fresh) out.sentences.push_back(std::move(copy));
  }
  return out;
}

/// Script names (ICU long names, e.g. "Latin", "Cyrillic") permitted per
/// language. Characters of script Common or Inherited are always allowed.
using CharsetWhitelist = std::map<std::string, std::set<std::string>, std::less<>>;

inline bool uses_only_scripts(std::string_view text, const std::set<std::string>& scripts) {
  const auto decoded = unicode::decode(text);
  if (!decoded) return false;
  for (char32_t c : *decoded) {
    const std::string_view script = unicode::script_name(c);
    if (script == "Common" || script == "Inherited") continue;
    if (scripts.find(std::string(script)) == scripts.end()) return false;
  }
  return true;
}

/// Drops sentences containing letters outside the language's whitelisted
/// scripts. Languages without a whitelist entry pass through unchanged.
inline RawCorpus filter_by_charset(const RawCorpus& corpus, const CharsetWhitelist& whitelist) {
  const auto it = whitelist.find(corpus.language_code);
  if (it == whitelist.end()) return corpus;
  RawCorpus out{corpus.language_code, {}};
  for (const auto& sentence : corpus.sentences) {
    if (uses_only_scripts(sentence.text, it->second)) out.sentences.push_back(sentence);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Sampling

/// Draws `n` sentences. Without replacement when `n` does not exceed the
/// corpus size (partial Fisher-Yates), uniformly with replacement otherwise.
template <class Sentence>
std::vector<Sentence> sample_sentences(const SentenceCorpus<Sentence>& corpus, std::size_t n,
                                       std::uint64_t seed) {
  if (corpus.empty()) throw Error(Errc::empty_corpus, corpus.language_code);
  SplitMix64 rng(seed);
  std::vector<Sentence> out;
  out.reserve(n);
  const std::size_t size = corpus.size();
  if (n > size) {
    for (std::size_t i = 0; i < n; ++i) out.push_back(corpus.sentences[rng.below(size)]);
    return out;
  }
  // Fisher-Yates over a virtual identity permutation; only displaced slots
  // are stored, so a draw costs O(n) regardless of corpus size.
  std::unordered_map<std::size_t, std::size_t> displaced;
  auto slot = [&](std::size_t i) {
    const auto it = displaced.find(i);
    return it == displaced.end() ? i : it->second;
  };
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.below(size - i));
    const std::size_t picked = slot(j);
    displaced[j] = slot(i);
    out.push_back(corpus.sentences[picked]);
  }
  return out;
}

}  // namespace glossotype
