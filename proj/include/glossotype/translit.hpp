#pragma once

#include <algorithm>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "glossotype/error.hpp"
#include "glossotype/translit_tables.hpp"
#include "glossotype/unicode.hpp"

namespace glossotype {

/// Source sequence -> ASCII-letter replacement for one script. Keys are
/// stored in NFD; entries are ordered by key length (code points)
/// descending, then by code point sequence.
struct TranslitTable {
  std::string script_name;
  std::vector<std::pair<std::string, std::string>> entries;
};

namespace detail {

inline bool is_ascii_letters(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
  });
}

inline bool is_ascii(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](char c) { return static_cast<unsigned char>(c) < 0x80; });
}

inline char ascii_lower(char c) { return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c; }

}  // namespace detail

/// Validates and canonicalizes a table. Replacements must consist of ASCII
/// letters (empty is allowed). When two keys coincide after normalization
/// the first one wins.
inline TranslitTable make_translit_table(
    std::string script_name, const std::vector<std::pair<std::string, std::string>>& entries) {
  struct Keyed {
    std::u32string key;
    std::string source;
    std::string replacement;
  };
  std::vector<Keyed> keyed;
  keyed.reserve(entries.size());
  for (const auto& [source, replacement] : entries) {
    if (source.empty()) throw Error(Errc::invalid_argument, script_name + ": empty key");
    if (!unicode::is_valid(source)) throw Error(Errc::encoding_error, script_name + ": key is not UTF-8");
    if (!detail::is_ascii_letters(replacement)) {
      throw Error(Errc::invalid_argument,
                  script_name + ": replacement '" + replacement + "' is not ASCII letters");
    }
    std::string normalized = unicode::nfd(source);
    keyed.push_back({*unicode::decode(normalized), std::move(normalized), replacement});
  }
  std::stable_sort(keyed.begin(), keyed.end(), [](const Keyed& a, const Keyed& b) {
    if (a.key.size() != b.key.size()) return a.key.size() > b.key.size();
    return a.key < b.key;
  });
  TranslitTable table{std::move(script_name), {}};
  for (std::size_t i = 0; i < keyed.size(); ++i) {
    if (i > 0 && keyed[i].key == keyed[i - 1].key) continue;
    table.entries.emplace_back(std::move(keyed[i].source), std::move(keyed[i].replacement));
  }
  return table;
}

inline TranslitTable make_translit_table(std::string script_name,
                                         std::span<const tables::Entry> entries) {
  std::vector<std::pair<std::string, std::string>> owned;
  owned.reserve(entries.size());
  for (const auto& [k, v] : entries) owned.emplace_back(std::string(k), std::string(v));
  return make_translit_table(std::move(script_name), owned);
}

/// Table file: {"script_name": "...", "entries": [["source", "replacement"], ...]}
inline TranslitTable load_translit_table(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::file_not_found, path.string());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
    std::vector<std::pair<std::string, std::string>> entries;
    for (const auto& row : doc.at("entries")) {
      if (!row.is_array() || row.size() != 2) {
        throw Error(Errc::invalid_argument, path.string() + ": entries must be [source, replacement] pairs");
      }
      entries.emplace_back(row[0].get<std::string>(), row[1].get<std::string>());
    }
    return make_translit_table(doc.at("script_name").get<std::string>(), entries);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::invalid_argument, path.string() + ": " + e.what());
  }
}

/// Greek, Cyrillic and Latin-extras tables compiled into the library.
inline const std::vector<TranslitTable>& builtin_tables() {
  static const std::vector<TranslitTable> builtin = {
      make_translit_table("Greek", tables::greek()),
      make_translit_table("Cyrillic", tables::cyrillic()),
      make_translit_table("Latin", tables::latin()),
  };
  return builtin;
}

/// Canonical decomposition, removal of every combining mark, recomposition.
/// Pure-ASCII input is returned unchanged.
inline std::string strip_diacritics(std::string_view text) {
  if (detail::is_ascii(text)) return std::string(text);
  const auto decoded = unicode::decode(unicode::nfd(text));
  if (!decoded) return std::string(text);
  std::u32string kept;
  kept.reserve(decoded->size());
  for (char32_t c : *decoded) {
    if (!unicode::is_mark(c)) kept.push_back(c);
  }
  return unicode::nfc(unicode::encode(kept));
}

/// Compiled form of a list of tables. Applies, in order: canonical
/// decomposition (which also splits Hangul syllables into jamo), greedy
/// longest-match replacement left to right, diacritic stripping, lower-case
/// folding, and "?" for anything still outside ASCII. Earlier tables win
/// when several define the same key.
class Transliterator {
 public:
  Transliterator() = default;

  explicit Transliterator(std::span<const TranslitTable> tables) {
    for (const auto& table : tables) {
      for (const auto& [source, replacement] : table.entries) {
        auto key = unicode::decode(source);
        if (!key || key->empty()) continue;
        max_key_length_ = std::max(max_key_length_, key->size());
        if (std::all_of(key->begin(), key->end(), [](char32_t c) { return c < 0x80; })) {
          has_ascii_keys_ = true;
        }
        map_.try_emplace(std::move(*key), replacement);
      }
    }
  }

  std::string operator()(std::string_view text) const {
    if (!has_ascii_keys_ && detail::is_ascii(text)) return fold(text);

    std::u32string source;
    if (auto decoded = unicode::decode(unicode::nfd(text))) {
      source = std::move(*decoded);
    } else {
      source = U"\uFFFD";
    }

    std::string replaced;
    replaced.reserve(source.size());
    std::size_t i = 0;
    while (i < source.size()) {
      bool matched = false;
      const std::size_t longest = std::min(max_key_length_, source.size() - i);
      for (std::size_t len = longest; len > 0 && !matched; --len) {
        const auto it = map_.find(source.substr(i, len));
        if (it != map_.end()) {
          replaced += it->second;
          i += len;
          matched = true;
        }
      }
      if (matched) continue;
      const char32_t c = source[i++];
      unicode::append(replaced, u_isUWhiteSpace(static_cast<UChar32>(c)) ? U' ' : c);
    }
    return fold(strip_diacritics(replaced));
  }

 private:
  static std::string fold(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (std::size_t i = 0; i < text.size();) {
      const auto byte = static_cast<unsigned char>(text[i]);
      if (byte < 0x80) {
        out.push_back(detail::ascii_lower(text[i]));
        ++i;
        continue;
      }
      // One "?" per non-ASCII code point.
      std::size_t width = (byte >= 0xF0) ? 4 : (byte >= 0xE0) ? 3 : (byte >= 0xC0) ? 2 : 1;
      out.push_back('?');
      i += std::min(width, text.size() - i);
    }
    return out;
  }

  std::unordered_map<std::u32string, std::string> map_;
  std::size_t max_key_length_ = 0;
  bool has_ascii_keys_ = false;
};

inline std::string transliterate(std::string_view text, std::span<const TranslitTable> tables) {
  return Transliterator(tables)(text);
}

}  // namespace glossotype
