#pragma once

// Built-in transliteration tables. Values follow the usual Greek/Cyrillic to
// Latin romanizations after their diacritics are removed (so "ч" maps to
// "c", as the accented "č" would after stripping). Keys may be upper or
// lower case; output is folded to lower case later anyway.

#include <string_view>
#include <utility>
#include <vector>

namespace glossotype::tables {

using Entry = std::pair<std::string_view, std::string_view>;

inline const std::vector<Entry>& greek() {
  static const std::vector<Entry> entries = {
      // digraphs
      {"ου", "ou"}, {"Ου", "ou"}, {"ΟΥ", "ou"}, {"αυ", "au"}, {"Αυ", "au"}, {"ΑΥ", "au"},
      {"ευ", "eu"}, {"Ευ", "eu"}, {"ΕΥ", "eu"}, {"γγ", "ng"}, {"ΓΓ", "ng"},
      // lower case
      {"α", "a"}, {"β", "b"}, {"γ", "g"}, {"δ", "d"}, {"ε", "e"}, {"ζ", "z"}, {"η", "e"},
      {"θ", "th"}, {"ι", "i"}, {"κ", "k"}, {"λ", "l"}, {"μ", "m"}, {"ν", "n"}, {"ξ", "x"},
      {"ο", "o"}, {"π", "p"}, {"ρ", "r"}, {"σ", "s"}, {"ς", "s"}, {"τ", "t"}, {"υ", "y"},
      {"φ", "ph"}, {"χ", "ch"}, {"ψ", "ps"}, {"ω", "o"},
      // upper case
      {"Α", "a"}, {"Β", "b"}, {"Γ", "g"}, {"Δ", "d"}, {"Ε", "e"}, {"Ζ", "z"}, {"Η", "e"},
      {"Θ", "th"}, {"Ι", "i"}, {"Κ", "k"}, {"Λ", "l"}, {"Μ", "m"}, {"Ν", "n"}, {"Ξ", "x"},
      {"Ο", "o"}, {"Π", "p"}, {"Ρ", "r"}, {"Σ", "s"}, {"Τ", "t"}, {"Υ", "y"}, {"Φ", "ph"},
      {"Χ", "ch"}, {"Ψ", "ps"}, {"Ω", "o"},
  };
  return entries;
}

inline const std::vector<Entry>& cyrillic() {
  static const std::vector<Entry> entries = {
      {"а", "a"}, {"б", "b"}, {"в", "v"}, {"г", "g"}, {"д", "d"}, {"е", "e"}, {"ё", "e"},
      {"ж", "z"}, {"з", "z"}, {"и", "i"}, {"й", "j"}, {"к", "k"}, {"л", "l"}, {"м", "m"},
      {"н", "n"}, {"о", "o"}, {"п", "p"}, {"р", "r"}, {"с", "s"}, {"т", "t"}, {"у", "u"},
      {"ф", "f"}, {"х", "h"}, {"ц", "c"}, {"ч", "c"}, {"ш", "s"}, {"щ", "s"}, {"ъ", ""},
      {"ы", "y"}, {"ь", ""}, {"э", "e"}, {"ю", "u"}, {"я", "a"},
      // Ukrainian, Belarusian, Serbian, Macedonian
      {"і", "i"}, {"ї", "i"}, {"є", "e"}, {"ґ", "g"}, {"ў", "u"}, {"ђ", "d"}, {"ј", "j"},
      {"љ", "l"}, {"њ", "n"}, {"ћ", "c"}, {"џ", "d"}, {"ѓ", "g"}, {"ќ", "k"}, {"ѕ", "z"},
      {"А", "a"}, {"Б", "b"}, {"В", "v"}, {"Г", "g"}, {"Д", "d"}, {"Е", "e"}, {"Ё", "e"},
      {"Ж", "z"}, {"З", "z"}, {"И", "i"}, {"Й", "j"}, {"К", "k"}, {"Л", "l"}, {"М", "m"},
      {"Н", "n"}, {"О", "o"}, {"П", "p"}, {"Р", "r"}, {"С", "s"}, {"Т", "t"}, {"У", "u"},
      {"Ф", "f"}, {"Х", "h"}, {"Ц", "c"}, {"Ч", "c"}, {"Ш", "s"}, {"Щ", "s"}, {"Ъ", ""},
      {"Ы", "y"}, {"Ь", ""}, {"Э", "e"}, {"Ю", "u"}, {"Я", "a"},
      {"І", "i"}, {"Ї", "i"}, {"Є", "e"}, {"Ґ", "g"}, {"Ў", "u"}, {"Ђ", "d"}, {"Ј", "j"},
      {"Љ", "l"}, {"Њ", "n"}, {"Ћ", "c"}, {"Џ", "d"}, {"Ѓ", "g"}, {"Ќ", "k"}, {"Ѕ", "z"},
  };
  return entries;
}

/// Latin letters without a canonical decomposition, plus typographic quotes
/// and invisible format characters, which are dropped.
inline const std::vector<Entry>& latin() {
  static const std::vector<Entry> entries = {
      {"ß", "ss"}, {"ẞ", "ss"}, {"æ", "ae"}, {"Æ", "ae"}, {"œ", "oe"}, {"Œ", "oe"},
      {"ø", "o"}, {"Ø", "o"}, {"ł", "l"}, {"Ł", "l"}, {"đ", "d"}, {"Đ", "d"},
      {"ð", "d"}, {"Ð", "d"}, {"þ", "th"}, {"Þ", "th"}, {"ı", "i"}, {"ħ", "h"},
      {"Ħ", "h"}, {"ŋ", "ng"}, {"Ŋ", "ng"}, {"ſ", "s"}, {"ĸ", "q"}, {"ŀ", "l"},
      {"\u2018", ""}, {"\u2019", ""}, {"\u201A", ""}, {"\u201C", ""}, {"\u201D", ""},
      {"\u201E", ""}, {"\u00AB", ""}, {"\u00BB", ""}, {"\u2039", ""}, {"\u203A", ""},
      {"\u200B", ""}, {"\u200C", ""}, {"\u200D", ""}, {"\u00AD", ""},
  };
  return entries;
}

}  // namespace glossotype::tables
