#pragma once

// Thin wrappers over ICU for the handful of Unicode services the library
// needs: strict UTF-8 decoding, canonical normalization, general category
// and script lookup.

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/uscript.h>
#include <unicode/utf8.h>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "glossotype/error.hpp"

namespace glossotype::unicode {

/// Decodes UTF-8, returning nullopt on any ill-formed sequence.
inline std::optional<std::u32string> decode(std::string_view bytes) {
  std::u32string out;
  out.reserve(bytes.size());
  const auto* s = reinterpret_cast<const std::uint8_t*>(bytes.data());
  const std::int32_t length = static_cast<std::int32_t>(bytes.size());
  std::int32_t i = 0;
  while (i < length) {
    UChar32 c;
    U8_NEXT(s, i, length, c);
    if (c < 0) return std::nullopt;
    out.push_back(static_cast<char32_t>(c));
  }
  return out;
}

inline bool is_valid(std::string_view bytes) { return decode(bytes).has_value(); }

inline void append(std::string& out, char32_t c) {
  std::uint8_t buf[4];
  std::int32_t n = 0;
  UBool error = false;
  U8_APPEND(buf, n, 4, static_cast<UChar32>(c), error);
  if (error) {
    out.push_back('?');
    return;
  }
  out.append(reinterpret_cast<const char*>(buf), static_cast<std::size_t>(n));
}

inline std::string encode(std::u32string_view text) {
  std::string out;
  out.reserve(text.size());
  for (char32_t c : text) append(out, c);
  return out;
}

namespace detail {

inline std::string normalize(const icu::Normalizer2& form, std::string_view text) {
  UErrorCode status = U_ZERO_ERROR;
  const icu::UnicodeString src = icu::UnicodeString::fromUTF8(
      icu::StringPiece(text.data(), static_cast<std::int32_t>(text.size())));
  const icu::UnicodeString dst = form.normalize(src, status);
  if (U_FAILURE(status)) {
    throw Error(Errc::encoding_error, std::string("normalization failed: ") + u_errorName(status));
  }
  std::string out;
  dst.toUTF8String(out);
  return out;
}

inline const icu::Normalizer2& nfc_instance() {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* form = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status) || form == nullptr) {
    throw Error(Errc::io_error, "ICU NFC data unavailable");
  }
  return *form;
}

inline const icu::Normalizer2& nfd_instance() {
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* form = icu::Normalizer2::getNFDInstance(status);
  if (U_FAILURE(status) || form == nullptr) {
    throw Error(Errc::io_error, "ICU NFD data unavailable");
  }
  return *form;
}

}  // namespace detail

inline std::string nfc(std::string_view text) { return detail::normalize(detail::nfc_instance(), text); }
inline std::string nfd(std::string_view text) { return detail::normalize(detail::nfd_instance(), text); }

/// General category M (Mn, Mc, Me).
inline bool is_mark(char32_t c) {
  const auto mask = U_GET_GC_MASK(static_cast<UChar32>(c));
  return (mask & U_GC_M_MASK) != 0;
}

/// Unicode Script property long name ("Latin", "Greek", "Common", ...).
inline std::string_view script_name(char32_t c) {
  UErrorCode status = U_ZERO_ERROR;
  const UScriptCode code = uscript_getScript(static_cast<UChar32>(c), &status);
  if (U_FAILURE(status)) return "Unknown";
  const char* name = uscript_getName(code);
  return name != nullptr ? std::string_view(name) : std::string_view("Unknown");
}

constexpr bool is_ascii_space(char32_t c) noexcept {
  return c == U' ' || c == U'\t' || c == U'\n' || c == U'\r' || c == U'\v' || c == U'\f';
}

}  // namespace glossotype::unicode
