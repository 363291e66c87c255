#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace glossotype {

enum class Errc {
  file_not_found,
  io_error,
  encoding_error,
  unknown_tag,
  malformed_line,
  empty_corpus,
  no_triples,
  mixed_kinds,
  duplicate_language,
  label_mismatch,
  too_few_labels,
  zero_variance,
  dimension_mismatch,
  empty_dataset,
  too_few_rows_per_class,
  empty_confusion,
  no_usable_triples,
  model_format_error,
  invalid_argument,
  numeric_failure,
};

constexpr std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::file_not_found: return "FileNotFound";
    case Errc::io_error: return "IoError";
    case Errc::encoding_error: return "EncodingError";
    case Errc::unknown_tag: return "UnknownTag";
    case Errc::malformed_line: return "MalformedLine";
    case Errc::empty_corpus: return "EmptyCorpus";
    case Errc::no_triples: return "NoTriples";
    case Errc::mixed_kinds: return "MixedKinds";
    case Errc::duplicate_language: return "DuplicateLanguage";
    case Errc::label_mismatch: return "LabelMismatch";
    case Errc::too_few_labels: return "TooFewLabels";
    case Errc::zero_variance: return "ZeroVariance";
    case Errc::dimension_mismatch: return "DimensionMismatch";
    case Errc::empty_dataset: return "EmptyDataset";
    case Errc::too_few_rows_per_class: return "TooFewRowsPerClass";
    case Errc::empty_confusion: return "EmptyConfusion";
    case Errc::no_usable_triples: return "NoUsableTriples";
    case Errc::model_format_error: return "ModelFormatError";
    case Errc::invalid_argument: return "InvalidArgument";
    case Errc::numeric_failure: return "NumericFailure";
  }
  return "Unknown";
}

/// True for failures of the numerical machinery rather than of the input data.
constexpr bool is_numeric_failure(Errc code) noexcept {
  return code == Errc::zero_variance || code == Errc::dimension_mismatch ||
         code == Errc::numeric_failure;
}

/// The single exception type thrown by the library. `code()` identifies the
/// failure; `line()` is set for errors tied to a 1-based input line.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what, std::optional<std::size_t> line = std::nullopt)
      : std::runtime_error(format(code, what, line)), code_(code), line_(line) {}

  Errc code() const noexcept { return code_; }
  std::optional<std::size_t> line() const noexcept { return line_; }

  /// Returns a copy whose message is prefixed with `context` (e.g. a language code).
  Error with_context(std::string_view context) const {
    Error copy = *this;
    static_cast<std::runtime_error&>(copy) =
        std::runtime_error(std::string(context) + ": " + what());
    return copy;
  }

 private:
  static std::string format(Errc code, const std::string& what, std::optional<std::size_t> line) {
    std::string msg(errc_name(code));
    if (line) msg += " (line " + std::to_string(*line) + ")";
    if (!what.empty()) msg += ": " + what;
    return msg;
  }

  Errc code_;
  std::optional<std::size_t> line_;
};

}  // namespace glossotype
