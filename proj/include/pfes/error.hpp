#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pfes {

enum class ErrorKind {
  invalid_argument,
  not_similitude,
  not_parabolic,
  broken_similitude,
  bad_level,
  not_in_group,
  weight_too_small,
  phase_denominator,
  empty_reps,
  zero_form,
  not_primitive,
  not_found,
  parity_mismatch,
  bad_modulus,
  not_squarefree,
  zero_series,
  theta_shape,
  unsupported_character,
  parse_error,
  invariant_error,
  overflow,
  internal,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_argument: return "InvalidArgument";
    case ErrorKind::not_similitude: return "NotSimilitude";
    case ErrorKind::not_parabolic: return "NotParabolic";
    case ErrorKind::broken_similitude: return "BrokenSimilitude";
    case ErrorKind::bad_level: return "BadLevel";
    case ErrorKind::not_in_group: return "NotInGroup";
    case ErrorKind::weight_too_small: return "WeightTooSmall";
    case ErrorKind::phase_denominator: return "PhaseDenominator";
    case ErrorKind::empty_reps: return "EmptyReps";
    case ErrorKind::zero_form: return "ZeroForm";
    case ErrorKind::not_primitive: return "NotPrimitive";
    case ErrorKind::not_found: return "NotFound";
    case ErrorKind::parity_mismatch: return "ParityMismatch";
    case ErrorKind::bad_modulus: return "BadModulus";
    case ErrorKind::not_squarefree: return "NotSquarefree";
    case ErrorKind::zero_series: return "ZeroSeries";
    case ErrorKind::theta_shape: return "ThetaShape";
    case ErrorKind::unsupported_character: return "UnsupportedCharacter";
    case ErrorKind::parse_error: return "ParseError";
    case ErrorKind::invariant_error: return "InvariantError";
    case ErrorKind::overflow: return "Overflow";
    case ErrorKind::internal: return "InternalError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the kinds above so that
/// callers (notably the CLI) can map it to an exit status without parsing text.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

/// Parse failure with a 1-based source position.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : Error(ErrorKind::parse_error,
              "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool condition, ErrorKind kind, const std::string& what) {
  if (!condition) fail(kind, what);
}

}  // namespace pfes
