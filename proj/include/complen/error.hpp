#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace complen {

/// Failure categories surfaced by the library. The CLI maps a few of them
/// onto exit codes; everything else is reported with its message.
enum class Errc {
  not_prime,
  reducible_modulus,
  unsupported_degree,
  degenerate_leading_coefficient,
  dimension_mismatch,
  missing_quadratic_form,
  missing_unit,
  degenerate_parameter,
  zero_parameter,
  characteristic_forbidden,
  mu_not_a_solution,
  reducible_cubic,
  self_check_failed,
  not_scalar_operator,
  mirror_law_failed,
  degenerate_form,
  mode_unjustified,
  cost_cap_exceeded,
  infinite_field,
  unknown_identity,
  certificate_missing,
  parse_error,
  invariant_violation,
  division_by_zero,
};

std::string_view errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

/// Thrown when the enumeration or exhaustive-check budget would be exceeded.
class CostCapExceeded : public Error {
 public:
  CostCapExceeded(double estimate, double cap, const std::string& what)
      : Error(Errc::cost_cap_exceeded, what), estimate_(estimate), cap_(cap) {}

  double estimate() const noexcept { return estimate_; }
  double cap() const noexcept { return cap_; }

 private:
  double estimate_;
  double cap_;
};

/// Malformed algebra files. Line and column are 1-based; both are 0 when the
/// problem is structural and the reason carries a JSON pointer instead.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& reason)
      : Error(Errc::parse_error, format(line, column, reason)), line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  static std::string format(std::size_t line, std::size_t column, const std::string& reason) {
    if (line == 0) return reason;
    return "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + reason;
  }

  std::size_t line_;
  std::size_t column_;
};

}  // namespace complen
