#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace iforge {

enum class Errc {
  syntax,
  unknown_variable,
  negative_exponent,
  table_mismatch,
  division_by_zero,
  forbidden_variable,
  pole_at_point,
  degree,
  unsupported_degrees,
  degenerate,
  odd_dimension,
  degenerate_volume,
  not_semi_basic,
  not_reducible,
  degenerate_leading,
  degenerate_trailing,
  rank_drop,
  inconsistent,
  rank_too_small,
  non_exact_division,
  dimension_mismatch,
  unknown_fixture,
  schema,
  precondition,
  overflow,
  sampling_exhausted,
};

std::string_view errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

/// Parse failure carrying the zero-based byte offset into the source text.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t position, const std::string& message)
      : Error(Errc::syntax, "syntax error at " + std::to_string(position) + ": " + message),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace iforge
