// Textual set expressions.
//
//   expr    := term ( '|' term )*
//   term    := factor ( ( '&' | '\' ) factor )*
//   factor  := atom | '(' expr ')'
//   atom    := 'O' | 'E' | 'I' | 'N'
//            | 'Y' '(' int ')'            -- Y(-a), a >= 0
//            | 'Q' '(' int ')'            -- Q(-b), b >= 1
//            | 'Ray' '(' int ',' int ')'  -- {start + k*step : k >= 0}, step != 0
//            | 'Fin' '{' [ int ( ',' int )* ] '}'
//
// '&' and '\' bind tighter than '|'; operators of equal precedence associate
// to the left. Whitespace is ignored.
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include "safegen/set_algebra.hpp"

namespace safegen {

class SetSpecError : public std::runtime_error {
 public:
  SetSpecError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at offset " + std::to_string(position)), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

EventuallyPeriodicSet parse_set_spec(std::string_view text);

/// Canonical expression for a set; parse_set_spec(to_set_spec(s)) == s.
std::string to_set_spec(const EventuallyPeriodicSet& s);

/// Human-facing name: a named atom when the set equals one of the common
/// languages (O, E, I, N, N|E, Y(-a), Q(-b) for small parameters), otherwise
/// the canonical expression.
std::string describe(const EventuallyPeriodicSet& s);

}  // namespace safegen
