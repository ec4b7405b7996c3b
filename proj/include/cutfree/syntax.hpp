#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

#include "cutfree/formula.hpp"
#include "cutfree/sequent.hpp"

namespace cutfree {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t position);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Grammar, loosest to tightest:
///   formula := iff ; iff := imp ("<->" imp)* ; imp := or ("->" imp)? ;
///   or := and ("|" and)* ; and := cond ("&" cond)* ;
///   cond := unary ("=>" unary)? ; unary := "~" unary | "[]" unary | atom ;
///   atom := "false" | "true" | ident | "(" formula ")"
/// `=>` is non-associative. Sugar is rewritten into {false, ~, &, [], =>}.
Formula parse_formula(std::string_view text);

/// Comma-separated formulas; the empty string is the empty sequent.
Sequent parse_sequent(std::string_view text);

enum class PrintStyle { Core, Sugared, Latex };

std::string print_formula(Formula f, PrintStyle style = PrintStyle::Core);
std::string print_sequent(const Sequent& s, PrintStyle style = PrintStyle::Core);
/// Marked occurrences get a trailing `*` (text) or `^{\bullet}` (latex).
std::string print_sequent(const MarkedSequent& s, PrintStyle style = PrintStyle::Core);

std::string to_string(Formula f);

}  // namespace cutfree
