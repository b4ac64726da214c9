#pragma once

#include "gamebpa/term.hpp"

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gamebpa {

struct SourceSpan {
  int line = 1;    // 1-based
  int column = 1;  // 1-based
  int length = 1;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::string message, SourceSpan span,
             std::vector<std::string> expected = {});

  SourceSpan span;
  std::vector<std::string> expected;
};

/// Concrete syntax for process terms:
///   atoms:      identifier, `delta`
///   operators:  `.` sequential (tightest, right-assoc, so chains print flat),
///               `+` alternative and `$` opponent's alternative (equal
///               precedence, left-assoc), `&` playing (loosest, left-assoc)
///   parentheses override; whitespace insignificant; `delta` is reserved.
Term parse_term(std::string_view src);

/// Minimal-parenthesis rendering; parse_term(print_term(t)) == t structurally.
std::string print_term(const Term& t);

/// Line-oriented game declaration:
///   players P, O
///   owner O: submit, cancel
///   owner P: start, write, store
/// `#` starts a comment; at least two distinct players are required.
GameDeclaration parse_game_decl(std::string_view src);

}  // namespace gamebpa
