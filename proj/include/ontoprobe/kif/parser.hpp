#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ontoprobe/kif/formula.hpp"

namespace ontoprobe::kif {

struct SourceLocation {
  std::size_t line = 1;
  std::size_t column = 1;
  std::size_t offset = 0;

  friend bool operator==(const SourceLocation&, const SourceLocation&) = default;
};

class ParseError : public std::runtime_error {
 public:
  enum class Code {
    UnbalancedParens,
    EmptyExpression,
    MalformedQuantifier,
    MalformedConnective,
    UnexpectedToken,
  };

  ParseError(Code code, SourceLocation where, const std::string& detail);

  Code code() const noexcept { return code_; }
  const SourceLocation& location() const noexcept { return where_; }

 private:
  Code code_;
  SourceLocation where_;
};

const char* to_string(ParseError::Code code) noexcept;

// One top-level statement. Non-logical statements (documentation, comments,
// display formats) are parsed but excluded from axiom counting.
struct Statement {
  Formula formula;
  SourceLocation location;
  bool logical = true;
};

// Parses SUO-KIF text: a sequence of parenthesised S-expressions with `;`
// line comments. Throws ParseError on malformed input.
std::vector<Statement> parse_suo_kif(std::string_view text);

// Convenience wrapper for a single expression; throws if the text does not
// hold exactly one statement.
Formula parse_formula(std::string_view text);

bool is_non_logical_predicate(std::string_view name) noexcept;

}  // namespace ontoprobe::kif
