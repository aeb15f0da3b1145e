#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ontoprobe/folify/axiom.hpp"
#include "ontoprobe/kif/formula.hpp"

namespace ontoprobe::folify {

class UnencodableSymbol : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class TptpParseError : public std::runtime_error {
 public:
  TptpParseError(std::size_t line, const std::string& detail);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

inline constexpr std::string_view kConjectureName = "goal";

// Symbol encoding. Functors become `s_<escaped>` with an `_<arity>` suffix
// for arity > 0; variables become `V<escaped>`. The escaping is injective
// and reversible by the decoders below.
std::string encode_functor(std::string_view name, std::size_t arity);
std::string encode_variable(std::string_view name);
std::optional<std::string> decode_functor(std::string_view symbol);
std::optional<std::string> decode_variable(std::string_view symbol);

std::string to_tptp(const kif::Formula& f);

// One `fof(name, axiom, ...).` line per axiom in input order, then one
// `fof(goal, conjecture, ...).` line when a conjecture is given.
std::string emit_tptp(const AxiomSet& axioms, const std::optional<kif::Formula>& conjecture);

// The `fof(goal, conjecture, ...).` line on its own; throws
// std::invalid_argument for an open formula.
std::string conjecture_line(const kif::Formula& conjecture);

struct TptpInput {
  std::string name;
  std::string role;
  kif::Formula formula;
};

// Reads FOF input formulas back into the SUO-KIF AST, reversing the symbol
// encoding where it applies.
std::vector<TptpInput> parse_tptp(std::string_view text);
kif::Formula parse_tptp_formula(std::string_view text);

}  // namespace ontoprobe::folify
