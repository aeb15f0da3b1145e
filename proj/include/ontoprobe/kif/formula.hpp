#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ontoprobe/kif/term.hpp"

namespace ontoprobe::kif {

enum class FormulaKind : std::uint8_t { UnitClause, GeneralClause };

const char* to_string(FormulaKind kind) noexcept;

// Immutable first-order formula tree over SUO-KIF terms.
//
// Atom stores its predicate and arguments; Equal stores its two sides.
// And/Or are n-ary (at least two operands), Implies/Iff strictly binary.
// Quantifiers bind a non-empty, duplicate-free list of variable names.
class Formula {
 public:
  enum class Kind : std::uint8_t { Atom, Equal, Not, And, Or, Implies, Iff, Forall, Exists };

  static Formula atom(Term predicate, std::vector<Term> args);
  static Formula equal(Term lhs, Term rhs);
  static Formula negation(Formula f);
  static Formula conjunction(std::vector<Formula> operands);
  static Formula disjunction(std::vector<Formula> operands);
  static Formula implies(Formula lhs, Formula rhs);
  static Formula iff(Formula lhs, Formula rhs);
  static Formula forall(std::vector<std::string> vars, Formula body);
  static Formula exists(std::vector<std::string> vars, Formula body);

  Kind kind() const noexcept { return kind_; }
  bool is_atomic() const noexcept { return kind_ == Kind::Atom || kind_ == Kind::Equal; }
  bool is_quantifier() const noexcept { return kind_ == Kind::Forall || kind_ == Kind::Exists; }

  // Atom only.
  const Term& predicate() const;
  std::span<const Term> args() const;

  // Equal only.
  const Term& lhs_term() const;
  const Term& rhs_term() const;

  // Not/And/Or/Implies/Iff operands; the body for quantifiers.
  std::span<const Formula> operands() const noexcept { return subs_; }
  const Formula& body() const;

  // Quantifier variables.
  std::span<const std::string> variables() const noexcept { return vars_; }

  friend bool operator==(const Formula&, const Formula&) = default;

 private:
  Formula(Kind kind, std::vector<Term> terms, std::vector<Formula> subs,
          std::vector<std::string> vars);

  Kind kind_;
  std::vector<Term> terms_;
  std::vector<Formula> subs_;
  std::vector<std::string> vars_;
};

}  // namespace ontoprobe::kif
