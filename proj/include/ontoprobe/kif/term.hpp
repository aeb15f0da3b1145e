#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace ontoprobe::kif {

// A SUO-KIF term. Variable names are stored without their `?`/`@` prefix.
class Term {
 public:
  enum class Kind : std::uint8_t { Constant, Variable, RowVariable, Compound };

  static Term constant(std::string name);
  static Term variable(std::string name);
  static Term row_variable(std::string name);
  // Throws std::invalid_argument if args is empty.
  static Term compound(Term head, std::vector<Term> args);

  Kind kind() const noexcept { return kind_; }
  bool is_constant() const noexcept { return kind_ == Kind::Constant; }
  bool is_variable() const noexcept { return kind_ == Kind::Variable; }
  bool is_row_variable() const noexcept { return kind_ == Kind::RowVariable; }
  bool is_compound() const noexcept { return kind_ == Kind::Compound; }

  // Empty for compound terms.
  const std::string& name() const noexcept { return name_; }
  const Term& head() const;
  std::span<const Term> args() const noexcept;

  friend bool operator==(const Term&, const Term&) = default;

 private:
  Term(Kind kind, std::string name, std::vector<Term> children);

  Kind kind_;
  std::string name_;
  std::vector<Term> children_;  // compound: head followed by args
};

}  // namespace ontoprobe::kif
