#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace ontoprobe::mini {

// Negative symbol ids are variables: -(index + 1).
struct Term {
  std::int32_t symbol = 0;
  std::vector<Term> args;

  bool is_variable() const noexcept { return symbol < 0; }
  std::int32_t variable_index() const noexcept { return -symbol - 1; }
  static Term variable(std::int32_t index) { return Term{-(index + 1), {}}; }

  friend bool operator==(const Term&, const Term&) = default;
};

struct Literal {
  bool positive = true;
  std::uint32_t predicate = 0;
  std::vector<Term> args;

  friend bool operator==(const Literal&, const Literal&) = default;
};

inline constexpr std::size_t kNoParent = static_cast<std::size_t>(-1);

struct Clause {
  std::vector<Literal> literals;
  std::size_t id = 0;
  std::vector<std::size_t> parents;
  std::string source;  // axiom name for input clauses; empty otherwise
  bool conjecture = false;
  std::string rule = "input";

  bool empty() const noexcept { return literals.empty(); }
  bool positive() const noexcept;
  std::size_t weight() const noexcept;
  std::int32_t variable_count() const noexcept;
};

// Function and predicate symbols, keyed by (name, arity).
class Signature {
 public:
  static constexpr std::string_view kEquality = "=";

  std::uint32_t predicate(std::string_view name, std::size_t arity);
  std::int32_t function(std::string_view name, std::size_t arity);

  const std::string& predicate_name(std::uint32_t id) const { return predicates_[id].name; }
  std::size_t predicate_arity(std::uint32_t id) const { return predicates_[id].arity; }
  const std::string& function_name(std::int32_t id) const { return functions_[id].name; }
  std::size_t function_arity(std::int32_t id) const { return functions_[id].arity; }
  std::size_t predicate_count() const noexcept { return predicates_.size(); }
  std::size_t function_count() const noexcept { return functions_.size(); }

  std::int32_t fresh_skolem(std::size_t arity);

 private:
  struct Entry {
    std::string name;
    std::size_t arity;
  };
  static std::string key(std::string_view name, std::size_t arity);

  std::vector<Entry> predicates_;
  std::vector<Entry> functions_;
  std::unordered_map<std::string, std::uint32_t> predicate_index_;
  std::unordered_map<std::string, std::int32_t> function_index_;
  std::size_t skolems_ = 0;
};

// Renames variables to 0..n-1 by first occurrence, drops duplicate literals.
void normalize(Clause& c);
bool is_tautology(const Clause& c);

std::string to_string(const Term& t, const Signature& sig);
std::string to_string(const Literal& l, const Signature& sig);
// TPTP cnf body, e.g. `(~ s_p_1(X0) | s_q_1(X0))`.
std::string to_string(const Clause& c, const Signature& sig);

}  // namespace ontoprobe::mini
