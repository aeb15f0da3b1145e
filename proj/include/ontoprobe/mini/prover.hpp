#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ontoprobe/kif/formula.hpp"
#include "ontoprobe/mini/clause.hpp"

namespace ontoprobe::mini {

struct SaturationBudget {
  std::size_t max_clauses = 200'000;
  std::size_t max_steps = 100'000;
  double wall_limit_s = 10.0;

  bool valid() const noexcept { return max_clauses > 0 && max_steps > 0 && wall_limit_s > 0; }
};

// NNF, Skolemisation and distribution to CNF. Variable predicates are mapped
// to holds_k on the fly. Throws std::runtime_error if the clausal form grows
// beyond a fixed bound.
std::vector<Clause> clausify(const kif::Formula& f, Signature& sig, const std::string& source = {},
                             bool conjecture = false);

enum class SaturationStatus { ProofFound, BudgetExhausted, Saturated };

const char* to_string(SaturationStatus s) noexcept;

struct SaturationResult {
  SaturationStatus status = SaturationStatus::BudgetExhausted;
  std::set<std::string> used_axioms;  // conjecture and internal clauses excluded
  std::vector<Clause> derivation;     // ancestors of the empty clause, by id
  std::size_t steps = 0;
  std::size_t generated = 0;
};

// Given-clause loop with binary positive resolution (one parent must be an
// all-positive clause), factoring, tautology deletion and forward/backward
// subsumption. The smallest clause is selected first, FIFO on ties. When an
// equality literal occurs, congruence axioms are added.
SaturationResult saturate(std::vector<Clause> axioms, std::vector<Clause> negated_conjecture,
                          Signature& sig, const SaturationBudget& budget);

struct Problem {
  Signature signature;
  std::vector<Clause> axioms;
  std::vector<Clause> negated_conjecture;
  std::vector<std::string> axiom_names;
};

// Builds a refutation problem from TPTP input: axioms are clausified under
// their names and conjectures are negated.
Problem load_problem(std::string_view tptp_text);

// SZS-style transcript: status line plus, for proofs, a TPTP cnf derivation
// in which input clauses carry file(problem, name) annotations.
std::string format_result(const SaturationResult& r, const Signature& sig,
                          std::string_view problem_name);

}  // namespace ontoprobe::mini
