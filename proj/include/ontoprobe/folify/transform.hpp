#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "ontoprobe/folify/axiom.hpp"
#include "ontoprobe/kif/formula.hpp"

namespace ontoprobe::folify {

inline constexpr std::size_t kDefaultMaxRowArity = 7;

class ConflictingDomain : public std::runtime_error {
 public:
  ConflictingDomain(std::string relation, std::size_t position);
  const std::string& relation() const noexcept { return relation_; }
  std::size_t position() const noexcept { return position_; }

 private:
  std::string relation_;
  std::size_t position_;
};

class RowVariableNotTrailing : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Axiomatisation of instance, subclass, disjoint and partition. Partition
// axioms are generated for 2..max_partition_members member classes.
std::vector<Axiom> meta_axioms(std::size_t max_partition_members = kDefaultMaxRowArity);

// Collects `domain`, `domainSubclass` and VariableArityRelation declarations
// from ground top-level atoms.
SignatureMap build_signatures(const std::vector<kif::Formula>& statements);

// Adds one statement's declaration (if it is one). Returns true when the
// statement was a signature declaration. Throws ConflictingDomain.
bool add_signature_declaration(SignatureMap& signatures, const kif::Formula& statement);

// One formula per row arity 1..max_row_arity; each row variable becomes k
// fresh ordinary variables. Formulas without row variables come back as {f}.
std::vector<kif::Formula> expand_rows(const kif::Formula& f, std::size_t max_row_arity);

// (?R t1 .. tk) becomes (holds_{k+1} ?R t1 .. tk). Explicit (holds R t..)
// atoms are renamed the same way.
kif::Formula reify_variable_predicates(const kif::Formula& f);

std::string holds_name(std::size_t arity);
bool is_holds_name(std::string_view name) noexcept;

// Bridging axioms (holds_{k+1}(R, x..) <=> R(x..)) for every relation constant
// that occurs in argument position and is used as a predicate of arity k.
std::vector<kif::Formula> bridging_axioms(const std::vector<kif::Formula>& formulas);

// Universal closure plus sort guards derived from argument domains.
kif::Formula guard_types(const kif::Formula& f, const SignatureMap& signatures);

// Empty string when the formula is translatable, else the reason.
std::string untranslatable_reason(const kif::Formula& f, const std::vector<std::string>& functions);

}  // namespace ontoprobe::folify
