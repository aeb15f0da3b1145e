#include "ontoprobe/kif/formula.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace ontoprobe::kif {

Term::Term(Kind kind, std::string name, std::vector<Term> children)
    : kind_(kind), name_(std::move(name)), children_(std::move(children)) {}

namespace {

void check_variable_name(const std::string& name) {
  if (name.empty()) throw std::invalid_argument("empty variable name");
  for (char c : name) {
    if (c == '(' || c == ')' || c == ' ' || c == '\t' || c == '\n' || c == '\r') {
      throw std::invalid_argument("invalid character in variable name: " + name);
    }
  }
}

}  // namespace

Term Term::constant(std::string name) { return Term(Kind::Constant, std::move(name), {}); }

Term Term::variable(std::string name) {
  check_variable_name(name);
  return Term(Kind::Variable, std::move(name), {});
}

Term Term::row_variable(std::string name) {
  check_variable_name(name);
  return Term(Kind::RowVariable, std::move(name), {});
}

Term Term::compound(Term head, std::vector<Term> args) {
  if (args.empty()) throw std::invalid_argument("compound term needs at least one argument");
  std::vector<Term> children;
  children.reserve(args.size() + 1);
  children.push_back(std::move(head));
  std::move(args.begin(), args.end(), std::back_inserter(children));
  return Term(Kind::Compound, {}, std::move(children));
}

const Term& Term::head() const {
  if (kind_ != Kind::Compound) throw std::logic_error("head() on non-compound term");
  return children_.front();
}

std::span<const Term> Term::args() const noexcept {
  if (children_.empty()) return {};
  return std::span<const Term>(children_).subspan(1);
}

const char* to_string(FormulaKind kind) noexcept {
  return kind == FormulaKind::UnitClause ? "UC" : "GC";
}

Formula::Formula(Kind kind, std::vector<Term> terms, std::vector<Formula> subs,
                 std::vector<std::string> vars)
    : kind_(kind), terms_(std::move(terms)), subs_(std::move(subs)), vars_(std::move(vars)) {}

Formula Formula::atom(Term predicate, std::vector<Term> args) {
  if (predicate.is_compound() || predicate.is_row_variable()) {
    throw std::invalid_argument("atom predicate must be a constant or a variable");
  }
  std::vector<Term> terms;
  terms.reserve(args.size() + 1);
  terms.push_back(std::move(predicate));
  std::move(args.begin(), args.end(), std::back_inserter(terms));
  return Formula(Kind::Atom, std::move(terms), {}, {});
}

Formula Formula::equal(Term lhs, Term rhs) {
  std::vector<Term> terms;
  terms.push_back(std::move(lhs));
  terms.push_back(std::move(rhs));
  return Formula(Kind::Equal, std::move(terms), {}, {});
}

Formula Formula::negation(Formula f) {
  std::vector<Formula> subs;
  subs.push_back(std::move(f));
  return Formula(Kind::Not, {}, std::move(subs), {});
}

Formula Formula::conjunction(std::vector<Formula> operands) {
  if (operands.size() < 2) throw std::invalid_argument("conjunction needs at least two operands");
  return Formula(Kind::And, {}, std::move(operands), {});
}

Formula Formula::disjunction(std::vector<Formula> operands) {
  if (operands.size() < 2) throw std::invalid_argument("disjunction needs at least two operands");
  return Formula(Kind::Or, {}, std::move(operands), {});
}

Formula Formula::implies(Formula lhs, Formula rhs) {
  std::vector<Formula> subs;
  subs.push_back(std::move(lhs));
  subs.push_back(std::move(rhs));
  return Formula(Kind::Implies, {}, std::move(subs), {});
}

Formula Formula::iff(Formula lhs, Formula rhs) {
  std::vector<Formula> subs;
  subs.push_back(std::move(lhs));
  subs.push_back(std::move(rhs));
  return Formula(Kind::Iff, {}, std::move(subs), {});
}

namespace {

void check_quantifier_vars(const std::vector<std::string>& vars) {
  if (vars.empty()) throw std::invalid_argument("quantifier without variables");
  std::unordered_set<std::string> seen;
  for (const auto& v : vars) {
    check_variable_name(v);
    if (!seen.insert(v).second) throw std::invalid_argument("duplicate quantified variable " + v);
  }
}

}  // namespace

Formula Formula::forall(std::vector<std::string> vars, Formula body) {
  check_quantifier_vars(vars);
  std::vector<Formula> subs;
  subs.push_back(std::move(body));
  return Formula(Kind::Forall, {}, std::move(subs), std::move(vars));
}

Formula Formula::exists(std::vector<std::string> vars, Formula body) {
  check_quantifier_vars(vars);
  std::vector<Formula> subs;
  subs.push_back(std::move(body));
  return Formula(Kind::Exists, {}, std::move(subs), std::move(vars));
}

const Term& Formula::predicate() const {
  if (kind_ != Kind::Atom) throw std::logic_error("predicate() on non-atom");
  return terms_.front();
}

std::span<const Term> Formula::args() const {
  if (kind_ != Kind::Atom) throw std::logic_error("args() on non-atom");
  return std::span<const Term>(terms_).subspan(1);
}

const Term& Formula::lhs_term() const {
  if (kind_ != Kind::Equal) throw std::logic_error("lhs_term() on non-equality");
  return terms_[0];
}

const Term& Formula::rhs_term() const {
  if (kind_ != Kind::Equal) throw std::logic_error("rhs_term() on non-equality");
  return terms_[1];
}

const Formula& Formula::body() const {
  if (!is_quantifier()) throw std::logic_error("body() on non-quantifier");
  return subs_.front();
}

}  // namespace ontoprobe::kif
