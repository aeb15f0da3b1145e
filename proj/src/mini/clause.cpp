#include "ontoprobe/mini/clause.hpp"

#include <algorithm>

#include "ontoprobe/folify/tptp.hpp"

namespace ontoprobe::mini {

namespace {

std::size_t term_weight(const Term& t) {
  std::size_t w = 1;
  for (const Term& a : t.args) w += term_weight(a);
  return w;
}

void max_variable(const Term& t, std::int32_t& out) {
  if (t.is_variable()) {
    out = std::max(out, t.variable_index() + 1);
    return;
  }
  for (const Term& a : t.args) max_variable(a, out);
}

void rename(Term& t, std::vector<std::int32_t>& map, std::int32_t& next) {
  if (t.is_variable()) {
    auto idx = static_cast<std::size_t>(t.variable_index());
    if (idx >= map.size()) map.resize(idx + 1, -1);
    if (map[idx] < 0) map[idx] = next++;
    t.symbol = -(map[idx] + 1);
    return;
  }
  for (Term& a : t.args) rename(a, map, next);
}

}  // namespace

bool Clause::positive() const noexcept {
  return std::all_of(literals.begin(), literals.end(), [](const Literal& l) { return l.positive; });
}

std::size_t Clause::weight() const noexcept {
  std::size_t w = 0;
  for (const Literal& l : literals) {
    w += 1;
    for (const Term& a : l.args) w += term_weight(a);
  }
  return w;
}

std::int32_t Clause::variable_count() const noexcept {
  std::int32_t n = 0;
  for (const Literal& l : literals) {
    for (const Term& a : l.args) max_variable(a, n);
  }
  return n;
}

std::string Signature::key(std::string_view name, std::size_t arity) {
  std::string k(name);
  k += '/';
  k += std::to_string(arity);
  return k;
}

std::uint32_t Signature::predicate(std::string_view name, std::size_t arity) {
  auto [it, inserted] =
      predicate_index_.emplace(key(name, arity), static_cast<std::uint32_t>(predicates_.size()));
  if (inserted) predicates_.push_back(Entry{std::string(name), arity});
  return it->second;
}

std::int32_t Signature::function(std::string_view name, std::size_t arity) {
  auto [it, inserted] =
      function_index_.emplace(key(name, arity), static_cast<std::int32_t>(functions_.size()));
  if (inserted) functions_.push_back(Entry{std::string(name), arity});
  return it->second;
}

std::int32_t Signature::fresh_skolem(std::size_t arity) {
  for (;;) {
    std::string name = "sk" + std::to_string(skolems_++);
    if (!function_index_.count(key(name, arity))) return function(name, arity);
  }
}

void normalize(Clause& c) {
  std::vector<Literal> unique;
  unique.reserve(c.literals.size());
  for (Literal& l : c.literals) {
    if (std::find(unique.begin(), unique.end(), l) == unique.end()) unique.push_back(std::move(l));
  }
  c.literals = std::move(unique);
  std::vector<std::int32_t> map;
  std::int32_t next = 0;
  for (Literal& l : c.literals) {
    for (Term& a : l.args) rename(a, map, next);
  }
}

bool is_tautology(const Clause& c) {
  for (std::size_t i = 0; i < c.literals.size(); ++i) {
    for (std::size_t j = i + 1; j < c.literals.size(); ++j) {
      const Literal& a = c.literals[i];
      const Literal& b = c.literals[j];
      if (a.positive != b.positive && a.predicate == b.predicate && a.args == b.args) return true;
    }
  }
  return false;
}

std::string to_string(const Term& t, const Signature& sig) {
  if (t.is_variable()) return "X" + std::to_string(t.variable_index());
  std::string out = folify::encode_functor(sig.function_name(t.symbol), t.args.size());
  if (t.args.empty()) return out;
  out += '(';
  for (std::size_t i = 0; i < t.args.size(); ++i) {
    if (i) out += ',';
    out += to_string(t.args[i], sig);
  }
  out += ')';
  return out;
}

std::string to_string(const Literal& l, const Signature& sig) {
  std::string out = l.positive ? "" : "~ ";
  if (sig.predicate_name(l.predicate) == Signature::kEquality && l.args.size() == 2) {
    return out + "(" + to_string(l.args[0], sig) + " = " + to_string(l.args[1], sig) + ")";
  }
  out += folify::encode_functor(sig.predicate_name(l.predicate), l.args.size());
  if (l.args.empty()) return out;
  out += '(';
  for (std::size_t i = 0; i < l.args.size(); ++i) {
    if (i) out += ',';
    out += to_string(l.args[i], sig);
  }
  out += ')';
  return out;
}

std::string to_string(const Clause& c, const Signature& sig) {
  if (c.literals.empty()) return "$false";
  std::string out = "(";
  for (std::size_t i = 0; i < c.literals.size(); ++i) {
    if (i) out += " | ";
    out += to_string(c.literals[i], sig);
  }
  out += ')';
  return out;
}

}  // namespace ontoprobe::mini
