#include "ontoprobe/folify/transform.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <unordered_set>

#include "ontoprobe/kif/analysis.hpp"
#include "ontoprobe/kif/parser.hpp"

namespace ontoprobe::folify {

using kif::Formula;
using kif::Term;

ConflictingDomain::ConflictingDomain(std::string relation, std::size_t position)
    : std::runtime_error("conflicting domain declarations for " + relation + " argument " +
                         std::to_string(position)),
      relation_(std::move(relation)),
      position_(position) {}

namespace {

Axiom meta(std::string name, std::string_view kif_text) {
  Formula f = kif::parse_formula(kif_text);
  return Axiom{std::move(name), f, Layer::MetaKnowledge, kif::classify_formula(f)};
}

std::string member_vars(std::size_t n) {
  std::string out;
  for (std::size_t i = 1; i <= n; ++i) out += " ?C" + std::to_string(i);
  return out;
}

}  // namespace

std::vector<Axiom> meta_axioms(std::size_t max_partition_members) {
  std::vector<Axiom> out;
  out.push_back(meta("meta_subclass_transitive",
                     "(forall (?C ?D ?E) (=> (and (subclass ?C ?D) (subclass ?D ?E)) "
                     "(subclass ?C ?E)))"));
  out.push_back(meta("meta_subclass_reflexive",
                     "(forall (?C ?D) (=> (subclass ?C ?D) (and (subclass ?C ?C) "
                     "(subclass ?D ?D))))"));
  out.push_back(meta("meta_instance_subclass",
                     "(forall (?X ?C ?D) (=> (and (instance ?X ?C) (subclass ?C ?D)) "
                     "(instance ?X ?D)))"));
  out.push_back(meta("meta_disjoint",
                     "(forall (?C ?D) (=> (disjoint ?C ?D) (not (exists (?X) "
                     "(and (instance ?X ?C) (instance ?X ?D))))))"));
  out.push_back(meta("meta_disjoint_symmetric",
                     "(forall (?C ?D) (=> (disjoint ?C ?D) (disjoint ?D ?C)))"));

  for (std::size_t n = 2; n <= max_partition_members; ++n) {
    const std::string vars = member_vars(n);
    const std::string head = "(partition ?C" + vars + ")";
    std::string exhaustive = "(forall (?C" + vars + ") (=> " + head +
                             " (forall (?X) (=> (instance ?X ?C) (or";
    for (std::size_t i = 1; i <= n; ++i) exhaustive += " (instance ?X ?C" + std::to_string(i) + ")";
    exhaustive += ")))))";
    out.push_back(meta("meta_partition" + std::to_string(n) + "_exhaustive", exhaustive));

    std::string cover = "(forall (?C" + vars + ") (=> " + head + " (and";
    for (std::size_t i = 1; i <= n; ++i) cover += " (subclass ?C" + std::to_string(i) + " ?C)";
    for (std::size_t i = 1; i <= n; ++i) {
      for (std::size_t j = i + 1; j <= n; ++j) {
        cover += " (disjoint ?C" + std::to_string(i) + " ?C" + std::to_string(j) + ")";
      }
    }
    cover += ")))";
    out.push_back(meta("meta_partition" + std::to_string(n) + "_disjoint_cover", cover));
  }
  return out;
}

namespace {

bool parse_position(const std::string& s, std::size_t& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size() && out > 0;
}

bool all_constants(std::span<const Term> args) {
  return std::all_of(args.begin(), args.end(), [](const Term& t) { return t.is_constant(); });
}

}  // namespace

bool add_signature_declaration(SignatureMap& signatures, const Formula& f) {
  if (f.kind() != Formula::Kind::Atom || !f.predicate().is_constant()) return false;
  const std::string& p = f.predicate().name();
  auto args = f.args();
  auto entry = [&](const std::string& rel) -> RelationSignature& {
    auto& sig = signatures[rel];
    sig.relation = rel;
    return sig;
  };
  if ((p == "domain" || p == "domainSubclass") && args.size() == 3 && all_constants(args)) {
    std::size_t pos = 0;
    if (!parse_position(args[1].name(), pos)) return false;
    ArgDomain d{pos, args[2].name(), p == "domain" ? ArgMode::Instance : ArgMode::Subclass};
    auto found = signatures.find(args[0].name());
    if (found != signatures.end()) {
      if (const ArgDomain* existing = found->second.domain_at(pos)) {
        if (!(*existing == d)) throw ConflictingDomain(found->second.relation, pos);
        return true;
      }
    }
    RelationSignature& sig = entry(args[0].name());
    auto at = std::lower_bound(sig.arg_domains.begin(), sig.arg_domains.end(), pos,
                               [](const ArgDomain& a, std::size_t v) { return a.position < v; });
    sig.arg_domains.insert(at, std::move(d));
    sig.min_arity = std::max(sig.min_arity, pos);
    return true;
  }
  if (p == "instance" && args.size() == 2 && all_constants(args) &&
      args[1].name() == "VariableArityRelation") {
    entry(args[0].name()).variable_arity = true;
    return true;
  }
  return false;
}

SignatureMap build_signatures(const std::vector<Formula>& statements) {
  SignatureMap out;
  for (const Formula& f : statements) add_signature_declaration(out, f);
  return out;
}

// ---------------------------------------------------------------------------
// Row variables

namespace {

void collect_all_variable_names(const Term& t, std::unordered_set<std::string>& out) {
  if (t.is_variable() || t.is_row_variable()) out.insert(t.name());
  if (t.is_compound()) {
    collect_all_variable_names(t.head(), out);
    for (const Term& a : t.args()) collect_all_variable_names(a, out);
  }
}

void collect_all_variable_names(const Formula& f, std::unordered_set<std::string>& out) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      collect_all_variable_names(f.predicate(), out);
      for (const Term& a : f.args()) collect_all_variable_names(a, out);
      return;
    case Formula::Kind::Equal:
      collect_all_variable_names(f.lhs_term(), out);
      collect_all_variable_names(f.rhs_term(), out);
      return;
    default:
      for (const auto& v : f.variables()) out.insert(v);
      for (const Formula& g : f.operands()) collect_all_variable_names(g, out);
      return;
  }
}

void check_rows(std::span<const Term> args) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    const Term& a = args[i];
    if (a.is_row_variable() && i + 1 != args.size()) {
      throw RowVariableNotTrailing("row variable @" + a.name() + " is not the last argument");
    }
    if (a.is_compound()) check_rows(a.args());
  }
}

void check_rows(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Atom: check_rows(f.args()); return;
    case Formula::Kind::Equal:
      for (const Term* t : {&f.lhs_term(), &f.rhs_term()}) {
        if (t->is_row_variable()) {
          throw RowVariableNotTrailing("row variable @" + t->name() + " used as an equality side");
        }
        if (t->is_compound()) check_rows(t->args());
      }
      return;
    default:
      for (const Formula& g : f.operands()) check_rows(g);
      return;
  }
}

using RowBindings = std::vector<std::pair<std::string, std::vector<std::string>>>;

const std::vector<std::string>* lookup(const RowBindings& b, const std::string& name) {
  for (const auto& [k, v] : b) {
    if (k == name) return &v;
  }
  return nullptr;
}

std::vector<Term> splice_args(std::span<const Term> args, const RowBindings& b);

Term splice(const Term& t, const RowBindings& b) {
  if (!t.is_compound()) return t;
  return Term::compound(t.head(), splice_args(t.args(), b));
}

std::vector<Term> splice_args(std::span<const Term> args, const RowBindings& b) {
  std::vector<Term> out;
  out.reserve(args.size());
  for (const Term& a : args) {
    if (a.is_row_variable()) {
      for (const auto& v : *lookup(b, a.name())) out.push_back(Term::variable(v));
    } else {
      out.push_back(splice(a, b));
    }
  }
  return out;
}

Formula splice(const Formula& f, const RowBindings& b) {
  switch (f.kind()) {
    case Formula::Kind::Atom: return Formula::atom(f.predicate(), splice_args(f.args(), b));
    case Formula::Kind::Equal: return Formula::equal(splice(f.lhs_term(), b), splice(f.rhs_term(), b));
    case Formula::Kind::Not: return Formula::negation(splice(f.operands()[0], b));
    case Formula::Kind::Implies:
      return Formula::implies(splice(f.operands()[0], b), splice(f.operands()[1], b));
    case Formula::Kind::Iff:
      return Formula::iff(splice(f.operands()[0], b), splice(f.operands()[1], b));
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      std::vector<Formula> ops;
      for (const Formula& g : f.operands()) ops.push_back(splice(g, b));
      return f.kind() == Formula::Kind::And ? Formula::conjunction(std::move(ops))
                                            : Formula::disjunction(std::move(ops));
    }
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      std::vector<std::string> vars(f.variables().begin(), f.variables().end());
      return f.kind() == Formula::Kind::Forall ? Formula::forall(std::move(vars), splice(f.body(), b))
                                               : Formula::exists(std::move(vars), splice(f.body(), b));
    }
  }
  return f;
}

}  // namespace

std::vector<Formula> expand_rows(const Formula& f, std::size_t max_row_arity) {
  if (max_row_arity == 0) throw std::invalid_argument("max_row_arity must be positive");
  check_rows(f);
  const auto rows = kif::collect_variables(f).row;
  if (rows.empty()) return {f};

  std::unordered_set<std::string> taken;
  collect_all_variable_names(f, taken);
  // Fresh names are shared across arities so that the k-ary expansion is a
  // prefix of the (k+1)-ary one.
  std::vector<std::pair<std::string, std::vector<std::string>>> fresh;
  for (const auto& row : rows) {
    std::vector<std::string> names;
    for (std::size_t i = 1; i <= max_row_arity; ++i) {
      std::string candidate = row + std::to_string(i);
      while (taken.count(candidate)) candidate += '_';
      taken.insert(candidate);
      names.push_back(std::move(candidate));
    }
    fresh.emplace_back(row, std::move(names));
  }

  std::vector<Formula> out;
  out.reserve(max_row_arity);
  for (std::size_t k = 1; k <= max_row_arity; ++k) {
    RowBindings b;
    for (const auto& [row, names] : fresh) {
      b.emplace_back(row, std::vector<std::string>(names.begin(), names.begin() + k));
    }
    out.push_back(splice(f, b));
  }
  return out;
}

// ---------------------------------------------------------------------------
// holds_k reification

std::string holds_name(std::size_t arity) { return "holds_" + std::to_string(arity); }

bool is_holds_name(std::string_view name) noexcept {
  constexpr std::string_view prefix = "holds_";
  if (name.size() <= prefix.size() || name.substr(0, prefix.size()) != prefix) return false;
  return std::all_of(name.begin() + prefix.size(), name.end(),
                     [](char c) { return c >= '0' && c <= '9'; });
}

namespace {

template <typename Fn>
Formula map_atoms(const Formula& f, const Fn& fn) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
    case Formula::Kind::Equal: return fn(f);
    case Formula::Kind::Not: return Formula::negation(map_atoms(f.operands()[0], fn));
    case Formula::Kind::Implies:
      return Formula::implies(map_atoms(f.operands()[0], fn), map_atoms(f.operands()[1], fn));
    case Formula::Kind::Iff:
      return Formula::iff(map_atoms(f.operands()[0], fn), map_atoms(f.operands()[1], fn));
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      std::vector<Formula> ops;
      ops.reserve(f.operands().size());
      for (const Formula& g : f.operands()) ops.push_back(map_atoms(g, fn));
      return f.kind() == Formula::Kind::And ? Formula::conjunction(std::move(ops))
                                            : Formula::disjunction(std::move(ops));
    }
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: {
      std::vector<std::string> vars(f.variables().begin(), f.variables().end());
      Formula body = map_atoms(f.body(), fn);
      return f.kind() == Formula::Kind::Forall ? Formula::forall(std::move(vars), std::move(body))
                                               : Formula::exists(std::move(vars), std::move(body));
    }
  }
  return f;
}

template <typename Fn>
void for_each_atom(const Formula& f, const Fn& fn) {
  if (f.is_atomic()) {
    fn(f);
    return;
  }
  for (const Formula& g : f.operands()) for_each_atom(g, fn);
}

}  // namespace

Formula reify_variable_predicates(const Formula& f) {
  return map_atoms(f, [](const Formula& a) -> Formula {
    if (a.kind() != Formula::Kind::Atom) return a;
    const Term& p = a.predicate();
    auto args = a.args();
    if (p.is_variable()) {
      std::vector<Term> reified;
      reified.reserve(args.size() + 1);
      reified.push_back(p);
      reified.insert(reified.end(), args.begin(), args.end());
      return Formula::atom(Term::constant(holds_name(args.size() + 1)), std::move(reified));
    }
    if (p.is_constant() && p.name() == "holds" && !args.empty()) {
      return Formula::atom(Term::constant(holds_name(args.size())),
                           std::vector<Term>(args.begin(), args.end()));
    }
    return a;
  });
}

namespace {

void argument_constants(const Term& t, std::set<std::string>& out) {
  if (t.is_constant()) {
    out.insert(t.name());
  } else if (t.is_compound()) {
    for (const Term& a : t.args()) argument_constants(a, out);
  }
}

}  // namespace

std::vector<Formula> bridging_axioms(const std::vector<Formula>& formulas) {
  std::map<std::string, std::set<std::size_t>> predicate_arities;
  std::set<std::string> in_argument_position;
  for (const Formula& f : formulas) {
    for_each_atom(f, [&](const Formula& a) {
      if (a.kind() == Formula::Kind::Equal) {
        argument_constants(a.lhs_term(), in_argument_position);
        argument_constants(a.rhs_term(), in_argument_position);
        return;
      }
      if (a.predicate().is_constant() && !is_holds_name(a.predicate().name()) &&
          !a.args().empty()) {
        predicate_arities[a.predicate().name()].insert(a.args().size());
      }
      for (const Term& t : a.args()) argument_constants(t, in_argument_position);
    });
  }

  std::vector<Formula> out;
  for (const auto& [rel, arities] : predicate_arities) {
    if (!in_argument_position.count(rel)) continue;
    for (std::size_t k : arities) {
      std::vector<std::string> vars;
      std::vector<Term> xs;
      for (std::size_t i = 1; i <= k; ++i) {
        vars.push_back("X" + std::to_string(i));
        xs.push_back(Term::variable(vars.back()));
      }
      std::vector<Term> reified{Term::constant(rel)};
      reified.insert(reified.end(), xs.begin(), xs.end());
      Formula bridge =
          Formula::iff(Formula::atom(Term::constant(holds_name(k + 1)), std::move(reified)),
                       Formula::atom(Term::constant(rel), std::move(xs)));
      out.push_back(Formula::forall(std::move(vars), std::move(bridge)));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Type guards

namespace {

bool is_guard_atom(const Formula& f) {
  if (f.kind() != Formula::Kind::Atom || !f.predicate().is_constant()) return false;
  const std::string& p = f.predicate().name();
  auto args = f.args();
  return (p == "instance" || p == "subclass") && args.size() == 2 && args[0].is_variable() &&
         args[1].is_constant();
}

bool is_guard_block(const Formula& f) {
  if (is_guard_atom(f)) return true;
  if (f.kind() != Formula::Kind::And) return false;
  return std::all_of(f.operands().begin(), f.operands().end(), is_guard_atom);
}

Formula guard_atom(const std::string& var, const ArgDomain& d) {
  return Formula::atom(Term::constant(d.mode == ArgMode::Instance ? "instance" : "subclass"),
                       {Term::variable(var), Term::constant(d.concept_name)});
}

struct GuardCollector {
  const SignatureMap& sigs;
  const std::string& var;
  std::vector<Formula> guards;
  std::set<std::string> seen;

  void add(const Formula& g) {
    if (seen.insert(kif::render(g)).second) guards.push_back(g);
  }

  void args_of(const std::string& relation, std::span<const Term> args) {
    auto it = sigs.find(relation);
    for (std::size_t i = 0; i < args.size(); ++i) {
      const Term& a = args[i];
      if (a.is_variable() && a.name() == var && it != sigs.end()) {
        if (const ArgDomain* d = it->second.domain_at(i + 1)) add(guard_atom(var, *d));
      } else if (a.is_compound()) {
        term(a);
      }
    }
  }

  void term(const Term& t) {
    if (!t.is_compound()) return;
    if (t.head().is_constant()) {
      args_of(t.head().name(), t.args());
    } else {
      for (const Term& a : t.args()) term(a);
    }
  }

  void formula(const Formula& f) {
    switch (f.kind()) {
      case Formula::Kind::Atom:
        if (is_guard_atom(f)) return;
        if (f.predicate().is_constant()) {
          args_of(f.predicate().name(), f.args());
        } else {
          for (const Term& a : f.args()) term(a);
        }
        return;
      case Formula::Kind::Equal:
        term(f.lhs_term());
        term(f.rhs_term());
        return;
      case Formula::Kind::Forall:
      case Formula::Kind::Exists:
        for (const auto& v : f.variables()) {
          if (v == var) return;  // shadowed
        }
        formula(f.body());
        return;
      default:
        for (const Formula& g : f.operands()) formula(g);
        return;
    }
  }
};

Formula conjoin(std::vector<Formula> fs) {
  return fs.size() == 1 ? std::move(fs.front()) : Formula::conjunction(std::move(fs));
}

Formula guard_rec(const Formula& f, const SignatureMap& sigs) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
    case Formula::Kind::Equal: return f;
    case Formula::Kind::Not: return Formula::negation(guard_rec(f.operands()[0], sigs));
    case Formula::Kind::Implies:
      return Formula::implies(guard_rec(f.operands()[0], sigs), guard_rec(f.operands()[1], sigs));
    case Formula::Kind::Iff:
      return Formula::iff(guard_rec(f.operands()[0], sigs), guard_rec(f.operands()[1], sigs));
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      std::vector<Formula> ops;
      for (const Formula& g : f.operands()) ops.push_back(guard_rec(g, sigs));
      return f.kind() == Formula::Kind::And ? Formula::conjunction(std::move(ops))
                                            : Formula::disjunction(std::move(ops));
    }
    case Formula::Kind::Forall:
    case Formula::Kind::Exists: break;
  }

  std::vector<std::string> vars(f.variables().begin(), f.variables().end());
  Formula body = guard_rec(f.body(), sigs);

  std::vector<Formula> required;
  std::set<std::string> required_seen;
  for (const auto& v : vars) {
    GuardCollector c{sigs, v, {}, {}};
    c.formula(body);
    for (auto& g : c.guards) {
      if (required_seen.insert(kif::render(g)).second) required.push_back(std::move(g));
    }
  }

  std::set<std::string> present;
  auto note = [&](const Formula& block) {
    if (block.kind() == Formula::Kind::And) {
      for (const Formula& g : block.operands()) present.insert(kif::render(g));
    } else {
      present.insert(kif::render(block));
    }
  };
  const bool universal = f.kind() == Formula::Kind::Forall;
  if (universal) {
    for (const Formula* cur = &body;
         cur->kind() == Formula::Kind::Implies && is_guard_block(cur->operands()[0]);
         cur = &cur->operands()[1]) {
      note(cur->operands()[0]);
    }
  } else if (body.kind() == Formula::Kind::And) {
    for (const Formula& g : body.operands()) {
      if (is_guard_atom(g)) note(g);
    }
  }

  std::vector<Formula> missing;
  for (auto& g : required) {
    if (!present.count(kif::render(g))) missing.push_back(std::move(g));
  }
  if (!missing.empty()) {
    if (universal) {
      body = Formula::implies(conjoin(std::move(missing)), std::move(body));
    } else {
      if (body.kind() == Formula::Kind::And) {
        missing.insert(missing.end(), body.operands().begin(), body.operands().end());
      } else {
        missing.push_back(std::move(body));
      }
      body = Formula::conjunction(std::move(missing));
    }
  }
  return universal ? Formula::forall(std::move(vars), std::move(body))
                   : Formula::exists(std::move(vars), std::move(body));
}

}  // namespace

Formula guard_types(const Formula& f, const SignatureMap& signatures) {
  auto free = kif::free_variables_ordered(f);
  if (free.empty()) return guard_rec(f, signatures);
  return guard_rec(Formula::forall(std::move(free), f), signatures);
}

// ---------------------------------------------------------------------------

namespace {

std::string term_reason(const Term& t, const std::vector<std::string>& functions) {
  if (!t.is_compound()) return {};
  const Term& head = t.head();
  if (!head.is_constant()) return "variable in function position";
  const std::string& name = head.name();
  const bool function = (name.size() > 2 && name.compare(name.size() - 2, 2, "Fn") == 0) ||
                        std::find(functions.begin(), functions.end(), name) != functions.end();
  if (!function) return "formula-valued argument (" + name + ")";
  for (const Term& a : t.args()) {
    auto r = term_reason(a, functions);
    if (!r.empty()) return r;
  }
  return {};
}

}  // namespace

std::string untranslatable_reason(const Formula& f, const std::vector<std::string>& functions) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      if (f.predicate().is_variable() && f.args().empty()) return "variable in formula position";
      for (const Term& a : f.args()) {
        auto r = term_reason(a, functions);
        if (!r.empty()) return r;
      }
      return {};
    case Formula::Kind::Equal: {
      auto r = term_reason(f.lhs_term(), functions);
      return r.empty() ? term_reason(f.rhs_term(), functions) : r;
    }
    default:
      for (const Formula& g : f.operands()) {
        auto r = untranslatable_reason(g, functions);
        if (!r.empty()) return r;
      }
      return {};
  }
}

}  // namespace ontoprobe::folify
