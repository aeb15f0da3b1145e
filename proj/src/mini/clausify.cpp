#include <set>
#include <stdexcept>

#include "ontoprobe/folify/transform.hpp"
#include "ontoprobe/mini/prover.hpp"

namespace ontoprobe::mini {

namespace {

constexpr std::size_t kMaxClauses = 100'000;

struct Nnf {
  enum class Kind { Lit, And, Or, Forall, Exists };
  Kind kind;
  bool positive = true;
  const kif::Formula* atom = nullptr;
  std::vector<Nnf> subs;
  std::vector<std::string> vars;
};

Nnf lit(const kif::Formula& f, bool positive) { return Nnf{Nnf::Kind::Lit, positive, &f, {}, {}}; }

Nnf junction(Nnf::Kind kind, std::vector<Nnf> subs) {
  return Nnf{kind, true, nullptr, std::move(subs), {}};
}

Nnf to_nnf(const kif::Formula& f, bool pos) {
  using K = kif::Formula::Kind;
  const auto ops = f.operands();
  switch (f.kind()) {
    case K::Atom:
    case K::Equal: return lit(f, pos);
    case K::Not: return to_nnf(ops[0], !pos);
    case K::And:
    case K::Or: {
      std::vector<Nnf> subs;
      for (const auto& g : ops) subs.push_back(to_nnf(g, pos));
      const bool conj = (f.kind() == K::And) == pos;
      return junction(conj ? Nnf::Kind::And : Nnf::Kind::Or, std::move(subs));
    }
    case K::Implies:
      if (pos) return junction(Nnf::Kind::Or, {to_nnf(ops[0], false), to_nnf(ops[1], true)});
      return junction(Nnf::Kind::And, {to_nnf(ops[0], true), to_nnf(ops[1], false)});
    case K::Iff:
      if (pos) {
        return junction(Nnf::Kind::And,
                        {junction(Nnf::Kind::Or, {to_nnf(ops[0], false), to_nnf(ops[1], true)}),
                         junction(Nnf::Kind::Or, {to_nnf(ops[0], true), to_nnf(ops[1], false)})});
      }
      return junction(Nnf::Kind::And,
                      {junction(Nnf::Kind::Or, {to_nnf(ops[0], true), to_nnf(ops[1], true)}),
                       junction(Nnf::Kind::Or, {to_nnf(ops[0], false), to_nnf(ops[1], false)})});
    case K::Forall:
    case K::Exists: {
      const bool universal = (f.kind() == K::Forall) == pos;
      Nnf q{universal ? Nnf::Kind::Forall : Nnf::Kind::Exists, true, nullptr, {}, {}};
      q.vars.assign(f.variables().begin(), f.variables().end());
      q.subs.push_back(to_nnf(f.body(), pos));
      return q;
    }
  }
  throw std::logic_error("unreachable");
}

void free_names(const kif::Term& t, std::set<std::string>& out) {
  if (t.is_variable()) out.insert(t.name());
  if (t.is_compound()) {
    free_names(t.head(), out);
    for (const auto& a : t.args()) free_names(a, out);
  }
}

void free_names(const Nnf& n, std::set<std::string>& out) {
  if (n.kind == Nnf::Kind::Lit) {
    const kif::Formula& a = *n.atom;
    if (a.kind() == kif::Formula::Kind::Equal) {
      free_names(a.lhs_term(), out);
      free_names(a.rhs_term(), out);
    } else {
      free_names(a.predicate(), out);
      for (const auto& t : a.args()) free_names(t, out);
    }
    return;
  }
  std::set<std::string> inner;
  for (const Nnf& s : n.subs) free_names(s, inner);
  for (const auto& v : n.vars) inner.erase(v);
  out.insert(inner.begin(), inner.end());
}

using ClauseSet = std::vector<std::vector<Literal>>;

class Converter {
 public:
  explicit Converter(Signature& sig) : sig_(sig) {}

  ClauseSet run(const Nnf& n) { return cnf(n); }

 private:
  Term term(const kif::Term& t) {
    switch (t.kind()) {
      case kif::Term::Kind::Constant: return Term{sig_.function(t.name(), 0), {}};
      case kif::Term::Kind::Variable: return lookup(t.name());
      case kif::Term::Kind::RowVariable:
        throw std::runtime_error("row variable @" + t.name() + " cannot be clausified");
      case kif::Term::Kind::Compound: {
        std::vector<Term> args;
        if (!t.head().is_constant()) args.push_back(term(t.head()));
        for (const auto& a : t.args()) args.push_back(term(a));
        const std::string name = t.head().is_constant()
                                     ? t.head().name()
                                     : "apply_" + std::to_string(args.size());
        return Term{sig_.function(name, args.size()), std::move(args)};
      }
    }
    throw std::logic_error("unreachable");
  }

  Term lookup(const std::string& name) {
    for (auto it = env_.rbegin(); it != env_.rend(); ++it) {
      if (it->first == name) return it->second;
    }
    // Free variable: implicitly universal.
    Term v = Term::variable(next_var_++);
    env_.emplace(env_.begin(), name, v);
    return v;
  }

  Literal literal(const kif::Formula& a, bool positive) {
    Literal l;
    l.positive = positive;
    if (a.kind() == kif::Formula::Kind::Equal) {
      l.predicate = sig_.predicate(Signature::kEquality, 2);
      l.args = {term(a.lhs_term()), term(a.rhs_term())};
      return l;
    }
    const kif::Term& p = a.predicate();
    if (p.is_constant()) {
      for (const auto& t : a.args()) l.args.push_back(term(t));
      l.predicate = sig_.predicate(p.name(), l.args.size());
    } else {
      l.args.push_back(term(p));
      for (const auto& t : a.args()) l.args.push_back(term(t));
      l.predicate = sig_.predicate(folify::holds_name(l.args.size()), l.args.size());
    }
    return l;
  }

  ClauseSet cnf(const Nnf& n) {
    switch (n.kind) {
      case Nnf::Kind::Lit: return {{literal(*n.atom, n.positive)}};
      case Nnf::Kind::And: {
        ClauseSet out;
        for (const Nnf& s : n.subs) {
          ClauseSet part = cnf(s);
          out.insert(out.end(), std::make_move_iterator(part.begin()),
                     std::make_move_iterator(part.end()));
          if (out.size() > kMaxClauses) throw std::runtime_error("clausal form too large");
        }
        return out;
      }
      case Nnf::Kind::Or: {
        ClauseSet out{{}};
        for (const Nnf& s : n.subs) {
          ClauseSet part = cnf(s);
          if (out.size() * part.size() > kMaxClauses) {
            throw std::runtime_error("clausal form too large");
          }
          ClauseSet next;
          next.reserve(out.size() * part.size());
          for (const auto& a : out) {
            for (const auto& b : part) {
              auto c = a;
              c.insert(c.end(), b.begin(), b.end());
              next.push_back(std::move(c));
            }
          }
          out = std::move(next);
        }
        return out;
      }
      case Nnf::Kind::Forall: {
        const std::size_t mark = env_.size();
        for (const auto& v : n.vars) {
          Term var = Term::variable(next_var_++);
          env_.emplace_back(v, var);
          universals_.push_back(var);
        }
        ClauseSet out = cnf(n.subs.front());
        env_.resize(mark);
        universals_.resize(universals_.size() - n.vars.size());
        return out;
      }
      case Nnf::Kind::Exists: {
        std::set<std::string> used;
        free_names(n, used);
        std::vector<Term> dependencies;
        std::set<std::int32_t> seen;
        for (const auto& [name, value] : env_) {
          if (!used.count(name) || !value.is_variable()) continue;
          // Only the innermost binding of a name is visible.
          bool shadowed = false;
          for (auto it = env_.rbegin(); it != env_.rend(); ++it) {
            if (it->first == name) {
              shadowed = !(it->second == value);
              break;
            }
          }
          if (!shadowed && seen.insert(value.symbol).second) dependencies.push_back(value);
        }
        const std::size_t mark = env_.size();
        for (const auto& v : n.vars) {
          env_.emplace_back(v, Term{sig_.fresh_skolem(dependencies.size()), dependencies});
        }
        ClauseSet out = cnf(n.subs.front());
        env_.resize(mark);
        return out;
      }
    }
    throw std::logic_error("unreachable");
  }

  Signature& sig_;
  std::vector<std::pair<std::string, Term>> env_;
  std::vector<Term> universals_;
  std::int32_t next_var_ = 0;
};

}  // namespace

std::vector<Clause> clausify(const kif::Formula& f, Signature& sig, const std::string& source,
                             bool conjecture) {
  Nnf n = to_nnf(f, true);
  ClauseSet sets = Converter(sig).run(n);
  std::vector<Clause> out;
  for (auto& lits : sets) {
    Clause c;
    c.literals = std::move(lits);
    c.source = source;
    c.conjecture = conjecture;
    normalize(c);
    if (is_tautology(c)) continue;
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace ontoprobe::mini
