#include <algorithm>
#include <chrono>
#include <map>
#include <queue>
#include <unordered_map>

#include "ontoprobe/mini/prover.hpp"

namespace ontoprobe::mini {

const char* to_string(SaturationStatus s) noexcept {
  switch (s) {
    case SaturationStatus::ProofFound: return "ProofFound";
    case SaturationStatus::BudgetExhausted: return "BudgetExhausted";
    case SaturationStatus::Saturated: return "Saturated";
  }
  return "?";
}

namespace {

void shift(Term& t, std::int32_t offset) {
  if (t.is_variable()) {
    t.symbol -= offset;
    return;
  }
  for (Term& a : t.args) shift(a, offset);
}

class Unifier {
 public:
  explicit Unifier(std::size_t vars) : bind_(vars, nullptr) {}

  bool unify(const Term& a, const Term& b) {
    const Term* x = deref(&a);
    const Term* y = deref(&b);
    if (x == y) return true;
    if (x->is_variable()) return bind(x->variable_index(), y);
    if (y->is_variable()) return bind(y->variable_index(), x);
    if (x->symbol != y->symbol || x->args.size() != y->args.size()) return false;
    for (std::size_t i = 0; i < x->args.size(); ++i) {
      if (!unify(x->args[i], y->args[i])) return false;
    }
    return true;
  }

  bool unify_args(const std::vector<Term>& a, const std::vector<Term>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (!unify(a[i], b[i])) return false;
    }
    return true;
  }

  Term apply(const Term& t) const {
    const Term* d = deref(&t);
    if (d->is_variable()) return *d;
    Term out{d->symbol, {}};
    out.args.reserve(d->args.size());
    for (const Term& a : d->args) out.args.push_back(apply(a));
    return out;
  }

  Literal apply(const Literal& l) const {
    Literal out{l.positive, l.predicate, {}};
    out.args.reserve(l.args.size());
    for (const Term& a : l.args) out.args.push_back(apply(a));
    return out;
  }

 private:
  const Term* deref(const Term* t) const {
    while (t->is_variable()) {
      const Term* b = bind_[static_cast<std::size_t>(t->variable_index())];
      if (!b) break;
      t = b;
    }
    return t;
  }

  bool occurs(std::int32_t v, const Term* t) const {
    t = deref(t);
    if (t->is_variable()) return t->variable_index() == v;
    for (const Term& a : t->args) {
      if (occurs(v, &a)) return true;
    }
    return false;
  }

  bool bind(std::int32_t v, const Term* t) {
    if (occurs(v, t)) return false;
    bind_[static_cast<std::size_t>(v)] = t;
    return true;
  }

  std::vector<const Term*> bind_;
};

// One-way matching: only pattern variables are bound; target variables are
// rigid.
bool match(const Term& pattern, const Term& target, std::vector<const Term*>& bind) {
  if (pattern.is_variable()) {
    auto idx = static_cast<std::size_t>(pattern.variable_index());
    if (idx >= bind.size()) bind.resize(idx + 1, nullptr);
    if (!bind[idx]) {
      bind[idx] = &target;
      return true;
    }
    return *bind[idx] == target;
  }
  if (pattern.symbol != target.symbol || pattern.args.size() != target.args.size()) return false;
  for (std::size_t i = 0; i < pattern.args.size(); ++i) {
    if (!match(pattern.args[i], target.args[i], bind)) return false;
  }
  return true;
}

bool subsumes_from(const Clause& c, const Clause& d, std::size_t i,
                   std::vector<const Term*>& bind) {
  if (i == c.literals.size()) return true;
  const Literal& l = c.literals[i];
  for (const Literal& m : d.literals) {
    if (m.positive != l.positive || m.predicate != l.predicate) continue;
    auto saved = bind;
    bool ok = true;
    for (std::size_t k = 0; k < l.args.size() && ok; ++k) ok = match(l.args[k], m.args[k], bind);
    if (ok && subsumes_from(c, d, i + 1, bind)) return true;
    bind = std::move(saved);
  }
  return false;
}

std::uint64_t feature_mask(const Clause& c) {
  std::uint64_t m = 0;
  for (const Literal& l : c.literals) m |= std::uint64_t{1} << ((l.predicate * 2 + l.positive) % 64);
  return m;
}

struct Entry {
  Clause clause;
  std::uint64_t mask = 0;
  bool positive = false;
  bool active = false;
  bool dead = false;
};

class Saturation {
 public:
  Saturation(Signature& sig, const SaturationBudget& budget)
      : sig_(sig),
        budget_(budget),
        deadline_(std::chrono::steady_clock::now() +
                  std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                      std::chrono::duration<double>(budget.wall_limit_s))) {}

  SaturationResult run(std::vector<Clause> inputs) {
    for (Clause& c : inputs) {
      if (admit(std::move(c))) return proof();
    }
    while (!passive_.empty()) {
      if (result_.steps >= budget_.max_steps || store_.size() >= budget_.max_clauses ||
          out_of_time()) {
        result_.status = SaturationStatus::BudgetExhausted;
        return std::move(result_);
      }
      const std::size_t given = passive_.top().second;
      passive_.pop();
      if (store_[given].dead) continue;
      ++result_.steps;
      if (forward_subsumed(store_[given].clause, given)) {
        store_[given].dead = true;
        continue;
      }
      backward_subsume(given);
      activate(given);
      if (generate(given)) return proof();
      if (timed_out_) {
        result_.status = SaturationStatus::BudgetExhausted;
        return std::move(result_);
      }
    }
    result_.status = SaturationStatus::Saturated;
    return std::move(result_);
  }

 private:
  using Key = std::pair<std::uint32_t, bool>;
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept { return k.first * 2 + k.second; }
  };

  bool out_of_time() {
    if (std::chrono::steady_clock::now() >= deadline_) timed_out_ = true;
    return timed_out_;
  }

  // Returns true when the admitted clause is empty.
  bool admit(Clause c) {
    normalize(c);
    if (is_tautology(c)) return false;
    c.id = store_.size();
    const bool empty = c.empty();
    Entry e;
    e.mask = feature_mask(c);
    e.positive = c.positive();
    e.clause = std::move(c);
    store_.push_back(std::move(e));
    ++result_.generated;
    if (empty) {
      empty_ = store_.size() - 1;
      return true;
    }
    passive_.emplace(std::make_pair(store_.back().clause.weight(), store_.size() - 1));
    return false;
  }

  bool forward_subsumed(const Clause& c, std::size_t self) const {
    const std::uint64_t m = feature_mask(c);
    for (std::size_t idx : active_) {
      const Entry& e = store_[idx];
      if (e.dead || idx == self) continue;
      if (e.clause.literals.size() > c.literals.size() || (e.mask & ~m) != 0) continue;
      std::vector<const Term*> bind;
      if (subsumes_from(e.clause, c, 0, bind)) return true;
    }
    return false;
  }

  void backward_subsume(std::size_t given) {
    const Entry& g = store_[given];
    for (std::size_t idx : active_) {
      Entry& e = store_[idx];
      if (e.dead || g.clause.literals.size() > e.clause.literals.size() ||
          (g.mask & ~e.mask) != 0) {
        continue;
      }
      std::vector<const Term*> bind;
      if (subsumes_from(g.clause, e.clause, 0, bind)) e.dead = true;
    }
  }

  void activate(std::size_t idx) {
    Entry& e = store_[idx];
    e.active = true;
    active_.push_back(idx);
    for (std::size_t i = 0; i < e.clause.literals.size(); ++i) {
      const Literal& l = e.clause.literals[i];
      index_[{l.predicate, l.positive}].emplace_back(idx, i);
    }
  }

  bool generate(std::size_t given) {
    // Factoring.
    {
      const Clause g = store_[given].clause;
      for (std::size_t i = 0; i < g.literals.size(); ++i) {
        for (std::size_t j = i + 1; j < g.literals.size(); ++j) {
          const Literal& a = g.literals[i];
          const Literal& b = g.literals[j];
          if (a.positive != b.positive || a.predicate != b.predicate) continue;
          Unifier u(static_cast<std::size_t>(g.variable_count()));
          if (!u.unify_args(a.args, b.args)) continue;
          Clause f;
          for (std::size_t k = 0; k < g.literals.size(); ++k) {
            if (k != j) f.literals.push_back(u.apply(g.literals[k]));
          }
          f.parents = {g.id};
          f.rule = "factoring";
          if (admit(std::move(f))) return true;
        }
      }
    }

    // Binary positive resolution against the active set (the given clause is
    // already active, so it is considered as a partner of itself).
    const Clause g = store_[given].clause;
    const bool g_positive = store_[given].positive;
    const std::int32_t g_vars = g.variable_count();
    for (std::size_t i = 0; i < g.literals.size(); ++i) {
      const Literal& gl = g.literals[i];
      auto it = index_.find({gl.predicate, !gl.positive});
      if (it == index_.end()) continue;
      const auto partners = it->second;  // admit() may grow the index
      for (const auto& [pidx, j] : partners) {
        if (store_[pidx].dead) continue;
        if (!g_positive && !store_[pidx].positive) continue;
        if (pidx == given) continue;
        if ((++probe_ & 0xFF) == 0 && out_of_time()) return false;

        Clause p = store_[pidx].clause;
        for (Literal& l : p.literals) {
          for (Term& a : l.args) shift(a, g_vars);
        }
        Unifier u(static_cast<std::size_t>(std::max(g_vars, p.variable_count())));
        if (!u.unify_args(gl.args, p.literals[j].args)) continue;
        Clause r;
        for (std::size_t k = 0; k < g.literals.size(); ++k) {
          if (k != i) r.literals.push_back(u.apply(g.literals[k]));
        }
        for (std::size_t k = 0; k < p.literals.size(); ++k) {
          if (k != j) r.literals.push_back(u.apply(p.literals[k]));
        }
        r.parents = {g.id, store_[pidx].clause.id};
        r.rule = "resolution";
        normalize(r);
        if (!r.empty() && (is_tautology(r) || forward_subsumed(r, kNoParent))) continue;
        if (admit(std::move(r))) return true;
      }
    }
    return false;
  }

  SaturationResult proof() {
    result_.status = SaturationStatus::ProofFound;
    std::vector<bool> seen(store_.size(), false);
    std::vector<std::size_t> stack{empty_};
    while (!stack.empty()) {
      std::size_t id = stack.back();
      stack.pop_back();
      if (seen[id]) continue;
      seen[id] = true;
      const Clause& c = store_[id].clause;
      if (c.parents.empty() && !c.conjecture && !c.source.empty()) result_.used_axioms.insert(c.source);
      for (std::size_t p : c.parents) stack.push_back(p);
    }
    for (std::size_t id = 0; id < store_.size(); ++id) {
      if (seen[id]) result_.derivation.push_back(store_[id].clause);
    }
    return std::move(result_);
  }

  Signature& sig_;
  SaturationBudget budget_;
  std::chrono::steady_clock::time_point deadline_;
  bool timed_out_ = false;
  std::size_t probe_ = 0;

  std::vector<Entry> store_;
  std::vector<std::size_t> active_;
  std::unordered_map<Key, std::vector<std::pair<std::size_t, std::size_t>>, KeyHash> index_;
  std::priority_queue<std::pair<std::size_t, std::size_t>,
                      std::vector<std::pair<std::size_t, std::size_t>>, std::greater<>>
      passive_;
  std::size_t empty_ = 0;
  SaturationResult result_;
};

Term var(std::int32_t i) { return Term::variable(i); }

Clause internal(std::vector<Literal> lits) {
  Clause c;
  c.literals = std::move(lits);
  c.rule = "equality";
  return c;
}

// Reflexivity, symmetry, transitivity and one substitution axiom per argument
// position of every symbol seen so far.
std::vector<Clause> congruence_axioms(Signature& sig) {
  const std::uint32_t eq = sig.predicate(Signature::kEquality, 2);
  auto eq_lit = [&](bool pos, Term a, Term b) { return Literal{pos, eq, {std::move(a), std::move(b)}}; };
  std::vector<Clause> out;
  out.push_back(internal({eq_lit(true, var(0), var(0))}));
  out.push_back(internal({eq_lit(false, var(0), var(1)), eq_lit(true, var(1), var(0))}));
  out.push_back(internal({eq_lit(false, var(0), var(1)), eq_lit(false, var(1), var(2)),
                          eq_lit(true, var(0), var(2))}));

  auto args_with = [](std::size_t arity, std::size_t pos, std::int32_t v) {
    std::vector<Term> args;
    for (std::size_t k = 0; k < arity; ++k) {
      args.push_back(k == pos ? var(v) : var(static_cast<std::int32_t>(k + 2)));
    }
    return args;
  };
  const std::size_t functions = sig.function_count();
  for (std::int32_t f = 0; f < static_cast<std::int32_t>(functions); ++f) {
    const std::size_t n = sig.function_arity(f);
    for (std::size_t pos = 0; pos < n; ++pos) {
      out.push_back(internal({eq_lit(false, var(0), var(1)),
                              eq_lit(true, Term{f, args_with(n, pos, 0)}, Term{f, args_with(n, pos, 1)})}));
    }
  }
  const std::size_t predicates = sig.predicate_count();
  for (std::uint32_t p = 0; p < predicates; ++p) {
    if (p == eq) continue;
    const std::size_t n = sig.predicate_arity(p);
    for (std::size_t pos = 0; pos < n; ++pos) {
      out.push_back(internal({eq_lit(false, var(0), var(1)), Literal{false, p, args_with(n, pos, 0)},
                              Literal{true, p, args_with(n, pos, 1)}}));
    }
  }
  return out;
}

bool mentions_equality(const std::vector<Clause>& cs, const Signature& sig) {
  for (const Clause& c : cs) {
    for (const Literal& l : c.literals) {
      if (sig.predicate_name(l.predicate) == Signature::kEquality) return true;
    }
  }
  return false;
}

// A clause holding a literal whose predicate never occurs with the opposite
// sign cannot take part in a refutation; dropping it keeps satisfiability.
void drop_pure_clauses(std::vector<Clause>& cs) {
  for (bool changed = true; changed;) {
    std::map<std::uint32_t, unsigned> signs;  // bit 0 negative, bit 1 positive
    for (const Clause& c : cs) {
      for (const Literal& l : c.literals) signs[l.predicate] |= l.positive ? 2u : 1u;
    }
    const auto before = cs.size();
    cs.erase(std::remove_if(cs.begin(), cs.end(),
                            [&](const Clause& c) {
                              return std::any_of(c.literals.begin(), c.literals.end(), [&](const Literal& l) {
                                return signs[l.predicate] != 3u;
                              });
                            }),
             cs.end());
    changed = cs.size() != before;
  }
}

}  // namespace

SaturationResult saturate(std::vector<Clause> axioms, std::vector<Clause> negated_conjecture,
                          Signature& sig, const SaturationBudget& budget) {
  if (!budget.valid()) throw std::invalid_argument("saturation budget must be positive");
  std::vector<Clause> inputs = std::move(axioms);
  for (Clause& c : negated_conjecture) {
    c.conjecture = true;
    inputs.push_back(std::move(c));
  }
  if (mentions_equality(inputs, sig)) {
    for (Clause& c : congruence_axioms(sig)) inputs.push_back(std::move(c));
  }
  for (Clause& c : inputs) c.parents.clear();
  drop_pure_clauses(inputs);
  return Saturation(sig, budget).run(std::move(inputs));
}

}  // namespace ontoprobe::mini
