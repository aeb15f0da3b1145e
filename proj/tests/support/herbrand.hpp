#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ontoprobe/folify/tptp.hpp"

// Brute-force Herbrand oracle for function-free problems: enumerate every
// interpretation of the predicates over the problem's constants.
namespace herbrand {

namespace kif = ontoprobe::kif;
namespace folify = ontoprobe::folify;

struct Herbrand {
  std::vector<std::string> domain;
  std::map<std::pair<std::string, std::vector<std::string>>, std::size_t> atoms;

  void collect(const kif::Formula& f) {
    using K = kif::Formula::Kind;
    if (f.kind() == K::Atom) {
      for (const auto& t : f.args()) {
        if (t.is_constant() &&
            std::find(domain.begin(), domain.end(), t.name()) == domain.end()) {
          domain.push_back(t.name());
        }
      }
      preds[f.predicate().name()] = f.args().size();
      return;
    }
    if (f.is_quantifier()) return collect(f.body());
    for (const auto& g : f.operands()) collect(g);
  }

  void index() {
    if (domain.empty()) domain.push_back("a");
    for (const auto& [p, n] : preds) {
      std::vector<std::string> tuple(n);
      std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (i == n) {
          atoms.emplace(std::pair{p, tuple}, atoms.size());
          return;
        }
        for (const auto& c : domain) {
          tuple[i] = c;
          rec(i + 1);
        }
      };
      rec(0);
    }
  }

  bool eval(const kif::Formula& f, std::map<std::string, std::string>& env,
            std::uint64_t model) const {
    using K = kif::Formula::Kind;
    auto ops = f.operands();
    switch (f.kind()) {
      case K::Atom: {
        std::vector<std::string> tuple;
        for (const auto& t : f.args()) tuple.push_back(t.is_variable() ? env.at(t.name()) : t.name());
        return (model >> atoms.at({f.predicate().name(), tuple})) & 1u;
      }
      case K::Equal: throw std::logic_error("oracle is equality-free");
      case K::Not: return !eval(ops[0], env, model);
      case K::And:
        for (const auto& g : ops) {
          if (!eval(g, env, model)) return false;
        }
        return true;
      case K::Or:
        for (const auto& g : ops) {
          if (eval(g, env, model)) return true;
        }
        return false;
      case K::Implies: return !eval(ops[0], env, model) || eval(ops[1], env, model);
      case K::Iff: return eval(ops[0], env, model) == eval(ops[1], env, model);
      case K::Forall:
      case K::Exists: {
        const bool universal = f.kind() == K::Forall;
        std::function<bool(std::size_t)> rec = [&](std::size_t i) -> bool {
          if (i == f.variables().size()) return eval(f.body(), env, model);
          const std::string& v = f.variables()[i];
          auto saved = env.count(v) ? std::optional(env[v]) : std::nullopt;
          bool result = universal;
          for (const auto& c : domain) {
            env[v] = c;
            if (rec(i + 1) != universal) {
              result = !universal;
              break;
            }
          }
          if (saved) env[v] = *saved; else env.erase(v);
          return result;
        };
        return rec(0);
      }
    }
    return false;
  }

  std::map<std::string, std::size_t> preds;
};

inline bool oracle_entailed(const std::vector<folify::TptpInput>& inputs) {
  Herbrand h;
  for (const auto& in : inputs) h.collect(in.formula);
  h.index();
  if (h.atoms.size() > 24) throw std::runtime_error("problem too large for the oracle");
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << h.atoms.size()); ++m) {
    bool countermodel = true;
    for (const auto& in : inputs) {
      std::map<std::string, std::string> env;
      const bool v = h.eval(in.formula, env, m);
      if ((in.role == "conjecture") == v) {
        countermodel = false;
        break;
      }
    }
    if (countermodel) return false;
  }
  return true;
}

}  // namespace herbrand
