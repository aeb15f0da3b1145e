#include "ontoprobe/folify/tptp.hpp"
#include "ontoprobe/mini/prover.hpp"

namespace ontoprobe::mini {

Problem load_problem(std::string_view tptp_text) {
  Problem p;
  for (const auto& input : folify::parse_tptp(tptp_text)) {
    if (input.role == "conjecture") {
      auto cs = clausify(kif::Formula::negation(input.formula), p.signature, input.name, true);
      p.negated_conjecture.insert(p.negated_conjecture.end(), cs.begin(), cs.end());
    } else if (input.role == "negated_conjecture") {
      auto cs = clausify(input.formula, p.signature, input.name, true);
      p.negated_conjecture.insert(p.negated_conjecture.end(), cs.begin(), cs.end());
    } else {
      auto cs = clausify(input.formula, p.signature, input.name, false);
      p.axioms.insert(p.axioms.end(), cs.begin(), cs.end());
      p.axiom_names.push_back(input.name);
    }
  }
  return p;
}

std::string format_result(const SaturationResult& r, const Signature& sig,
                          std::string_view problem_name) {
  const std::string problem(problem_name);
  std::string out;
  switch (r.status) {
    case SaturationStatus::ProofFound: out += "% SZS status Theorem for " + problem + "\n"; break;
    case SaturationStatus::Saturated:
      out += "% SZS status CounterSatisfiable for " + problem + "\n";
      return out;
    case SaturationStatus::BudgetExhausted:
      out += "% SZS status Timeout for " + problem + "\n";
      return out;
  }
  out += "% SZS output start CNFRefutation for " + problem + "\n";
  for (const Clause& c : r.derivation) {
    out += "cnf(c" + std::to_string(c.id) + ", ";
    if (c.parents.empty()) {
      if (c.source.empty()) {
        out += "axiom, " + to_string(c, sig) + ", theory(equality)).\n";
      } else {
        out += std::string(c.conjecture ? "negated_conjecture" : "axiom") + ", " +
               to_string(c, sig) + ", file('" + problem + "', " + c.source + ")).\n";
      }
      continue;
    }
    out += "plain, " + to_string(c, sig) + ", inference(" + c.rule + ", [status(thm)], [";
    for (std::size_t i = 0; i < c.parents.size(); ++i) {
      if (i) out += ',';
      out += "c" + std::to_string(c.parents[i]);
    }
    out += "])).\n";
  }
  out += "% SZS output end CNFRefutation for " + problem + "\n";
  return out;
}

}  // namespace ontoprobe::mini
