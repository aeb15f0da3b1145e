#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ontoprobe/kif/parser.hpp"
#include "ontoprobe/mini/prover.hpp"

namespace testing_support {

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Named SUO-KIF axioms plus a conjecture, straight into the mini prover.
inline ontoprobe::mini::SaturationResult prove(
    const std::vector<std::pair<std::string, std::string>>& axioms, const std::string& conjecture,
    std::size_t max_steps = 10'000) {
  using namespace ontoprobe;
  mini::Signature sig;
  std::vector<mini::Clause> ax;
  for (const auto& [name, text] : axioms) {
    auto cs = mini::clausify(kif::parse_formula(text), sig, name);
    ax.insert(ax.end(), cs.begin(), cs.end());
  }
  auto neg = mini::clausify(kif::Formula::negation(kif::parse_formula(conjecture)), sig, "goal", true);
  mini::SaturationBudget budget;
  budget.max_steps = max_steps;
  return mini::saturate(std::move(ax), std::move(neg), sig, budget);
}

}  // namespace testing_support
