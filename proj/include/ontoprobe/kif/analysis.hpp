#pragma once

#include <set>
#include <string>
#include <vector>

#include "ontoprobe/kif/formula.hpp"

namespace ontoprobe::kif {

// Canonical SUO-KIF text, one line, single spaces.
std::string render(const Term& t);
std::string render(const Formula& f);

struct VariableSets {
  std::set<std::string> free;
  std::set<std::string> row;
};

VariableSets collect_variables(const Formula& f);

// Free ordinary variables in order of first occurrence.
std::vector<std::string> free_variables_ordered(const Formula& f);

FormulaKind classify_formula(const Formula& f);

bool is_closed(const Formula& f);
bool has_row_variables(const Formula& f);

}  // namespace ontoprobe::kif
