#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "ontoprobe/folify/axiom.hpp"
#include "ontoprobe/folify/transform.hpp"
#include "ontoprobe/kif/parser.hpp"

namespace ontoprobe::folify {

struct SourceStatement {
  kif::Statement statement;
  Layer layer = Layer::TopLevel;
  std::string origin;  // file name, for reporting
};

struct DroppedStatement {
  std::string origin;
  kif::SourceLocation location;
  std::string text;
  std::string reason;
};

struct Translation {
  AxiomSet axioms;
  std::vector<DroppedStatement> dropped;
  std::size_t non_logical = 0;
};

struct TranslateOptions {
  std::size_t max_row_arity = kDefaultMaxRowArity;
};

// signatures -> non-logical filter -> translatability check -> row expansion
// -> reification -> type guards -> naming. Meta axioms come first, bridging
// axioms last.
Translation translate_ontology(const std::vector<SourceStatement>& statements,
                               const TranslateOptions& options = {});

// Unit/general census of logical input statements per layer, without any
// transformation.
std::array<LayerCounts, 4> census(const std::vector<SourceStatement>& statements);

}  // namespace ontoprobe::folify
