#include "ontoprobe/folify/translate.hpp"

#include <set>

#include "ontoprobe/kif/analysis.hpp"

namespace ontoprobe::folify {

using kif::Formula;

namespace {

const char* name_prefix(Layer layer) {
  switch (layer) {
    case Layer::MetaKnowledge: return "meta_in_";
    case Layer::TopLevel: return "top_";
    case Layer::MidLevel: return "mid_";
    case Layer::FoTransformation: return "fo_in_";
  }
  return "ax_";
}

std::vector<std::string> declared_functions(const std::vector<SourceStatement>& statements) {
  std::vector<std::string> out;
  for (const auto& s : statements) {
    const Formula& f = s.statement.formula;
    if (f.kind() != Formula::Kind::Atom || !f.predicate().is_constant() ||
        f.predicate().name() != "instance" || f.args().size() != 2) {
      continue;
    }
    const auto& cls = f.args()[1];
    if (!f.args()[0].is_constant() || !cls.is_constant()) continue;
    const std::string& c = cls.name();
    if (c.size() >= 8 && c.compare(c.size() - 8, 8, "Function") == 0) {
      out.push_back(f.args()[0].name());
    }
  }
  return out;
}

}  // namespace

Translation translate_ontology(const std::vector<SourceStatement>& statements,
                               const TranslateOptions& options) {
  Translation out;
  for (Axiom& a : meta_axioms(options.max_row_arity)) out.axioms.add(std::move(a));

  auto drop = [&](const SourceStatement& s, std::string reason) {
    out.dropped.push_back(DroppedStatement{s.origin, s.statement.location,
                                           kif::render(s.statement.formula), std::move(reason)});
  };

  std::set<std::size_t> conflicting;
  SignatureMap& signatures = out.axioms.signatures();
  for (std::size_t i = 0; i < statements.size(); ++i) {
    if (!statements[i].statement.logical) continue;
    try {
      add_signature_declaration(signatures, statements[i].statement.formula);
    } catch (const ConflictingDomain& e) {
      conflicting.insert(i);
    }
  }
  const std::vector<std::string> functions = declared_functions(statements);

  std::vector<Formula> translated;
  std::array<std::size_t, 4> ordinal{};
  for (std::size_t i = 0; i < statements.size(); ++i) {
    const SourceStatement& s = statements[i];
    if (!s.statement.logical) {
      ++out.non_logical;
      continue;
    }
    if (conflicting.count(i)) {
      drop(s, "conflicting domain declaration");
      continue;
    }
    const Formula& f = s.statement.formula;
    if (auto reason = untranslatable_reason(f, functions); !reason.empty()) {
      drop(s, std::move(reason));
      continue;
    }
    std::vector<Formula> expanded;
    try {
      expanded = expand_rows(f, options.max_row_arity);
    } catch (const RowVariableNotTrailing& e) {
      drop(s, e.what());
      continue;
    }

    const std::size_t n = ++ordinal[static_cast<std::size_t>(s.layer)];
    const std::string base = name_prefix(s.layer) + std::to_string(n);
    for (std::size_t k = 0; k < expanded.size(); ++k) {
      Formula g = guard_types(reify_variable_predicates(expanded[k]), signatures);
      std::string name = expanded.size() == 1 ? base : base + "_r" + std::to_string(k + 1);
      kif::FormulaKind kind = kif::classify_formula(g);
      translated.push_back(g);
      out.axioms.add(Axiom{std::move(name), std::move(g), s.layer, kind});
    }
  }

  std::size_t bridge = 0;
  for (Formula& b : bridging_axioms(translated)) {
    out.axioms.add(Axiom{"fo_bridge_" + std::to_string(++bridge), b, Layer::FoTransformation,
                         kif::classify_formula(b)});
  }
  return out;
}

std::array<LayerCounts, 4> census(const std::vector<SourceStatement>& statements) {
  std::array<LayerCounts, 4> out{};
  for (const auto& s : statements) {
    if (!s.statement.logical) continue;
    auto& c = out[static_cast<std::size_t>(s.layer)];
    (kif::classify_formula(s.statement.formula) == kif::FormulaKind::UnitClause ? c.unit
                                                                                 : c.general) += 1;
  }
  return out;
}

}  // namespace ontoprobe::folify
