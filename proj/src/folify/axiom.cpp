#include "ontoprobe/folify/axiom.hpp"

#include <stdexcept>

namespace ontoprobe::folify {

const char* to_string(Layer layer) noexcept {
  switch (layer) {
    case Layer::MetaKnowledge: return "MetaKnowledge";
    case Layer::TopLevel: return "TopLevel";
    case Layer::MidLevel: return "MidLevel";
    case Layer::FoTransformation: return "FoTransformation";
  }
  return "?";
}

std::optional<Layer> parse_layer(std::string_view text) noexcept {
  if (text == "MetaKnowledge" || text == "meta") return Layer::MetaKnowledge;
  if (text == "TopLevel" || text == "top") return Layer::TopLevel;
  if (text == "MidLevel" || text == "mid") return Layer::MidLevel;
  if (text == "FoTransformation" || text == "fo") return Layer::FoTransformation;
  return std::nullopt;
}

const ArgDomain* RelationSignature::domain_at(std::size_t position) const noexcept {
  for (const auto& d : arg_domains) {
    if (d.position == position) return &d;
  }
  return nullptr;
}

void AxiomSet::add(Axiom axiom) {
  auto [it, inserted] = index_.emplace(axiom.name, axioms_.size());
  if (!inserted) throw std::invalid_argument("duplicate axiom name " + axiom.name);
  axioms_.push_back(std::move(axiom));
}

const Axiom* AxiomSet::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  return it == index_.end() ? nullptr : &axioms_[it->second];
}

LayerCounts AxiomSet::counts(Layer layer) const {
  LayerCounts c;
  for (const auto& a : axioms_) {
    if (a.layer != layer) continue;
    (a.kind == kif::FormulaKind::UnitClause ? c.unit : c.general) += 1;
  }
  return c;
}

LayerCounts AxiomSet::totals() const {
  LayerCounts c;
  for (Layer l : kAllLayers) {
    auto lc = counts(l);
    c.unit += lc.unit;
    c.general += lc.general;
  }
  return c;
}

}  // namespace ontoprobe::folify
