#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "ontoprobe/kif/formula.hpp"

namespace ontoprobe::folify {

enum class Layer : std::uint8_t { MetaKnowledge, TopLevel, MidLevel, FoTransformation };

inline constexpr std::array<Layer, 4> kAllLayers = {Layer::MetaKnowledge, Layer::TopLevel,
                                                    Layer::MidLevel, Layer::FoTransformation};

const char* to_string(Layer layer) noexcept;
// Accepts the enum spelling and the short manifest forms meta/top/mid/fo.
std::optional<Layer> parse_layer(std::string_view text) noexcept;

struct Axiom {
  std::string name;
  kif::Formula formula;
  Layer layer;
  kif::FormulaKind kind;
};

enum class ArgMode : std::uint8_t { Instance, Subclass };

struct ArgDomain {
  std::size_t position;  // 1-based
  std::string concept_name;
  ArgMode mode;

  friend bool operator==(const ArgDomain&, const ArgDomain&) = default;
};

struct RelationSignature {
  std::string relation;
  std::vector<ArgDomain> arg_domains;  // sorted by position
  bool variable_arity = false;
  std::size_t min_arity = 0;

  const ArgDomain* domain_at(std::size_t position) const noexcept;
};

using SignatureMap = std::map<std::string, RelationSignature>;

struct LayerCounts {
  std::size_t unit = 0;
  std::size_t general = 0;

  std::size_t total() const noexcept { return unit + general; }
  friend bool operator==(const LayerCounts&, const LayerCounts&) = default;
};

class AxiomSet {
 public:
  AxiomSet() = default;

  // Throws std::invalid_argument on a duplicate name.
  void add(Axiom axiom);

  const std::vector<Axiom>& axioms() const noexcept { return axioms_; }
  std::size_t size() const noexcept { return axioms_.size(); }
  const Axiom* find(std::string_view name) const;

  SignatureMap& signatures() noexcept { return signatures_; }
  const SignatureMap& signatures() const noexcept { return signatures_; }

  LayerCounts counts(Layer layer) const;
  LayerCounts totals() const;

 private:
  std::vector<Axiom> axioms_;
  std::unordered_map<std::string, std::size_t> index_;
  SignatureMap signatures_;
};

}  // namespace ontoprobe::folify
