#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ontoprobe/eval/campaign.hpp"
#include "ontoprobe/folify/axiom.hpp"

namespace ontoprobe::analytics {

class UnknownAxiomName : public std::runtime_error {
 public:
  explicit UnknownAxiomName(std::string name)
      : std::runtime_error("axiom '" + name + "' is not in the axiom metadata"), name_(std::move(name)) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

enum class Group { All, Truth, Falsity };
inline constexpr std::array<Group, 3> kGroups = {Group::All, Group::Truth, Group::Falsity};
const char* to_string(Group g) noexcept;

struct AxiomInfo {
  folify::Layer layer;
  kif::FormulaKind kind;
};

// name -> (layer, kind), in axiom-file order.
struct AxiomMetadata {
  std::vector<std::string> order;
  std::map<std::string, AxiomInfo> info;

  void add(const std::string& name, AxiomInfo i);
  std::size_t size() const noexcept { return order.size(); }
};

AxiomMetadata metadata_from(const folify::AxiomSet& axioms);
std::string metadata_to_json(const AxiomMetadata& m);
AxiomMetadata parse_metadata(std::string_view json_text);

// round(100 * num / den), ties away from zero; 0 when den == 0.
std::int64_t percent(std::int64_t num, std::int64_t den);

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  double value() const noexcept { return den ? static_cast<double>(num) / static_cast<double>(den) : 0.0; }
  // Two decimals, half away from zero, computed on integers.
  std::string fixed2() const;
  friend bool operator==(const Rational& a, const Rational& b) { return a.num * b.den == b.num * a.den; }
};

// Top/Mid x UC/GC.
enum class Cell { TopUnit, TopGeneral, MidUnit, MidGeneral };
inline constexpr std::array<Cell, 4> kCells = {Cell::TopUnit, Cell::TopGeneral, Cell::MidUnit,
                                               Cell::MidGeneral};

struct GroupStats {
  std::size_t solved = 0;
  std::size_t distinct = 0;
  std::size_t axiom_sum = 0;  // sum over proofs of |used_axioms|
  Rational average;           // axiom_sum / solved, 0 for no proofs
  std::array<std::size_t, 4> cells{};
};

struct LimitStats {
  double limit_s = 0;
  std::array<GroupStats, 3> groups;

  const GroupStats& at(Group g) const { return groups[static_cast<std::size_t>(g)]; }
};

struct AxiomUsage {
  std::string name;
  folify::Layer layer;
  kif::FormulaKind kind;
  std::size_t proofs_total = 0;
  std::size_t proofs_truth = 0;
  std::size_t proofs_falsity = 0;
};

struct Percentage {
  std::string label;
  std::int64_t num;
  std::int64_t den;
  std::int64_t value;
};

struct EvaluationReport {
  std::vector<LimitStats> limits;
  std::array<std::size_t, 3> tests{};   // per group
  std::size_t axiom_total = 0;
  std::array<std::size_t, 4> cell_totals{};  // axioms per Top/Mid x UC/GC cell
  std::size_t unit_total = 0;
  std::size_t general_total = 0;
  double usage_limit_s = 0;              // usage table is taken at the largest limit
  std::vector<AxiomUsage> usage;         // used axioms only, by name
  std::size_t useful_threshold = 10;
  std::vector<Percentage> percentages;
};

struct ReportSeries {
  std::string metric;
  Group group;
  std::vector<std::pair<double, double>> points;
};

// limits may be empty, in which case the limits found in the records are used.
EvaluationReport aggregate_report(const std::vector<eval::RunRecord>& records,
                                  const AxiomMetadata& metadata, std::vector<double> limits = {},
                                  std::size_t useful_threshold = 10);

ReportSeries series(const EvaluationReport& r, std::string_view metric, Group g);

// Descending by count, then by name.
std::vector<AxiomUsage> usefulness_histogram(const std::vector<AxiomUsage>& usage,
                                             std::size_t threshold, bool truth_only = false);

std::string report_to_json(const EvaluationReport& r);
EvaluationReport report_from_json(std::string_view text);

// Writes report.json, fig1.csv .. fig4.csv, usage.csv and plot.tsv.
std::vector<std::filesystem::path> emit_outputs(const EvaluationReport& r,
                                                const std::filesystem::path& dir);

std::string fig_csv(const EvaluationReport& r, int figure);
std::string usage_csv(const EvaluationReport& r);
std::string plot_tsv(const EvaluationReport& r);

// Plain-text rendering for terminals.
std::string render_text(const EvaluationReport& r);

}  // namespace ontoprobe::analytics
