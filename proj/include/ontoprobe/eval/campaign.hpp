#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ontoprobe/cq/generate.hpp"
#include "ontoprobe/prover/bridge.hpp"

namespace ontoprobe::eval {

enum class Outcome { Passing, NonPassing, Unknown };

const char* to_string(Outcome o) noexcept;

Outcome classify_outcome(cq::TestKind kind, prover::VerdictKind verdict) noexcept;

struct RunRecord {
  std::string test_id;
  cq::TestKind kind = cq::TestKind::TruthTest;
  double limit_s = 0;
  prover::VerdictKind verdict = prover::VerdictKind::ProverError;
  Outcome outcome = Outcome::Unknown;
  std::set<std::string> used_axioms;
  std::uint64_t cpu_ms = 0;
  std::vector<std::string> flags;  // error, countermodel, saturated, killed, reused, ...

  bool has_flag(std::string_view f) const;
};

// One JSON object per line; see the README for the field list.
std::string to_json_line(const RunRecord& r);
RunRecord parse_record(std::string_view line);
std::vector<RunRecord> parse_records(std::string_view jsonl);

// The builtin prover turns a time limit into a deterministic step budget;
// the wall-clock limit (limit + grace) only guards against runaway runs.
struct BuiltinProver {
  double steps_per_second = 1000;
  std::size_t max_clauses = 200'000;
  double grace_s = prover::kDefaultGraceSeconds;
};

using ProverChoice = std::variant<BuiltinProver, prover::ProverConfig>;

struct CampaignConfig {
  std::vector<double> limits_s = {60, 120, 300, 600};
  ProverChoice prover = BuiltinProver{};
  std::size_t workers = 1;
  bool reuse = false;           // propagate proofs to larger limits instead of re-running
  bool keep_raw = true;         // persist prover output per run
  std::filesystem::path output_dir;

  // Empty when valid, else the first problem found.
  std::string validate() const;
};

struct CampaignInput {
  std::string axioms_tptp;          // fof axiom lines, no conjecture
  std::set<std::string> axiom_names;
  std::vector<cq::TestCase> tests;
};

CampaignInput make_input(std::string axioms_tptp, std::vector<cq::TestCase> tests);

// One verdict for a complete problem text; used by the campaign workers.
prover::Verdict run_builtin(std::string_view problem_text, const BuiltinProver& config,
                            double limit_s, const std::set<std::string>& axiom_names);

struct CampaignSummary {
  std::size_t executed = 0;
  std::size_t resumed = 0;
  std::size_t reused = 0;
};

// Writes <output_dir>/records.jsonl (appending; completed (test, limit) keys
// are skipped), problems/ and raw/ . Returns every record for the suite,
// ordered by test then limit. Throws std::runtime_error if the output
// directory is unusable.
std::vector<RunRecord> run_campaign(const CampaignInput& input, const CampaignConfig& config,
                                    CampaignSummary* summary = nullptr,
                                    const std::function<void(const RunRecord&)>& progress = {});

std::string host_description();

}  // namespace ontoprobe::eval
