#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ontoprobe/folify/axiom.hpp"
#include "ontoprobe/kif/formula.hpp"

namespace ontoprobe::prover {

inline constexpr double kDefaultGraceSeconds = 5.0;

// Whitespace-separated argument template; {problem} and {limit_s} are
// substituted per run.
struct ProverConfig {
  std::string executable;
  std::string arguments = "--mode casc -t {limit_s} --proof tptp --output_axiom_names on {problem}";
  double grace_s = kDefaultGraceSeconds;

  bool valid() const;
};

enum class VerdictKind { ProofFound, NoProofWithinLimit, ProverError };

const char* to_string(VerdictKind k) noexcept;
std::optional<VerdictKind> parse_verdict_kind(std::string_view s) noexcept;

struct ProofTrace {
  std::set<std::string> used_axioms;  // conjecture excluded
  std::string raw_output;
  std::uint64_t cpu_ms = 0;
  bool complete = true;
};

struct Verdict {
  VerdictKind kind = VerdictKind::ProverError;
  std::string szs_status;  // empty if none was printed
  std::string message;     // ProverError detail
  std::vector<std::string> flags;
  ProofTrace trace;

  bool has_flag(std::string_view f) const;
};

class NoDerivationFound : public std::runtime_error {
 public:
  NoDerivationFound() : std::runtime_error("no parseable derivation in prover output") {}
};

// Axioms plus the test conjecture, as one self-contained problem.
std::string build_problem(const folify::AxiomSet& axioms, const kif::Formula& conjecture);

// The last "SZS status <Word>" in the output.
std::optional<std::string> szs_status(std::string_view output);

// Names of submitted axioms cited in the derivation, taken from
// file(..., name) annotations (TPTP/E style) and [input name] tags (Vampire
// native style). Only the SZS output block is searched when one is present.
std::set<std::string> extract_used_axioms(std::string_view output,
                                          const std::set<std::string>& axiom_names);

// Pure verdict mapping; `killed` marks a run stopped by the watchdog.
Verdict interpret_output(std::string output, std::optional<int> exit_code, bool killed,
                         std::uint64_t cpu_ms, const std::set<std::string>& axiom_names);

struct ProcessResult {
  std::string output;  // stdout and stderr interleaved
  std::optional<int> exit_code;
  int signal = 0;
  bool killed = false;
  std::uint64_t cpu_ms = 0;
  double wall_s = 0;
};

// Runs argv[0] with the given arguments in its own process group and kills
// the group after kill_after_s. Throws std::runtime_error if it cannot be
// started.
ProcessResult run_process(const std::vector<std::string>& argv, double kill_after_s);

std::vector<std::string> expand_arguments(const ProverConfig& config,
                                          const std::filesystem::path& problem, double limit_s);

std::string format_limit(double limit_s);

Verdict run_external(const std::filesystem::path& problem, const ProverConfig& config,
                     double limit_s, const std::set<std::string>& axiom_names);

}  // namespace ontoprobe::prover
