#include "ontoprobe/eval/campaign.hpp"

#include <sys/utsname.h>
#include <time.h>
#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <map>
#include <mutex>
#include <thread>
#include <json.hpp>

#include "ontoprobe/folify/tptp.hpp"
#include "ontoprobe/io.hpp"
#include "ontoprobe/mini/prover.hpp"

namespace ontoprobe::eval {

namespace {

using json = nlohmann::json;

std::uint64_t thread_cpu_ms() {
  timespec ts{};
  ::clock_gettime(CLOCK_THREAD_CPUTIME_ID, &ts);
  return static_cast<std::uint64_t>(ts.tv_sec) * 1000 + static_cast<std::uint64_t>(ts.tv_nsec) / 1'000'000;
}

std::string file_stem(std::string_view id) {
  std::string out;
  for (char c : id) {
    out += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' || c == '.') ? c : '_';
  }
  return out;
}

std::string utc_now() {
  std::time_t t = std::time(nullptr);
  std::tm tm{};
  ::gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

using Key = std::pair<std::string, std::string>;  // test id, formatted limit

Key key_of(const RunRecord& r) { return {r.test_id, prover::format_limit(r.limit_s)}; }

class Appender {
 public:
  explicit Appender(const std::filesystem::path& path) : out_(path, std::ios::app | std::ios::binary) {
    if (!out_) throw std::runtime_error("cannot append to " + path.string());
  }

  void write(const RunRecord& r) {
    const std::string line = to_json_line(r);
    std::lock_guard lock(mu_);
    out_ << line << '\n';
    out_.flush();
    if (!out_) throw std::runtime_error("write failed on record file");
  }

 private:
  std::mutex mu_;
  std::ofstream out_;
};

// Drops a trailing partial line left by an interrupted run.
std::vector<RunRecord> load_existing(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) return {};
  std::string text = io::read_file(path);
  if (!text.empty() && text.back() != '\n') {
    auto cut = text.rfind('\n');
    text.resize(cut == std::string::npos ? 0 : cut + 1);
    io::write_file(path, text);
  }
  return parse_records(text);
}

json prover_json(const ProverChoice& p) {
  if (const auto* b = std::get_if<BuiltinProver>(&p)) {
    return {{"kind", "builtin"},
            {"steps_per_second", b->steps_per_second},
            {"max_clauses", b->max_clauses},
            {"grace_s", b->grace_s}};
  }
  const auto& c = std::get<prover::ProverConfig>(p);
  return {{"kind", "external"}, {"executable", c.executable}, {"arguments", c.arguments},
          {"grace_s", c.grace_s}};
}

}  // namespace

const char* to_string(Outcome o) noexcept {
  switch (o) {
    case Outcome::Passing: return "Passing";
    case Outcome::NonPassing: return "NonPassing";
    case Outcome::Unknown: return "Unknown";
  }
  return "?";
}

Outcome classify_outcome(cq::TestKind kind, prover::VerdictKind verdict) noexcept {
  if (verdict != prover::VerdictKind::ProofFound) return Outcome::Unknown;
  return kind == cq::TestKind::TruthTest ? Outcome::Passing : Outcome::NonPassing;
}

bool RunRecord::has_flag(std::string_view f) const {
  return std::find(flags.begin(), flags.end(), f) != flags.end();
}

std::string to_json_line(const RunRecord& r) {
  json j = {{"test_id", r.test_id},
            {"kind", cq::to_string(r.kind)},
            {"limit_s", r.limit_s},
            {"verdict", prover::to_string(r.verdict)},
            {"outcome", to_string(r.outcome)},
            {"cpu_ms", r.cpu_ms},
            {"used_axioms", r.used_axioms},
            {"flags", r.flags}};
  return j.dump();
}

RunRecord parse_record(std::string_view line) {
  try {
    auto j = json::parse(line);
    RunRecord r;
    r.test_id = j.at("test_id").get<std::string>();
    const auto kind = j.at("kind").get<std::string>();
    if (kind != "truth" && kind != "falsity") throw std::invalid_argument("unknown kind " + kind);
    r.kind = kind == "truth" ? cq::TestKind::TruthTest : cq::TestKind::FalsityTest;
    r.limit_s = j.at("limit_s").get<double>();
    auto v = prover::parse_verdict_kind(j.at("verdict").get<std::string>());
    if (!v) throw std::invalid_argument("unknown verdict");
    r.verdict = *v;
    r.outcome = classify_outcome(r.kind, r.verdict);
    if (j.contains("outcome") && j["outcome"].get<std::string>() != to_string(r.outcome)) {
      throw std::invalid_argument("outcome does not match kind and verdict");
    }
    r.cpu_ms = j.value("cpu_ms", std::uint64_t{0});
    r.used_axioms = j.value("used_axioms", std::set<std::string>{});
    r.flags = j.value("flags", std::vector<std::string>{});
    return r;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("bad run record: ") + e.what());
  }
}

std::vector<RunRecord> parse_records(std::string_view jsonl) {
  std::vector<RunRecord> out;
  std::size_t lineno = 0;
  for (auto line : io::split_lines(jsonl)) {
    ++lineno;
    if (io::trim(line).empty()) continue;
    try {
      out.push_back(parse_record(line));
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

std::string CampaignConfig::validate() const {
  if (limits_s.empty()) return "no time limits";
  for (std::size_t i = 0; i < limits_s.size(); ++i) {
    if (!(limits_s[i] > 0) || !std::isfinite(limits_s[i])) return "time limits must be positive";
    if (i && limits_s[i] <= limits_s[i - 1]) return "time limits must be strictly increasing";
  }
  if (workers == 0) return "worker count must be positive";
  if (output_dir.empty()) return "no output directory";
  if (const auto* c = std::get_if<prover::ProverConfig>(&prover)) {
    if (!c->valid()) return "prover arguments need {problem} and {limit_s}";
  } else if (!(std::get<BuiltinProver>(prover).steps_per_second > 0)) {
    return "steps per second must be positive";
  }
  return {};
}

CampaignInput make_input(std::string axioms_tptp, std::vector<cq::TestCase> tests) {
  CampaignInput in;
  for (const auto& a : folify::parse_tptp(axioms_tptp)) {
    if (a.role == "conjecture" || a.role == "negated_conjecture") {
      throw std::invalid_argument("axiom file contains a conjecture (" + a.name + ")");
    }
    in.axiom_names.insert(a.name);
  }
  in.axioms_tptp = std::move(axioms_tptp);
  if (!in.axioms_tptp.empty() && in.axioms_tptp.back() != '\n') in.axioms_tptp += '\n';
  in.tests = std::move(tests);
  return in;
}

prover::Verdict run_builtin(std::string_view problem_text, const BuiltinProver& config,
                            double limit_s, const std::set<std::string>& axiom_names) {
  const std::uint64_t cpu0 = thread_cpu_ms();
  mini::SaturationBudget budget;
  budget.max_steps = static_cast<std::size_t>(std::max(1.0, std::ceil(limit_s * config.steps_per_second)));
  budget.max_clauses = config.max_clauses;
  budget.wall_limit_s = limit_s + config.grace_s;
  prover::Verdict v;
  try {
    mini::Problem p = mini::load_problem(problem_text);
    auto r = mini::saturate(std::move(p.axioms), std::move(p.negated_conjecture), p.signature, budget);
    v.trace.raw_output = mini::format_result(r, p.signature, "problem");
    switch (r.status) {
      case mini::SaturationStatus::ProofFound:
        v.kind = prover::VerdictKind::ProofFound;
        v.szs_status = "Theorem";
        for (const auto& name : r.used_axioms) {
          if (axiom_names.count(name)) v.trace.used_axioms.insert(name);
        }
        break;
      case mini::SaturationStatus::Saturated:
        v.kind = prover::VerdictKind::NoProofWithinLimit;
        v.szs_status = "CounterSatisfiable";
        v.flags.push_back("saturated");
        break;
      case mini::SaturationStatus::BudgetExhausted:
        v.kind = prover::VerdictKind::NoProofWithinLimit;
        v.szs_status = "Timeout";
        break;
    }
  } catch (const std::exception& e) {
    v.kind = prover::VerdictKind::ProverError;
    v.message = e.what();
    v.trace.raw_output = std::string("% builtin prover error: ") + e.what() + "\n";
  }
  v.trace.cpu_ms = thread_cpu_ms() - cpu0;
  return v;
}

std::string host_description() {
  utsname u{};
  std::string out;
  if (::uname(&u) == 0) out = std::string(u.nodename) + " " + u.sysname + " " + u.release + " " + u.machine;
  out += ", " + std::to_string(std::max(1u, std::thread::hardware_concurrency())) + " logical cores";
  return out;
}

std::vector<RunRecord> run_campaign(const CampaignInput& input, const CampaignConfig& config,
                                    CampaignSummary* summary,
                                    const std::function<void(const RunRecord&)>& progress) {
  if (auto err = config.validate(); !err.empty()) throw std::invalid_argument(err);
  if (input.tests.empty()) throw std::invalid_argument("empty test suite");

  const auto& dir = config.output_dir;
  std::error_code ec;
  std::filesystem::create_directories(dir / "problems", ec);
  if (config.keep_raw) std::filesystem::create_directories(dir / "raw", ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw std::runtime_error("cannot create output directory " + dir.string());
  }
  const auto records_path = dir / "records.jsonl";

  std::set<std::string> suite_ids;
  for (const auto& t : input.tests) suite_ids.insert(t.id);
  std::map<Key, RunRecord> prior;
  for (auto& r : load_existing(records_path)) {
    if (suite_ids.count(r.test_id)) prior.insert_or_assign(key_of(r), std::move(r));
  }

  json meta = {{"tool", "ontoprobe"},
               {"version", ONTOPROBE_VERSION},
               {"prover", prover_json(config.prover)},
               {"limits_s", config.limits_s},
               {"workers", config.workers},
               {"mode", config.reuse ? "reuse" : "independent"},
               {"host", host_description()},
               {"tests", input.tests.size()},
               {"axioms", input.axiom_names.size()},
               {"started", utc_now()}};
  io::write_file(dir / "metadata.json", meta.dump(2) + "\n");

  Appender appender(records_path);
  std::vector<std::vector<RunRecord>> per_test(input.tests.size());
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> executed{0}, resumed{0}, reused{0};
  std::mutex progress_mu;
  std::exception_ptr failure;
  std::mutex failure_mu;

  auto work = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= input.tests.size()) return;
      const cq::TestCase& test = input.tests[i];
      try {
        std::string problem;
        std::optional<RunRecord> proved;
        for (double limit : config.limits_s) {
          RunRecord rec;
          auto it = prior.find({test.id, prover::format_limit(limit)});
          if (it != prior.end()) {
            rec = it->second;
            ++resumed;
          } else if (config.reuse && proved) {
            rec = *proved;
            rec.limit_s = limit;
            if (!rec.has_flag("reused")) rec.flags.push_back("reused");
            ++reused;
          } else {
            if (problem.empty()) {
              problem = input.axioms_tptp + folify::conjecture_line(test.conjecture);
              io::write_file(dir / "problems" / (file_stem(test.id) + ".p"), problem);
            }
            prover::Verdict v;
            if (const auto* b = std::get_if<BuiltinProver>(&config.prover)) {
              v = run_builtin(problem, *b, limit, input.axiom_names);
            } else {
              v = prover::run_external(dir / "problems" / (file_stem(test.id) + ".p"),
                                       std::get<prover::ProverConfig>(config.prover), limit,
                                       input.axiom_names);
            }
            rec.test_id = test.id;
            rec.kind = test.kind;
            rec.limit_s = limit;
            rec.verdict = v.kind;
            rec.outcome = classify_outcome(test.kind, v.kind);
            rec.used_axioms = v.trace.used_axioms;
            rec.cpu_ms = v.trace.cpu_ms;
            rec.flags = v.flags;
            if (v.kind == prover::VerdictKind::ProverError) rec.flags.insert(rec.flags.begin(), "error");
            if (config.keep_raw) {
              std::string raw = v.trace.raw_output;
              if (!v.message.empty()) raw += "\n% ontoprobe: " + v.message + "\n";
              io::write_file(dir / "raw" / (file_stem(test.id) + "@" + prover::format_limit(limit) + ".out"),
                             raw);
            }
            appender.write(rec);
            ++executed;
          }
          if (progress) {
            std::lock_guard lock(progress_mu);
            progress(rec);
          }
          per_test[i].push_back(std::move(rec));
          if (!proved && per_test[i].back().verdict == prover::VerdictKind::ProofFound) {
            proved = per_test[i].back();
          }
        }
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next = input.tests.size();
        return;
      }
    }
  };

  {
    std::vector<std::jthread> pool;
    const std::size_t n = std::min(config.workers, input.tests.size());
    for (std::size_t w = 1; w < n; ++w) pool.emplace_back(work);
    work();
  }
  if (failure) std::rethrow_exception(failure);

  meta["finished"] = utc_now();
  meta["executed"] = executed.load();
  io::write_file(dir / "metadata.json", meta.dump(2) + "\n");

  if (summary) *summary = {executed.load(), resumed.load(), reused.load()};
  std::vector<RunRecord> out;
  for (auto& v : per_test) {
    for (auto& r : v) out.push_back(std::move(r));
  }
  return out;
}

}  // namespace ontoprobe::eval
