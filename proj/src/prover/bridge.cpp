#include "ontoprobe/prover/bridge.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/resource.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <chrono>
#include <cstring>
#include <regex>
#include <sstream>

#include "ontoprobe/folify/tptp.hpp"
#include "ontoprobe/io.hpp"

namespace ontoprobe::prover {

namespace {

const std::set<std::string_view> kProved = {"Theorem", "Unsatisfiable", "ContradictoryAxioms"};
const std::set<std::string_view> kNoProof = {"Timeout", "GaveUp", "ResourceOut", "MemoryOut",
                                             "Unknown", "Incomplete", "Interrupted"};
const std::set<std::string_view> kCountermodel = {"CounterSatisfiable", "Satisfiable"};

std::string_view derivation_block(std::string_view output) {
  auto start = output.find("SZS output start");
  if (start == std::string_view::npos) return {};
  auto body = output.find('\n', start);
  if (body == std::string_view::npos) return {};
  auto end = output.find("SZS output end", body);
  return output.substr(body + 1, end == std::string_view::npos ? std::string_view::npos : end - body - 1);
}

void close_fd(int& fd) {
  if (fd >= 0) ::close(fd);
  fd = -1;
}

}  // namespace

bool ProverConfig::valid() const {
  return !executable.empty() && arguments.find("{problem}") != std::string::npos &&
         arguments.find("{limit_s}") != std::string::npos && grace_s >= 0;
}

const char* to_string(VerdictKind k) noexcept {
  switch (k) {
    case VerdictKind::ProofFound: return "ProofFound";
    case VerdictKind::NoProofWithinLimit: return "NoProofWithinLimit";
    case VerdictKind::ProverError: return "ProverError";
  }
  return "?";
}

std::optional<VerdictKind> parse_verdict_kind(std::string_view s) noexcept {
  for (auto k : {VerdictKind::ProofFound, VerdictKind::NoProofWithinLimit, VerdictKind::ProverError}) {
    if (s == to_string(k)) return k;
  }
  return std::nullopt;
}

bool Verdict::has_flag(std::string_view f) const {
  return std::find(flags.begin(), flags.end(), f) != flags.end();
}

std::string build_problem(const folify::AxiomSet& axioms, const kif::Formula& conjecture) {
  return folify::emit_tptp(axioms, conjecture);
}

std::optional<std::string> szs_status(std::string_view output) {
  static const std::regex re(R"(SZS status\s+([A-Za-z]+))");
  std::optional<std::string> last;
  for (auto line : io::split_lines(output)) {
    std::match_results<std::string_view::const_iterator> m;
    if (std::regex_search(line.begin(), line.end(), m, re)) last = m[1].str();
  }
  return last;
}

std::set<std::string> extract_used_axioms(std::string_view output,
                                          const std::set<std::string>& axiom_names) {
  std::string_view block = derivation_block(output);
  if (block.empty()) block = output;
  static const std::regex file_re(R"(file\(\s*(?:'[^']*'|[A-Za-z0-9_./-]+)\s*,\s*([A-Za-z0-9_]+)\s*\))");
  static const std::regex input_re(R"(\[input(?:\([a-z_]+\))?\s+([A-Za-z0-9_]+)\s*\])");
  std::set<std::string> out;
  bool derivation = false;
  for (auto line : io::split_lines(block)) {
    const std::string s(line);
    if (s.find("fof(") != std::string::npos || s.find("cnf(") != std::string::npos ||
        s.find("[input") != std::string::npos || s.find("[resolution") != std::string::npos) {
      derivation = true;
    }
    for (const auto* re : {&file_re, &input_re}) {
      for (std::sregex_iterator it(s.begin(), s.end(), *re), end; it != end; ++it) {
        std::string name = (*it)[1].str();
        if (name != folify::kConjectureName && axiom_names.count(name)) out.insert(std::move(name));
      }
    }
  }
  if (!derivation) throw NoDerivationFound();
  return out;
}

Verdict interpret_output(std::string output, std::optional<int> exit_code, bool killed,
                         std::uint64_t cpu_ms, const std::set<std::string>& axiom_names) {
  Verdict v;
  v.trace.cpu_ms = cpu_ms;
  if (auto s = szs_status(output)) v.szs_status = *s;
  if (killed) v.flags.push_back("killed");

  if (v.szs_status.empty()) {
    if (killed) {
      v.kind = VerdictKind::NoProofWithinLimit;
    } else {
      v.kind = VerdictKind::ProverError;
      v.message = exit_code ? "no SZS status line (exit " + std::to_string(*exit_code) + ")"
                            : "no SZS status line (terminated by signal)";
    }
  } else if (kProved.count(v.szs_status)) {
    v.kind = VerdictKind::ProofFound;
    try {
      v.trace.used_axioms = extract_used_axioms(output, axiom_names);
    } catch (const NoDerivationFound&) {
      v.trace.complete = false;
      v.flags.push_back("incomplete_trace");
    }
  } else if (kNoProof.count(v.szs_status)) {
    v.kind = VerdictKind::NoProofWithinLimit;
  } else if (kCountermodel.count(v.szs_status)) {
    v.kind = VerdictKind::NoProofWithinLimit;
    v.flags.push_back("countermodel");
  } else {
    v.kind = VerdictKind::ProverError;
    v.message = "SZS status " + v.szs_status;
  }
  v.trace.raw_output = std::move(output);
  return v;
}

ProcessResult run_process(const std::vector<std::string>& argv, double kill_after_s) {
  if (argv.empty()) throw std::runtime_error("empty command line");
  std::vector<char*> cargv;
  for (const auto& a : argv) cargv.push_back(const_cast<char*>(a.c_str()));
  cargv.push_back(nullptr);

  int out_pipe[2];
  int err_pipe[2];
  if (::pipe2(out_pipe, O_CLOEXEC) != 0) throw std::runtime_error("pipe: " + std::string(std::strerror(errno)));
  if (::pipe2(err_pipe, O_CLOEXEC) != 0) {
    ::close(out_pipe[0]);
    ::close(out_pipe[1]);
    throw std::runtime_error("pipe: " + std::string(std::strerror(errno)));
  }

  const auto started = std::chrono::steady_clock::now();
  const pid_t pid = ::fork();
  if (pid < 0) {
    for (int fd : {out_pipe[0], out_pipe[1], err_pipe[0], err_pipe[1]}) ::close(fd);
    throw std::runtime_error("fork: " + std::string(std::strerror(errno)));
  }
  if (pid == 0) {
    ::setpgid(0, 0);
    int devnull = ::open("/dev/null", O_RDONLY);
    if (devnull >= 0) ::dup2(devnull, STDIN_FILENO);
    ::dup2(out_pipe[1], STDOUT_FILENO);
    ::dup2(out_pipe[1], STDERR_FILENO);
    ::execvp(cargv[0], cargv.data());
    int e = errno;
    (void)!::write(err_pipe[1], &e, sizeof e);
    ::_exit(127);
  }
  ::setpgid(pid, pid);
  ::close(out_pipe[1]);
  ::close(err_pipe[1]);

  int exec_errno = 0;
  if (::read(err_pipe[0], &exec_errno, sizeof exec_errno) == static_cast<ssize_t>(sizeof exec_errno)) {
    ::close(err_pipe[0]);
    ::close(out_pipe[0]);
    ::waitpid(pid, nullptr, 0);
    throw std::runtime_error("cannot execute " + argv[0] + ": " + std::strerror(exec_errno));
  }
  ::close(err_pipe[0]);

  ProcessResult r;
  const auto deadline = started + std::chrono::duration<double>(kill_after_s);
  int fd = out_pipe[0];
  char buf[65536];
  while (fd >= 0) {
    auto now = std::chrono::steady_clock::now();
    if (!r.killed && now >= deadline) {
      ::kill(-pid, SIGKILL);
      r.killed = true;
    }
    int wait_ms = r.killed ? 1000
                           : static_cast<int>(std::chrono::duration_cast<std::chrono::milliseconds>(
                                                  deadline - now).count()) + 1;
    pollfd p{fd, POLLIN, 0};
    int n = ::poll(&p, 1, wait_ms);
    if (n < 0 && errno == EINTR) continue;
    if (n == 0) {
      if (r.killed) break;  // a grandchild may still hold the pipe
      continue;
    }
    ssize_t got = ::read(fd, buf, sizeof buf);
    if (got > 0) {
      r.output.append(buf, static_cast<std::size_t>(got));
    } else if (got == 0 || errno != EINTR) {
      close_fd(fd);
    }
  }
  close_fd(fd);

  int status = 0;
  rusage usage{};
  while (::wait4(pid, &status, 0, &usage) < 0 && errno == EINTR) {
  }
  r.wall_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  r.cpu_ms = static_cast<std::uint64_t>(usage.ru_utime.tv_sec + usage.ru_stime.tv_sec) * 1000 +
             static_cast<std::uint64_t>(usage.ru_utime.tv_usec + usage.ru_stime.tv_usec) / 1000;
  if (WIFEXITED(status)) r.exit_code = WEXITSTATUS(status);
  if (WIFSIGNALED(status)) r.signal = WTERMSIG(status);
  return r;
}

std::string format_limit(double limit_s) {
  std::ostringstream ss;
  ss << limit_s;
  return ss.str();
}

std::vector<std::string> expand_arguments(const ProverConfig& config,
                                          const std::filesystem::path& problem, double limit_s) {
  std::vector<std::string> out{config.executable};
  std::istringstream in(config.arguments);
  std::string word;
  while (in >> word) {
    for (auto [key, value] : {std::pair<std::string, std::string>{"{problem}", problem.string()},
                              {"{limit_s}", format_limit(limit_s)}}) {
      for (auto pos = word.find(key); pos != std::string::npos; pos = word.find(key, pos + value.size())) {
        word.replace(pos, key.size(), value);
      }
    }
    out.push_back(word);
  }
  return out;
}

Verdict run_external(const std::filesystem::path& problem, const ProverConfig& config,
                     double limit_s, const std::set<std::string>& axiom_names) {
  if (!config.valid()) {
    Verdict v;
    v.message = "invalid prover configuration";
    return v;
  }
  ProcessResult r;
  try {
    r = run_process(expand_arguments(config, problem, limit_s), limit_s + config.grace_s);
  } catch (const std::exception& e) {
    Verdict v;
    v.message = e.what();
    return v;
  }
  return interpret_output(std::move(r.output), r.exit_code, r.killed, r.cpu_ms, axiom_names);
}

}  // namespace ontoprobe::prover
