#pragma once

// Synthetic full-scale campaign: 3556 truth and 3556 falsity tests, 7420
// axioms split by layer and kind, fixed per-limit proof counts. At the
// largest limit the proofs are laid out so distinct/average/usefulness
// statistics land on known reference values.

#include <array>
#include <cstdio>
#include <string>
#include <vector>

#include "ontoprobe/analytics/report.hpp"

namespace reference_fixture {

using namespace ontoprobe;

inline constexpr std::array<double, 4> kLimits = {60, 120, 300, 600};
inline constexpr std::array<std::size_t, 4> kTruthSolved = {478, 482, 484, 894};
inline constexpr std::array<std::size_t, 4> kFalsitySolved = {482, 482, 484, 487};
inline constexpr std::size_t kTests = 3556;

struct Fixture {
  analytics::AxiomMetadata metadata;
  std::vector<eval::RunRecord> records;
};

inline std::string name(const char* prefix, std::size_t i) { return prefix + std::to_string(i); }

inline analytics::AxiomMetadata metadata() {
  using folify::Layer;
  constexpr auto UC = kif::FormulaKind::UnitClause;
  constexpr auto GC = kif::FormulaKind::GeneralClause;
  analytics::AxiomMetadata m;
  for (std::size_t i = 1; i <= 8; ++i) m.add(name("meta_", i), {Layer::MetaKnowledge, GC});
  for (std::size_t i = 1; i <= 2684; ++i) m.add(name("top_", i), {Layer::TopLevel, i <= 2034 ? UC : GC});
  for (std::size_t i = 1; i <= 3576; ++i) m.add(name("mid_", i), {Layer::MidLevel, i <= 2601 ? UC : GC});
  for (std::size_t i = 1; i <= 1152; ++i) m.add(name("fo_bridge_", i), {Layer::FoTransformation, GC});
  return m;
}

// The 971 axioms cited at 600 s: 488 top UC, 79 top GC, 297 mid UC,
// 65 mid GC, 8 meta, 34 bridging. Shuffled by a fixed stride.
inline std::vector<std::string> used_pool() {
  std::vector<std::string> pool;
  for (std::size_t i = 1; i <= 488; ++i) pool.push_back(name("top_", i));
  for (std::size_t i = 2035; i < 2035 + 79; ++i) pool.push_back(name("top_", i));
  for (std::size_t i = 1; i <= 297; ++i) pool.push_back(name("mid_", i));
  for (std::size_t i = 2602; i < 2602 + 65; ++i) pool.push_back(name("mid_", i));
  for (std::size_t i = 1; i <= 8; ++i) pool.push_back(name("meta_", i));
  for (std::size_t i = 1; i <= 34; ++i) pool.push_back(name("fo_bridge_", i));
  std::vector<std::string> out(pool.size());
  for (std::size_t i = 0; i < pool.size(); ++i) out[i] = pool[(i * 389) % pool.size()];
  return out;
}

inline std::string test_id(std::size_t i, cq::TestKind k) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "P1-%04zu-%c", i + 1, k == cq::TestKind::TruthTest ? 'T' : 'F');
  return buf;
}

// Roles inside the 971: core (127, heavy truth use), shared_rare (134),
// truth_rare (570), falsity_core (27, heavy falsity use only), falsity_rare (113).
// Truth proofs cite 831 distinct axioms, falsity proofs 401, overlap 261.
inline Fixture build() {
  Fixture f;
  f.metadata = metadata();
  const auto pool = used_pool();
  auto slice = [&](std::size_t from, std::size_t n) {
    return std::vector<std::string>(pool.begin() + static_cast<long>(from),
                                    pool.begin() + static_cast<long>(from + n));
  };
  const auto core = slice(0, 127);
  const auto shared_rare = slice(127, 134);
  const auto truth_rare = slice(261, 570);
  const auto falsity_core = slice(831, 27);
  const auto falsity_rare = slice(858, 113);

  // truth extras: 1126 slots over truth_rare + shared_rare (704 axioms)
  std::vector<std::string> truth_extra(truth_rare);
  truth_extra.insert(truth_extra.end(), shared_rare.begin(), shared_rare.end());
  // falsity extras: 1013 slots over core + shared_rare + falsity_rare (374 axioms)
  std::vector<std::string> falsity_extra(core);
  falsity_extra.insert(falsity_extra.end(), shared_rare.begin(), shared_rare.end());
  falsity_extra.insert(falsity_extra.end(), falsity_rare.begin(), falsity_rare.end());

  std::size_t truth_slot = 0;
  std::size_t falsity_slot = 0;
  for (std::size_t li = 0; li < kLimits.size(); ++li) {
    const bool last = li + 1 == kLimits.size();
    for (auto kind : {cq::TestKind::TruthTest, cq::TestKind::FalsityTest}) {
      const bool truth = kind == cq::TestKind::TruthTest;
      const std::size_t solved = truth ? kTruthSolved[li] : kFalsitySolved[li];
      for (std::size_t i = 0; i < kTests; ++i) {
        eval::RunRecord r;
        r.test_id = test_id(i, kind);
        r.kind = kind;
        r.limit_s = kLimits[li];
        r.verdict = i < solved ? prover::VerdictKind::ProofFound : prover::VerdictKind::NoProofWithinLimit;
        r.outcome = eval::classify_outcome(kind, r.verdict);
        if (i < solved) {
          if (truth) {
            const std::size_t width = last ? 13 : 3;
            for (std::size_t j = 0; j < width; ++j) r.used_axioms.insert(core[(i * 7 + j) % core.size()]);
            if (last) {
              const std::size_t extra = i < 232 ? 2 : 1;  // 894*13 + 1126 = 12748
              for (std::size_t j = 0; j < extra; ++j) {
                r.used_axioms.insert(truth_extra[truth_slot++ % truth_extra.size()]);
              }
            }
          } else {
            r.used_axioms.insert(falsity_core[i % falsity_core.size()]);
            if (last) {
              const std::size_t extra = i < 39 ? 3 : 2;  // 487 + 1013 = 1500
              for (std::size_t j = 0; j < extra; ++j) {
                r.used_axioms.insert(falsity_extra[falsity_slot++ % falsity_extra.size()]);
              }
            } else {
              r.used_axioms.insert(core[i % core.size()]);
              r.used_axioms.insert(core[(i + 1) % core.size()]);
            }
          }
        }
        f.records.push_back(std::move(r));
      }
    }
  }
  return f;
}

}  // namespace reference_fixture
