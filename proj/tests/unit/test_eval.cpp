#include <gtest/gtest.h>

#include "ontoprobe/eval/campaign.hpp"
#include "ontoprobe/folify/tptp.hpp"
#include "ontoprobe/folify/translate.hpp"
#include "ontoprobe/io.hpp"
#include "support.hpp"

using namespace ontoprobe;
using cq::TestKind;
using eval::Outcome;
using prover::VerdictKind;

namespace {

std::filesystem::path fresh_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("ontoprobe_eval_" + name);
  std::filesystem::remove_all(dir);
  return dir;
}

std::string toy_axioms() {
  std::vector<folify::SourceStatement> stmts;
  for (auto [file, layer] : {std::pair{"top.kif", folify::Layer::TopLevel},
                             std::pair{"mid.kif", folify::Layer::MidLevel}}) {
    for (auto& st : kif::parse_suo_kif(testing_support::slurp(std::string(ONTOPROBE_TOY_DATA "/") + file))) {
      stmts.push_back({st, layer, file});
    }
  }
  return folify::emit_tptp(folify::translate_ontology(stmts).axioms, std::nullopt);
}

std::vector<cq::TestCase> toy_suite() {
  auto dir = std::filesystem::path(ONTOPROBE_TOY_DATA);
  auto truth = cq::generate_truth_tests(cq::load_mapping(dir / "mapping.tsv").items,
                                        cq::load_antonyms(dir / "antonyms.tsv").items,
                                        cq::load_morpholinks(dir / "morpholinks.csv").items,
                                        cq::load_templates(dir / "templates.json"));
  auto all = truth;
  for (auto& f : cq::derive_falsity_tests(truth)) all.push_back(f);
  return all;
}

cq::TestCase test_case(std::string id, TestKind kind, const char* kif) {
  return {std::move(id), kind, kif::parse_formula(kif), "X", ""};
}

}  // namespace

TEST(Classify, FullGrid) {
  EXPECT_EQ(eval::classify_outcome(TestKind::TruthTest, VerdictKind::ProofFound), Outcome::Passing);
  EXPECT_EQ(eval::classify_outcome(TestKind::FalsityTest, VerdictKind::ProofFound), Outcome::NonPassing);
  for (auto k : {TestKind::TruthTest, TestKind::FalsityTest}) {
    EXPECT_EQ(eval::classify_outcome(k, VerdictKind::NoProofWithinLimit), Outcome::Unknown);
    EXPECT_EQ(eval::classify_outcome(k, VerdictKind::ProverError), Outcome::Unknown);
  }
}

TEST(Records, JsonRoundTrip) {
  eval::RunRecord r{"P1-0001-T", TestKind::TruthTest, 60, VerdictKind::ProofFound, Outcome::Passing,
                    {"a", "b"}, 15, {"x"}};
  auto back = eval::parse_record(eval::to_json_line(r));
  EXPECT_EQ(back.test_id, r.test_id);
  EXPECT_EQ(back.used_axioms, r.used_axioms);
  EXPECT_EQ(back.outcome, Outcome::Passing);
  EXPECT_EQ(back.flags, r.flags);
  EXPECT_THROW(eval::parse_record(R"({"test_id":"x","kind":"truth","limit_s":1,"verdict":"ProofFound","outcome":"Unknown"})"),
               std::invalid_argument);
}

TEST(Campaign, ConfigValidation) {
  eval::CampaignConfig c;
  c.output_dir = "/tmp/x";
  EXPECT_EQ(c.validate(), "");
  c.limits_s = {60, 60};
  EXPECT_NE(c.validate(), "");
  c.limits_s = {1, 2};
  c.workers = 0;
  EXPECT_NE(c.validate(), "");
}

TEST(Campaign, Cardinality) {
  auto input = eval::make_input("fof(ax1, axiom, s_p_1(s_a)).\n",
                                {test_case("t1", TestKind::TruthTest, "(p a)"),
                                 test_case("t2", TestKind::FalsityTest, "(q a)")});
  eval::CampaignConfig c;
  c.limits_s = {1, 2, 3, 4};
  c.output_dir = fresh_dir("card");
  auto records = eval::run_campaign(input, c);
  ASSERT_EQ(records.size(), 8u);
  for (const auto& r : records) {
    EXPECT_EQ(r.outcome, eval::classify_outcome(r.kind, r.verdict));
    if (r.test_id == "t1") {
      EXPECT_EQ(r.outcome, Outcome::Passing);
      EXPECT_EQ(r.used_axioms, (std::set<std::string>{"ax1"}));
    } else {
      EXPECT_EQ(r.outcome, Outcome::Unknown);
      EXPECT_TRUE(r.has_flag("saturated"));
    }
  }
  EXPECT_TRUE(std::filesystem::exists(c.output_dir / "metadata.json"));
  EXPECT_TRUE(std::filesystem::exists(c.output_dir / "problems" / "t1.p"));
  EXPECT_TRUE(std::filesystem::exists(c.output_dir / "raw" / "t1@3.out"));
}

TEST(Campaign, ResumeIsIdempotent) {
  auto input = eval::make_input("fof(ax1, axiom, s_p_1(s_a)).\n",
                                {test_case("t1", TestKind::TruthTest, "(p a)"),
                                 test_case("t2", TestKind::TruthTest, "(q a)")});
  eval::CampaignConfig c;
  c.limits_s = {1, 2};
  c.output_dir = fresh_dir("resume");
  eval::CampaignSummary s;
  auto first = eval::run_campaign(input, c, &s);
  EXPECT_EQ(s.executed, 4u);
  const auto before = io::read_file(c.output_dir / "records.jsonl");
  auto second = eval::run_campaign(input, c, &s);
  EXPECT_EQ(s.executed, 0u);
  EXPECT_EQ(s.resumed, 4u);
  EXPECT_EQ(io::read_file(c.output_dir / "records.jsonl"), before);
  ASSERT_EQ(first.size(), second.size());
  for (std::size_t i = 0; i < first.size(); ++i) {
    EXPECT_EQ(eval::to_json_line(first[i]), eval::to_json_line(second[i]));
  }

  // A torn final line is discarded and its key re-run.
  auto text = before.substr(0, before.size() - 10);
  io::write_file(c.output_dir / "records.jsonl", text);
  eval::run_campaign(input, c, &s);
  EXPECT_EQ(s.executed, 1u);
  EXPECT_EQ(eval::parse_records(io::read_file(c.output_dir / "records.jsonl")).size(), 4u);
}

TEST(Campaign, ReuseMode) {
  auto input = eval::make_input("fof(ax1, axiom, s_p_1(s_a)).\n",
                                {test_case("t1", TestKind::TruthTest, "(p a)")});
  eval::CampaignConfig c;
  c.limits_s = {1, 2, 3};
  c.reuse = true;
  c.output_dir = fresh_dir("reuse");
  eval::CampaignSummary s;
  auto records = eval::run_campaign(input, c, &s);
  EXPECT_EQ(s.executed, 1u);
  EXPECT_EQ(s.reused, 2u);
  for (const auto& r : records) EXPECT_EQ(r.verdict, VerdictKind::ProofFound);
  EXPECT_TRUE(records[2].has_flag("reused"));
}

TEST(Campaign, ExternalProverErrorsAreFlagged) {
  auto input = eval::make_input("fof(ax1, axiom, s_p_1(s_a)).\n",
                                {test_case("t1", TestKind::TruthTest, "(p a)")});
  eval::CampaignConfig c;
  c.limits_s = {1};
  c.prover = prover::ProverConfig{ONTOPROBE_TEST_DATA "/fake_prover.sh", "crash {problem} {limit_s}", 1};
  c.output_dir = fresh_dir("ext");
  auto records = eval::run_campaign(input, c);
  ASSERT_EQ(records.size(), 1u);
  EXPECT_EQ(records[0].outcome, Outcome::Unknown);
  EXPECT_TRUE(records[0].has_flag("error"));

  c.prover = prover::ProverConfig{ONTOPROBE_TEST_DATA "/fake_prover.sh", "theorem {problem} {limit_s}", 1};
  c.output_dir = fresh_dir("ext2");
  records = eval::run_campaign(input, c);
  EXPECT_EQ(records[0].outcome, Outcome::Passing);
  EXPECT_EQ(records[0].used_axioms, (std::set<std::string>{"ax1"}));
}

TEST(Campaign, ToySuiteWorkerIndependence) {
  auto input = eval::make_input(toy_axioms(), toy_suite());
  eval::CampaignConfig c;
  c.limits_s = {1, 5};
  c.output_dir = fresh_dir("toy1");
  c.workers = 1;
  auto one = eval::run_campaign(input, c);
  c.output_dir = fresh_dir("toy8");
  c.workers = 8;
  auto eight = eval::run_campaign(input, c);
  ASSERT_EQ(one.size(), input.tests.size() * 2);
  ASSERT_EQ(one.size(), eight.size());
  std::map<std::string, int> outcomes;
  for (std::size_t i = 0; i < one.size(); ++i) {
    EXPECT_EQ(one[i].test_id, eight[i].test_id);
    EXPECT_EQ(one[i].verdict, eight[i].verdict) << one[i].test_id;
    EXPECT_EQ(one[i].used_axioms, eight[i].used_axioms) << one[i].test_id;
    outcomes[std::string(cq::to_string(one[i].kind)) + "/" + eval::to_string(one[i].outcome) +
             (one[i].has_flag("saturated") ? "/sat" : "")]++;
  }
  for (auto& [k, n] : outcomes) std::cerr << k << ": " << n << "\n";
  EXPECT_GT(outcomes["truth/Passing"], 0);
}
