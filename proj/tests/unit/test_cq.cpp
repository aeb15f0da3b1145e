#include <gtest/gtest.h>

#include "ontoprobe/cq/generate.hpp"
#include "ontoprobe/kif/analysis.hpp"
#include "ontoprobe/kif/parser.hpp"

using namespace ontoprobe;
using kif::parse_formula;

namespace {

std::filesystem::path toy(const char* name) { return std::filesystem::path(ONTOPROBE_TOY_DATA) / name; }

}  // namespace

TEST(Mapping, Lines) {
  auto m = cq::parse_mapping("200123456\tv\trise\t&%Increasing=\n");
  ASSERT_EQ(m.items.size(), 1u);
  EXPECT_EQ(m.items[0].sumo_concept, "Increasing");
  EXPECT_EQ(m.items[0].relation, cq::MappingRelation::Equivalent);
  EXPECT_EQ(m.items[0].pos, cq::Pos::Verb);
  EXPECT_EQ(m.items[0].words, (std::vector<std::string>{"rise"}));

  EXPECT_TRUE(cq::parse_mapping("").items.empty());

  m = cq::parse_mapping("200123456\tv\trise\tIncreasing=\n100000001\tn\tdog,hound\t&%Canine+\n");
  EXPECT_EQ(m.items.size(), 1u);
  EXPECT_EQ(m.skipped.size(), 1u);
  EXPECT_EQ(m.skipped[0].line, 1u);
  EXPECT_EQ(m.items[0].relation, cq::MappingRelation::Subsuming);
}

TEST(Mapping, Unreadable) {
  EXPECT_THROW(cq::load_mapping("/nonexistent/mapping.tsv"), cq::UnreadableFile);
}

TEST(MorphoLinks, ParseAndDedup) {
  auto l = cq::parse_morpholinks("200123456,agent,100234567\n");
  ASSERT_EQ(l.items.size(), 1u);
  EXPECT_EQ(l.items[0].relation, "agent");
  EXPECT_TRUE(cq::parse_morpholinks("").items.empty());
  l = cq::parse_morpholinks("verb_synset,relation,noun_synset\n1,event,2\n1,event,2\n3,by-means-of,4\n");
  EXPECT_EQ(l.items.size(), 2u);
  EXPECT_EQ(l.items[1].relation, "by-means-of");
}

TEST(Antonyms, Canonical) {
  auto a = cq::parse_antonyms("2\t1\n1\t2\n3\t3\n");
  ASSERT_EQ(a.items.size(), 1u);
  EXPECT_EQ(a.items[0].a, "1");
  EXPECT_EQ(a.skipped.size(), 1u);
}

TEST(Generate, EmptyMapping) {
  EXPECT_TRUE(cq::generate_truth_tests({}, {{"1", "2"}}, {}, cq::default_templates()).empty());
}

TEST(Generate, RiseFall) {
  auto m = cq::parse_mapping("200000001\tv\trise\t&%Increasing=\n200000002\tv\tfall\t&%Decreasing=\n");
  auto a = cq::parse_antonyms("200000001\t200000002\n");
  auto tests = cq::generate_truth_tests(m.items, a.items, {}, cq::default_templates());
  ASSERT_EQ(tests.size(), 1u);
  EXPECT_EQ(tests[0].id, "P1-0001-T");
  EXPECT_EQ(tests[0].kind, cq::TestKind::TruthTest);
  EXPECT_EQ(tests[0].conjecture,
            parse_formula("(not (exists (?X) (and (instance ?X Increasing) (instance ?X Decreasing))))"));
  EXPECT_EQ(tests[0].source, "200000001,200000002");
}

TEST(Generate, SameConceptSkipped) {
  auto m = cq::parse_mapping("1\tv\trise\t&%Increasing=\n2\tv\tfall\t&%Increasing=\n");
  auto a = cq::parse_antonyms("1\t2\n");
  EXPECT_TRUE(cq::generate_truth_tests(m.items, a.items, {}, cq::default_templates()).empty());
}

TEST(Generate, SubsumingNeedsOption) {
  auto m = cq::parse_mapping("1\tv\tup\t&%A+\n2\tv\tdown\t&%B=\n");
  auto a = cq::parse_antonyms("1\t2\n");
  auto templates = cq::default_templates();
  EXPECT_TRUE(cq::generate_truth_tests(m.items, a.items, {}, templates).empty());
  templates[0].mapping.insert(cq::MappingRelation::Subsuming);
  EXPECT_EQ(cq::generate_truth_tests(m.items, a.items, {}, templates).size(), 1u);
}

TEST(Generate, ArityMismatch) {
  auto m = cq::parse_mapping("1\tv\tup\t&%A=\n2\tv\tdown\t&%B=\n");
  auto a = cq::parse_antonyms("1\t2\n");
  auto templates = cq::default_templates();
  templates[0].schema = "(not (exists (?X) (and (instance ?X $A) (instance ?X $C))))";
  EXPECT_THROW(cq::generate_truth_tests(m.items, a.items, {}, templates), cq::TemplateArityMismatch);
}

TEST(Generate, ToyFixture) {
  auto m = cq::load_mapping(toy("mapping.tsv"));
  EXPECT_EQ(m.skipped.size(), 1u);
  auto a = cq::load_antonyms(toy("antonyms.tsv"));
  EXPECT_EQ(a.items.size(), 7u);
  auto l = cq::load_morpholinks(toy("morpholinks.csv"));
  auto templates = cq::load_templates(toy("templates.json"));
  ASSERT_EQ(templates.size(), 2u);
  cq::GenerationStats stats;
  auto tests = cq::generate_truth_tests(m.items, a.items, l.items, templates, &stats);
  EXPECT_EQ(stats.unresolved_links, 1u);
  EXPECT_EQ(stats.duplicates, 1u);  // increase/decrease repeats rise/fall
  std::size_t p1 = 0, p2 = 0;
  std::set<std::string> ids;
  for (const auto& t : tests) {
    EXPECT_TRUE(kif::is_closed(t.conjecture));
    EXPECT_FALSE(kif::has_row_variables(t.conjecture));
    EXPECT_TRUE(ids.insert(t.id).second);
    (t.pattern == "P1" ? p1 : p2)++;
  }
  EXPECT_EQ(p1, 5u);
  EXPECT_EQ(p2, 6u);
  // Stable across runs.
  auto again = cq::generate_truth_tests(m.items, a.items, l.items, templates);
  EXPECT_EQ(cq::to_jsonl(again), cq::to_jsonl(tests));
}

TEST(Generate, DefaultTemplatesMatchShippedJson) {
  auto shipped = cq::load_templates(toy("templates.json"));
  auto defaults = cq::default_templates();
  ASSERT_EQ(shipped.size(), defaults.size());
  for (std::size_t i = 0; i < shipped.size(); ++i) {
    EXPECT_EQ(shipped[i].schema, defaults[i].schema);
    EXPECT_EQ(shipped[i].mapping, defaults[i].mapping);
    EXPECT_EQ(shipped[i].distinct, defaults[i].distinct);
  }
}

TEST(Falsity, NegationAndInvolution) {
  std::vector<cq::TestCase> truth = {
      {"P1-0001-T", cq::TestKind::TruthTest,
       parse_formula("(not (exists (?X) (and (instance ?X A) (instance ?X B))))"), "P1", "1,2"},
      {"P2-0001-T", cq::TestKind::TruthTest,
       parse_formula("(=> (exists (?X) (instance ?X A)) (exists (?Y) (instance ?Y B)))"), "P2", "s"}};
  auto falsity = cq::derive_falsity_tests(truth);
  ASSERT_EQ(falsity.size(), truth.size());
  EXPECT_EQ(falsity[0].id, "P1-0001-F");
  EXPECT_EQ(falsity[0].kind, cq::TestKind::FalsityTest);
  EXPECT_EQ(falsity[0].conjecture,
            parse_formula("(exists (?X) (and (instance ?X A) (instance ?X B)))"));
  EXPECT_EQ(falsity[1].conjecture.kind(), kif::Formula::Kind::Not);
  for (std::size_t i = 0; i < truth.size(); ++i) {
    EXPECT_EQ(cq::negate(falsity[i].conjecture), truth[i].conjecture);
  }
  EXPECT_TRUE(cq::derive_falsity_tests({}).empty());
  EXPECT_THROW(cq::derive_falsity_tests(falsity), std::invalid_argument);
}

TEST(Suite, JsonlRoundTrip) {
  auto m = cq::load_mapping(toy("mapping.tsv"));
  auto a = cq::load_antonyms(toy("antonyms.tsv"));
  auto l = cq::load_morpholinks(toy("morpholinks.csv"));
  auto truth = cq::generate_truth_tests(m.items, a.items, l.items, cq::default_templates());
  auto all = truth;
  for (auto& f : cq::derive_falsity_tests(truth)) all.push_back(f);
  auto text = cq::to_jsonl(all);
  auto back = cq::parse_suite(text);
  ASSERT_EQ(back.size(), all.size());
  for (std::size_t i = 0; i < all.size(); ++i) {
    EXPECT_EQ(back[i].id, all[i].id);
    EXPECT_EQ(back[i].kind, all[i].kind);
    EXPECT_EQ(back[i].conjecture, all[i].conjecture);
    EXPECT_EQ(back[i].source, all[i].source);
  }
  EXPECT_THROW(cq::parse_suite("{\"id\":\"x\"}\n"), std::invalid_argument);
}

TEST(CanonicalKey, RenamingInvariant) {
  EXPECT_EQ(cq::canonical_key(parse_formula("(exists (?X) (p ?X))")),
            cq::canonical_key(parse_formula("(exists (?Y) (p ?Y))")));
  EXPECT_NE(cq::canonical_key(parse_formula("(exists (?X) (p ?X))")),
            cq::canonical_key(parse_formula("(forall (?X) (p ?X))")));
}
