#include <gtest/gtest.h>

#include <random>

#include "ontoprobe/folify/tptp.hpp"
#include "ontoprobe/folify/translate.hpp"
#include "ontoprobe/kif/analysis.hpp"
#include "support.hpp"

using namespace ontoprobe;
using kif::Formula;
using kif::parse_formula;

namespace {

std::vector<kif::Formula> formulas(std::initializer_list<const char*> texts) {
  std::vector<kif::Formula> out;
  for (const char* t : texts) out.push_back(parse_formula(t));
  return out;
}

std::vector<folify::SourceStatement> toy_statements() {
  std::vector<folify::SourceStatement> out;
  for (auto [file, layer] : {std::pair{"top.kif", folify::Layer::TopLevel},
                             std::pair{"mid.kif", folify::Layer::MidLevel}}) {
    for (auto& st : kif::parse_suo_kif(
             testing_support::slurp(std::string(ONTOPROBE_TOY_DATA "/") + file))) {
      out.push_back({st, layer, file});
    }
  }
  return out;
}

bool predicates_constant(const Formula& f) {
  if (f.kind() == Formula::Kind::Atom) return f.predicate().is_constant();
  if (f.kind() == Formula::Kind::Equal) return true;
  if (f.is_quantifier()) return predicates_constant(f.body());
  for (const auto& g : f.operands()) {
    if (!predicates_constant(g)) return false;
  }
  return true;
}

}  // namespace

TEST(MetaAxioms, FamiliesAndKinds) {
  auto meta = folify::meta_axioms();
  std::set<std::string> names;
  for (const auto& a : meta) {
    names.insert(a.name);
    EXPECT_EQ(a.kind, kif::FormulaKind::GeneralClause) << a.name;
    EXPECT_EQ(a.layer, folify::Layer::MetaKnowledge);
    EXPECT_TRUE(kif::is_closed(a.formula)) << a.name;
  }
  for (const char* n : {"meta_subclass_transitive", "meta_subclass_reflexive",
                        "meta_instance_subclass", "meta_disjoint", "meta_disjoint_symmetric",
                        "meta_partition2_exhaustive", "meta_partition7_disjoint_cover"}) {
    EXPECT_TRUE(names.count(n)) << n;
  }
}

TEST(Signatures, DomainDeclarations) {
  auto sigs = folify::build_signatures(formulas({"(domain instance 2 Class)"}));
  ASSERT_EQ(sigs.size(), 1u);
  ASSERT_EQ(sigs["instance"].arg_domains.size(), 1u);
  EXPECT_EQ(sigs["instance"].arg_domains[0],
            (folify::ArgDomain{2, "Class", folify::ArgMode::Instance}));

  EXPECT_TRUE(folify::build_signatures({}).empty());

  sigs = folify::build_signatures(formulas({"(domain part 1 Object)", "(domain part 2 Object)",
                                            "(domainSubclass genus 2 Entity)",
                                            "(instance relatedTo VariableArityRelation)"}));
  EXPECT_EQ(sigs["part"].arg_domains.size(), 2u);
  EXPECT_EQ(sigs["genus"].domain_at(2)->mode, folify::ArgMode::Subclass);
  EXPECT_TRUE(sigs["relatedTo"].variable_arity);
}

TEST(Signatures, Conflict) {
  EXPECT_THROW(folify::build_signatures(formulas({"(domain part 1 Object)", "(domain part 1 Region)"})),
               folify::ConflictingDomain);
  // Repeating the same declaration is not a conflict.
  EXPECT_NO_THROW(folify::build_signatures(formulas({"(domain part 1 Object)", "(domain part 1 Object)"})));
}

TEST(ExpandRows, Cases) {
  auto f = parse_formula("(p ?X a)");
  EXPECT_EQ(folify::expand_rows(f, 5), std::vector<Formula>{f});

  auto rows = folify::expand_rows(parse_formula("(partition ?C @ROW)"), 3);
  ASSERT_EQ(rows.size(), 3u);
  for (std::size_t k = 0; k < 3; ++k) {
    ASSERT_EQ(rows[k].kind(), Formula::Kind::Atom);
    EXPECT_EQ(rows[k].args().size(), k + 2);
    EXPECT_FALSE(kif::has_row_variables(rows[k]));
  }
  EXPECT_EQ(folify::expand_rows(parse_formula("(=> (p @R) (q @R))"), 1).size(), 1u);

  // Consistent replacement within one output.
  auto two = folify::expand_rows(parse_formula("(=> (p @R) (q @R))"), 2)[1];
  EXPECT_EQ(two.operands()[0].args().size(), 2u);
  EXPECT_EQ(two.operands()[0].args()[1], two.operands()[1].args()[1]);

  EXPECT_THROW(folify::expand_rows(parse_formula("(p @R a)"), 3), folify::RowVariableNotTrailing);
}

TEST(Reify, VariablePredicates) {
  EXPECT_EQ(folify::reify_variable_predicates(parse_formula("(?REL a b)")),
            parse_formula("(holds_3 ?REL a b)"));
  auto f = parse_formula("(=> (p ?X) (q ?X))");
  EXPECT_EQ(folify::reify_variable_predicates(f), f);
  EXPECT_EQ(folify::reify_variable_predicates(parse_formula("(holds ?R a)")),
            parse_formula("(holds_2 ?R a)"));
}

TEST(Reify, BridgingOnlyForArgumentRelations) {
  auto bridges = folify::bridging_axioms(
      formulas({"(likes a b)", "(instance likes BinaryPredicate)", "(hates a b)"}));
  ASSERT_EQ(bridges.size(), 1u);
  EXPECT_EQ(bridges[0], parse_formula("(forall (?X1 ?X2) (<=> (holds_3 likes ?X1 ?X2) (likes ?X1 ?X2)))"));
}

TEST(Guards, HandBuiltExample) {
  folify::SignatureMap sigs =
      folify::build_signatures(formulas({"(domain p 1 A)", "(domain q 1 A)"}));
  auto g = folify::guard_types(parse_formula("(=> (p ?X) (q ?X))"), sigs);
  EXPECT_EQ(g, parse_formula("(forall (?X) (=> (instance ?X A) (=> (p ?X) (q ?X))))"));

  auto ground = parse_formula("(p a)");
  EXPECT_EQ(folify::guard_types(ground, sigs), ground);

  EXPECT_EQ(folify::guard_types(parse_formula("(r ?Y)"), sigs),
            parse_formula("(forall (?Y) (r ?Y))"));
}

TEST(Guards, ExistentialGuardInsideScope) {
  auto sigs = folify::build_signatures(formulas({"(domain p 1 A)"}));
  auto g = folify::guard_types(parse_formula("(exists (?X) (p ?X))"), sigs);
  EXPECT_EQ(g, parse_formula("(exists (?X) (and (instance ?X A) (p ?X)))"));
}

TEST(Guards, Idempotent) {
  auto sigs = folify::build_signatures(formulas(
      {"(domain p 1 A)", "(domain p 2 B)", "(domain q 1 A)", "(domainSubclass r 1 C)"}));
  for (const char* text :
       {"(=> (p ?X ?Y) (q ?X))", "(exists (?Z) (p ?Z ?Z))", "(forall (?X) (or (r ?X) (q ?X)))",
        "(=> (p ?X ?Y) (exists (?Z) (and (p ?Y ?Z) (r ?Z))))", "(p a b)",
        "(not (exists (?X) (and (instance ?X A) (q ?X))))"}) {
    auto once = folify::guard_types(parse_formula(text), sigs);
    EXPECT_EQ(folify::guard_types(once, sigs), once) << text << " -> " << kif::render(once);
  }
}

TEST(Untranslatable, Reasons) {
  EXPECT_EQ(folify::untranslatable_reason(parse_formula("(p (SuccFn a))"), {}), "");
  EXPECT_NE(folify::untranslatable_reason(parse_formula("(believes John (instance Moon Cheese))"), {}), "");
  EXPECT_EQ(folify::untranslatable_reason(parse_formula("(p (Succ a))"), {"Succ"}), "");
}

TEST(Translate, EmptyInputIsMetaOnly) {
  auto t = folify::translate_ontology({});
  auto meta = folify::meta_axioms();
  ASSERT_EQ(t.axioms.size(), meta.size());
  for (std::size_t i = 0; i < meta.size(); ++i) {
    EXPECT_EQ(t.axioms.axioms()[i].name, meta[i].name);
    EXPECT_EQ(t.axioms.axioms()[i].formula, meta[i].formula);
  }
  EXPECT_TRUE(t.dropped.empty());
}

TEST(Translate, ToyOntologyInvariants) {
  auto stmts = toy_statements();
  auto t = folify::translate_ontology(stmts);
  EXPECT_EQ(t.non_logical, 2u);
  ASSERT_EQ(t.dropped.size(), 1u);
  EXPECT_NE(t.dropped[0].text.find("holdsDuring"), std::string::npos);
  std::size_t bridges = 0;
  for (const auto& a : t.axioms.axioms()) {
    EXPECT_TRUE(kif::is_closed(a.formula)) << a.name;
    EXPECT_FALSE(kif::has_row_variables(a.formula)) << a.name;
    EXPECT_TRUE(predicates_constant(a.formula)) << a.name;
    EXPECT_EQ(a.kind, kif::classify_formula(a.formula));
    if (a.layer == folify::Layer::FoTransformation) ++bridges;
  }
  EXPECT_GE(bridges, 3u);  // agent, patient, part, near appear as arguments
  // Additivity of counts.
  folify::LayerCounts sum;
  for (auto l : folify::kAllLayers) {
    sum.unit += t.axioms.counts(l).unit;
    sum.general += t.axioms.counts(l).general;
  }
  EXPECT_EQ(sum, t.axioms.totals());
  EXPECT_EQ(t.axioms.totals().total(), t.axioms.size());
  EXPECT_EQ(t.axioms.counts(folify::Layer::MetaKnowledge).unit, 0u);
}

TEST(Translate, Census) {
  auto c = folify::census(toy_statements());
  auto top = c[static_cast<std::size_t>(folify::Layer::TopLevel)];
  auto mid = c[static_cast<std::size_t>(folify::Layer::MidLevel)];
  EXPECT_EQ(top.total() + mid.total(), 52u);
  EXPECT_EQ(mid.general, 3u);
}

TEST(Tptp, Encoding) {
  EXPECT_EQ(folify::encode_functor("instance", 2), "s_instance_2");
  EXPECT_EQ(folify::encode_functor("Foo", 0), "s_Foo");
  EXPECT_EQ(folify::encode_functor("a-b_c", 0), "s_a_db__c");
  EXPECT_EQ(folify::encode_variable("X"), "VX");
  for (std::string n : {"a-b_c", "holds_3", "x.y", "Ünïcode", "12"}) {
    EXPECT_EQ(folify::decode_functor(folify::encode_functor(n, 2)), n);
    EXPECT_EQ(folify::decode_functor(folify::encode_functor(n, 0)), n);
    EXPECT_EQ(folify::decode_variable(folify::encode_variable(n)), n);
  }
}

TEST(Tptp, EmitSingleAtom) {
  folify::AxiomSet set;
  set.add({"top_1", parse_formula("(instance Foo Bar)"), folify::Layer::TopLevel,
           kif::FormulaKind::UnitClause});
  EXPECT_EQ(folify::emit_tptp(set, std::nullopt), "fof(top_1, axiom, s_instance_2(s_Foo,s_Bar)).\n");
  auto with_goal = folify::emit_tptp(set, parse_formula("(exists (?X) (instance ?X Bar))"));
  EXPECT_NE(with_goal.find("fof(goal, conjecture, "), std::string::npos);
  EXPECT_THROW(folify::emit_tptp(set, parse_formula("(instance ?X Bar)")), std::invalid_argument);
}

TEST(Tptp, ToyRoundTripAndNameBijection) {
  auto t = folify::translate_ontology(toy_statements());
  const std::string text =
      folify::emit_tptp(t.axioms, parse_formula("(not (exists (?X) (and (instance ?X A) (instance ?X B))))"));
  EXPECT_EQ(folify::emit_tptp(t.axioms, std::nullopt),
            folify::emit_tptp(t.axioms, std::nullopt));  // deterministic
  auto parsed = folify::parse_tptp(text);
  ASSERT_EQ(parsed.size(), t.axioms.size() + 1);
  for (std::size_t i = 0; i < t.axioms.size(); ++i) {
    EXPECT_EQ(parsed[i].name, t.axioms.axioms()[i].name);
    EXPECT_EQ(parsed[i].role, "axiom");
    EXPECT_EQ(parsed[i].formula, t.axioms.axioms()[i].formula) << parsed[i].name;
  }
  EXPECT_EQ(parsed.back().name, "goal");
  EXPECT_EQ(parsed.back().role, "conjecture");
}

TEST(Tptp, ParserDialect) {
  auto in = folify::parse_tptp(
      "% comment\n"
      "fof(a1, axiom, ! [X] : (p(X) => q(X)), file('x.p', a1)).\n"
      "cnf(c1, axiom, ~ p(X) | r(X)).\n"
      "fof(g, conjecture, ? [Y] : (q(Y) & Y != b & ~ (Y = c))).\n");
  ASSERT_EQ(in.size(), 3u);
  EXPECT_EQ(in[0].formula, parse_formula("(forall (?X) (=> (p ?X) (q ?X)))"));
  EXPECT_TRUE(kif::is_closed(in[1].formula));
  EXPECT_EQ(in[2].role, "conjecture");
  EXPECT_THROW(folify::parse_tptp("fof(a, axiom, p(a)"), folify::TptpParseError);
}
