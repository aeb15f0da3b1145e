#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ontoprobe/kif/formula.hpp"

namespace ontoprobe::cq {

class UnreadableFile : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class TemplateArityMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidTemplate : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Pos { Noun, Verb, Adjective, Adverb };
enum class MappingRelation { Equivalent, Subsuming, Instance };

const char* to_string(Pos p) noexcept;
char marker(MappingRelation r) noexcept;

struct MappingEntry {
  std::string synset_id;
  Pos pos;
  std::vector<std::string> words;
  std::string sumo_concept;
  MappingRelation relation;
};

struct MorphoLink {
  std::string verb_synset;
  std::string relation;
  std::string noun_synset;

  friend auto operator<=>(const MorphoLink&, const MorphoLink&) = default;
};

// Unordered; a < b after canonicalisation.
struct AntonymPair {
  std::string a;
  std::string b;

  friend auto operator<=>(const AntonymPair&, const AntonymPair&) = default;
};

struct SkippedLine {
  std::size_t line;
  std::string reason;
};

template <class T>
struct Loaded {
  std::vector<T> items;
  std::vector<SkippedLine> skipped;
};

// synset \t pos \t lemma,lemma \t &%Concept<marker>
Loaded<MappingEntry> parse_mapping(std::string_view text);
Loaded<MappingEntry> load_mapping(const std::filesystem::path& file);

// verb_synset,relation,noun_synset with an optional header row. Duplicates
// are dropped; output is sorted.
Loaded<MorphoLink> parse_morpholinks(std::string_view text);
Loaded<MorphoLink> load_morpholinks(const std::filesystem::path& file);

// synset_a \t synset_b. Pairs are canonicalised and deduplicated.
Loaded<AntonymPair> parse_antonyms(std::string_view text);
Loaded<AntonymPair> load_antonyms(const std::filesystem::path& file);

enum class TemplateSource { Antonyms, MorphoLinks };

// Antonym templates bind $A and $B to the concepts of the two synsets;
// morpholink templates bind $VERB and $NOUN.
struct PatternTemplate {
  std::string id;
  TemplateSource source = TemplateSource::Antonyms;
  std::set<Pos> pos;                           // antonyms: both synsets must match; empty = any
  std::set<MappingRelation> mapping;           // accepted mapping markers
  std::string link_relation;                   // morpholinks only
  bool distinct = true;                        // reject tuples that bind one concept twice
  std::string schema;                          // SUO-KIF with placeholders
};

std::vector<PatternTemplate> default_templates();
std::vector<PatternTemplate> parse_templates(std::string_view json_text);
std::vector<PatternTemplate> load_templates(const std::filesystem::path& file);

enum class TestKind { TruthTest, FalsityTest };

const char* to_string(TestKind k) noexcept;

struct TestCase {
  std::string id;
  TestKind kind;
  kif::Formula conjecture;
  std::string pattern;
  std::string source;
};

struct GenerationStats {
  std::size_t unresolved_links = 0;
  std::size_t duplicates = 0;
};

std::vector<TestCase> generate_truth_tests(const std::vector<MappingEntry>& mapping,
                                           const std::vector<AntonymPair>& antonyms,
                                           const std::vector<MorphoLink>& links,
                                           const std::vector<PatternTemplate>& templates,
                                           GenerationStats* stats = nullptr);

// Negation with double negation removed.
kif::Formula negate(const kif::Formula& f);

std::vector<TestCase> derive_falsity_tests(const std::vector<TestCase>& truth_tests);

// Bound variables renamed in order of binding, for duplicate detection.
std::string canonical_key(const kif::Formula& f);

// JSON Lines: {id, kind, conjecture (TPTP), pattern, source}.
std::string to_jsonl(const std::vector<TestCase>& tests);
std::vector<TestCase> parse_suite(std::string_view jsonl);

}  // namespace ontoprobe::cq
