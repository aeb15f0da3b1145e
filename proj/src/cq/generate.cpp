#include "ontoprobe/cq/generate.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <map>
#include <json.hpp>

#include "ontoprobe/folify/tptp.hpp"
#include "ontoprobe/io.hpp"
#include "ontoprobe/kif/analysis.hpp"
#include "ontoprobe/kif/parser.hpp"

namespace ontoprobe::cq {

namespace {

using json = nlohmann::json;

std::string read(const std::filesystem::path& file) {
  try {
    return io::read_file(file);
  } catch (const std::runtime_error& e) {
    throw UnreadableFile(e.what());
  }
}

std::optional<Pos> parse_pos(std::string_view s) {
  if (s == "n" || s == "noun") return Pos::Noun;
  if (s == "v" || s == "verb") return Pos::Verb;
  if (s == "a" || s == "s" || s == "adj") return Pos::Adjective;
  if (s == "r" || s == "adv") return Pos::Adverb;
  return std::nullopt;
}

std::optional<MappingRelation> parse_marker(char c) {
  switch (c) {
    case '=': return MappingRelation::Equivalent;
    case '+': return MappingRelation::Subsuming;
    case '@': return MappingRelation::Instance;
    default: return std::nullopt;
  }
}

bool identifier(std::string_view s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isalnum(c) || c == '_' || c == '-';
  });
}

// Replaces $NAME tokens; throws if a placeholder has no binding.
std::string fill(const std::string& schema, const std::map<std::string, std::string>& bindings,
                 const std::string& template_id) {
  std::string out;
  for (std::size_t i = 0; i < schema.size();) {
    if (schema[i] != '$') {
      out += schema[i++];
      continue;
    }
    std::size_t j = i + 1;
    while (j < schema.size() &&
           (std::isalnum(static_cast<unsigned char>(schema[j])) || schema[j] == '_')) {
      ++j;
    }
    const std::string name = schema.substr(i + 1, j - i - 1);
    auto it = bindings.find(name);
    if (it == bindings.end()) {
      throw TemplateArityMismatch("template " + template_id + ": no value for $" + name);
    }
    out += it->second;
    i = j;
  }
  return out;
}

kif::Formula rename_bound(const kif::Formula& f, std::vector<std::pair<std::string, std::string>>& env,
                          std::size_t& next);

kif::Term rename_term(const kif::Term& t, const std::vector<std::pair<std::string, std::string>>& env) {
  switch (t.kind()) {
    case kif::Term::Kind::Variable:
      for (auto it = env.rbegin(); it != env.rend(); ++it) {
        if (it->first == t.name()) return kif::Term::variable(it->second);
      }
      return t;
    case kif::Term::Kind::Compound: {
      std::vector<kif::Term> args;
      for (const auto& a : t.args()) args.push_back(rename_term(a, env));
      return kif::Term::compound(rename_term(t.head(), env), std::move(args));
    }
    default: return t;
  }
}

kif::Formula rename_bound(const kif::Formula& f, std::vector<std::pair<std::string, std::string>>& env,
                          std::size_t& next) {
  using K = kif::Formula::Kind;
  auto sub = [&](const kif::Formula& g) { return rename_bound(g, env, next); };
  switch (f.kind()) {
    case K::Atom: {
      std::vector<kif::Term> args;
      for (const auto& a : f.args()) args.push_back(rename_term(a, env));
      return kif::Formula::atom(rename_term(f.predicate(), env), std::move(args));
    }
    case K::Equal:
      return kif::Formula::equal(rename_term(f.lhs_term(), env), rename_term(f.rhs_term(), env));
    case K::Not: return kif::Formula::negation(sub(f.operands()[0]));
    case K::And:
    case K::Or: {
      std::vector<kif::Formula> ops;
      for (const auto& g : f.operands()) ops.push_back(sub(g));
      return f.kind() == K::And ? kif::Formula::conjunction(std::move(ops))
                                : kif::Formula::disjunction(std::move(ops));
    }
    case K::Implies: return kif::Formula::implies(sub(f.operands()[0]), sub(f.operands()[1]));
    case K::Iff: return kif::Formula::iff(sub(f.operands()[0]), sub(f.operands()[1]));
    case K::Forall:
    case K::Exists: {
      const std::size_t mark = env.size();
      std::vector<std::string> vars;
      for (const auto& v : f.variables()) {
        vars.push_back("V" + std::to_string(next++));
        env.emplace_back(v, vars.back());
      }
      auto body = sub(f.body());
      env.resize(mark);
      return f.kind() == K::Forall ? kif::Formula::forall(std::move(vars), std::move(body))
                                   : kif::Formula::exists(std::move(vars), std::move(body));
    }
  }
  return f;
}

std::string numbered(const std::string& pattern, std::size_t n, char suffix) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "-%04zu-%c", n, suffix);
  return pattern + buf;
}

}  // namespace

const char* to_string(Pos p) noexcept {
  switch (p) {
    case Pos::Noun: return "n";
    case Pos::Verb: return "v";
    case Pos::Adjective: return "a";
    case Pos::Adverb: return "r";
  }
  return "?";
}

char marker(MappingRelation r) noexcept {
  switch (r) {
    case MappingRelation::Equivalent: return '=';
    case MappingRelation::Subsuming: return '+';
    case MappingRelation::Instance: return '@';
  }
  return '?';
}

const char* to_string(TestKind k) noexcept {
  return k == TestKind::TruthTest ? "truth" : "falsity";
}

Loaded<MappingEntry> parse_mapping(std::string_view text) {
  Loaded<MappingEntry> out;
  std::size_t lineno = 0;
  for (auto raw : io::split_lines(text)) {
    ++lineno;
    auto line = io::trim(raw);
    if (line.empty() || line.front() == '#' || line.front() == ';') continue;
    auto fields = io::split(line, '\t');
    if (fields.size() != 4) {
      out.skipped.push_back({lineno, "expected 4 tab-separated fields"});
      continue;
    }
    auto pos = parse_pos(io::trim(fields[1]));
    if (!pos) {
      out.skipped.push_back({lineno, "unknown part of speech"});
      continue;
    }
    std::string_view concept_field = io::trim(fields[3]);
    if (concept_field.substr(0, 2) != "&%" || concept_field.size() < 4) {
      out.skipped.push_back({lineno, "missing &% concept marker"});
      continue;
    }
    auto rel = parse_marker(concept_field.back());
    std::string_view name = concept_field.substr(2, concept_field.size() - 3);
    if (!rel || !identifier(name)) {
      out.skipped.push_back({lineno, "malformed concept"});
      continue;
    }
    std::string synset(io::trim(fields[0]));
    if (synset.empty()) {
      out.skipped.push_back({lineno, "empty synset id"});
      continue;
    }
    MappingEntry e{synset, *pos, {}, std::string(name), *rel};
    for (auto& w : io::split(fields[2], ',')) {
      auto t = io::trim(w);
      if (!t.empty()) e.words.emplace_back(t);
    }
    out.items.push_back(std::move(e));
  }
  return out;
}

Loaded<MappingEntry> load_mapping(const std::filesystem::path& file) {
  return parse_mapping(read(file));
}

Loaded<MorphoLink> parse_morpholinks(std::string_view text) {
  Loaded<MorphoLink> out;
  std::set<MorphoLink> seen;
  std::size_t lineno = 0;
  for (auto raw : io::split_lines(text)) {
    ++lineno;
    auto line = io::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    auto fields = io::split(line, ',');
    if (fields.size() != 3) {
      out.skipped.push_back({lineno, "expected 3 comma-separated fields"});
      continue;
    }
    MorphoLink l{std::string(io::trim(fields[0])), std::string(io::trim(fields[1])),
                 std::string(io::trim(fields[2]))};
    if (lineno == 1 && l.verb_synset == "verb_synset") continue;
    if (l.verb_synset.empty() || l.relation.empty() || l.noun_synset.empty()) {
      out.skipped.push_back({lineno, "empty field"});
      continue;
    }
    seen.insert(std::move(l));
  }
  out.items.assign(seen.begin(), seen.end());
  return out;
}

Loaded<MorphoLink> load_morpholinks(const std::filesystem::path& file) {
  return parse_morpholinks(read(file));
}

Loaded<AntonymPair> parse_antonyms(std::string_view text) {
  Loaded<AntonymPair> out;
  std::set<AntonymPair> seen;
  std::size_t lineno = 0;
  for (auto raw : io::split_lines(text)) {
    ++lineno;
    auto line = io::trim(raw);
    if (line.empty() || line.front() == '#') continue;
    auto fields = io::split(line, '\t');
    if (fields.size() != 2 || io::trim(fields[0]).empty() || io::trim(fields[1]).empty()) {
      out.skipped.push_back({lineno, "expected 2 tab-separated synset ids"});
      continue;
    }
    std::string a(io::trim(fields[0]));
    std::string b(io::trim(fields[1]));
    if (a == b) {
      out.skipped.push_back({lineno, "synset paired with itself"});
      continue;
    }
    if (b < a) std::swap(a, b);
    seen.insert({a, b});
  }
  out.items.assign(seen.begin(), seen.end());
  return out;
}

Loaded<AntonymPair> load_antonyms(const std::filesystem::path& file) {
  return parse_antonyms(read(file));
}

std::vector<PatternTemplate> default_templates() {
  PatternTemplate p1;
  p1.id = "P1";
  p1.source = TemplateSource::Antonyms;
  p1.pos = {Pos::Verb};
  p1.mapping = {MappingRelation::Equivalent};
  p1.schema = "(not (exists (?X) (and (instance ?X $A) (instance ?X $B))))";

  PatternTemplate p2;
  p2.id = "P2";
  p2.source = TemplateSource::MorphoLinks;
  p2.mapping = {MappingRelation::Equivalent, MappingRelation::Subsuming};
  p2.link_relation = "event";
  p2.distinct = false;
  p2.schema = "(=> (exists (?X) (instance ?X $VERB)) (exists (?Y) (instance ?Y $NOUN)))";
  return {p1, p2};
}

std::vector<PatternTemplate> parse_templates(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::exception& e) {
    throw InvalidTemplate(std::string("template file: ") + e.what());
  }
  const json& list = doc.is_object() ? doc.value("templates", json::array()) : doc;
  if (!list.is_array()) throw InvalidTemplate("template file: expected an array of templates");
  std::vector<PatternTemplate> out;
  std::set<std::string> ids;
  for (const auto& t : list) {
    try {
      PatternTemplate p;
      p.id = t.at("id").get<std::string>();
      if (!identifier(p.id) || !ids.insert(p.id).second) {
        throw InvalidTemplate("bad or duplicate template id '" + p.id + "'");
      }
      const auto source = t.at("source").get<std::string>();
      if (source == "antonyms") {
        p.source = TemplateSource::Antonyms;
      } else if (source == "morpholinks") {
        p.source = TemplateSource::MorphoLinks;
        p.link_relation = t.at("relation").get<std::string>();
      } else {
        throw InvalidTemplate("template " + p.id + ": unknown source '" + source + "'");
      }
      for (const auto& s : t.value("pos", json::array())) {
        auto pos = parse_pos(s.get<std::string>());
        if (!pos) throw InvalidTemplate("template " + p.id + ": unknown pos");
        p.pos.insert(*pos);
      }
      for (const auto& s : t.value("mapping", json::array({"="}))) {
        auto m = s.get<std::string>();
        auto rel = m.size() == 1 ? parse_marker(m[0]) : std::nullopt;
        if (!rel) throw InvalidTemplate("template " + p.id + ": unknown mapping marker '" + m + "'");
        p.mapping.insert(*rel);
      }
      p.distinct = t.value("distinct", p.source == TemplateSource::Antonyms);
      p.schema = t.at("schema").get<std::string>();
      out.push_back(std::move(p));
    } catch (const json::exception& e) {
      throw InvalidTemplate(std::string("template file: ") + e.what());
    }
  }
  return out;
}

std::vector<PatternTemplate> load_templates(const std::filesystem::path& file) {
  return parse_templates(read(file));
}

std::vector<TestCase> generate_truth_tests(const std::vector<MappingEntry>& mapping,
                                           const std::vector<AntonymPair>& antonyms,
                                           const std::vector<MorphoLink>& links,
                                           const std::vector<PatternTemplate>& templates,
                                           GenerationStats* stats) {
  std::map<std::string, std::vector<const MappingEntry*>> by_synset;
  for (const auto& e : mapping) by_synset[e.synset_id].push_back(&e);

  GenerationStats local;
  std::vector<TestCase> out;
  std::set<std::string> seen;

  auto usable = [&](const std::string& synset, const PatternTemplate& t, bool check_pos) {
    std::vector<const MappingEntry*> r;
    auto it = by_synset.find(synset);
    if (it == by_synset.end()) return r;
    for (const MappingEntry* e : it->second) {
      if (!t.mapping.count(e->relation)) continue;
      if (check_pos && !t.pos.empty() && !t.pos.count(e->pos)) continue;
      r.push_back(e);
    }
    return r;
  };

  for (const auto& t : templates) {
    std::size_t n = 0;
    auto emit = [&](const std::map<std::string, std::string>& bindings, std::string source) {
      kif::Formula f = kif::parse_formula(fill(t.schema, bindings, t.id));
      if (!kif::is_closed(f) || kif::has_row_variables(f)) {
        throw InvalidTemplate("template " + t.id + " yields an open conjecture");
      }
      if (!seen.insert(canonical_key(f)).second) {
        ++local.duplicates;
        return;
      }
      out.push_back({numbered(t.id, ++n, 'T'), TestKind::TruthTest, std::move(f), t.id,
                     std::move(source)});
    };

    if (t.source == TemplateSource::Antonyms) {
      for (const auto& pair : antonyms) {
        for (const MappingEntry* a : usable(pair.a, t, true)) {
          for (const MappingEntry* b : usable(pair.b, t, true)) {
            if (t.distinct && a->sumo_concept == b->sumo_concept) continue;
            emit({{"A", a->sumo_concept}, {"B", b->sumo_concept}}, pair.a + "," + pair.b);
          }
        }
      }
    } else {
      for (const auto& link : links) {
        if (link.relation != t.link_relation) continue;
        if (!by_synset.count(link.verb_synset) || !by_synset.count(link.noun_synset)) {
          ++local.unresolved_links;
          continue;
        }
        for (const MappingEntry* v : usable(link.verb_synset, t, false)) {
          for (const MappingEntry* nn : usable(link.noun_synset, t, false)) {
            if (t.distinct && v->sumo_concept == nn->sumo_concept) continue;
            emit({{"VERB", v->sumo_concept}, {"NOUN", nn->sumo_concept}},
                 link.verb_synset + "," + link.relation + "," + link.noun_synset);
          }
        }
      }
    }
  }
  if (stats) *stats = local;
  return out;
}

kif::Formula negate(const kif::Formula& f) {
  if (f.kind() == kif::Formula::Kind::Not) return f.operands()[0];
  return kif::Formula::negation(f);
}

std::vector<TestCase> derive_falsity_tests(const std::vector<TestCase>& truth_tests) {
  std::vector<TestCase> out;
  out.reserve(truth_tests.size());
  for (const auto& t : truth_tests) {
    if (t.kind != TestKind::TruthTest) {
      throw std::invalid_argument("derive_falsity_tests: " + t.id + " is not a truth-test");
    }
    TestCase f = t;
    f.kind = TestKind::FalsityTest;
    f.conjecture = negate(t.conjecture);
    if (f.id.size() > 2 && f.id.ends_with("-T")) {
      f.id.back() = 'F';
    } else {
      f.id += "-F";
    }
    out.push_back(std::move(f));
  }
  return out;
}

std::string canonical_key(const kif::Formula& f) {
  std::vector<std::pair<std::string, std::string>> env;
  std::size_t next = 0;
  return kif::render(rename_bound(f, env, next));
}

std::string to_jsonl(const std::vector<TestCase>& tests) {
  std::string out;
  for (const auto& t : tests) {
    json j = {{"id", t.id},
              {"kind", to_string(t.kind)},
              {"conjecture", folify::to_tptp(t.conjecture)},
              {"pattern", t.pattern},
              {"source", t.source}};
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::vector<TestCase> parse_suite(std::string_view jsonl) {
  std::vector<TestCase> out;
  std::set<std::string> ids;
  std::size_t lineno = 0;
  for (auto line : io::split_lines(jsonl)) {
    ++lineno;
    if (io::trim(line).empty()) continue;
    try {
      auto j = json::parse(line);
      TestCase t{j.at("id").get<std::string>(), TestKind::TruthTest,
                 folify::parse_tptp_formula(j.at("conjecture").get<std::string>()),
                 j.value("pattern", ""), j.value("source", "")};
      const auto kind = j.at("kind").get<std::string>();
      if (kind == "falsity") {
        t.kind = TestKind::FalsityTest;
      } else if (kind != "truth") {
        throw std::invalid_argument("unknown kind '" + kind + "'");
      }
      if (!ids.insert(t.id).second) throw std::invalid_argument("duplicate id " + t.id);
      if (!kif::is_closed(t.conjecture)) throw std::invalid_argument("open conjecture");
      out.push_back(std::move(t));
    } catch (const std::exception& e) {
      throw std::invalid_argument("suite line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace ontoprobe::cq
