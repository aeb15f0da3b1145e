#include "ontoprobe/analytics/report.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <sstream>
#include <json.hpp>

#include "ontoprobe/io.hpp"

namespace ontoprobe::analytics {

namespace {

using json = nlohmann::json;

std::int64_t round_div(std::int64_t p, std::int64_t q) {
  if (q < 0) {
    p = -p;
    q = -q;
  }
  return p >= 0 ? (2 * p + q) / (2 * q) : -((-2 * p + q) / (2 * q));
}

std::size_t index(Group g) { return static_cast<std::size_t>(g); }

std::optional<Cell> cell_of(const AxiomInfo& i) {
  const bool unit = i.kind == kif::FormulaKind::UnitClause;
  if (i.layer == folify::Layer::TopLevel) return unit ? Cell::TopUnit : Cell::TopGeneral;
  if (i.layer == folify::Layer::MidLevel) return unit ? Cell::MidUnit : Cell::MidGeneral;
  return std::nullopt;
}

const char* cell_layer(Cell c) { return c == Cell::TopUnit || c == Cell::TopGeneral ? "top" : "mid"; }
const char* cell_kind(Cell c) { return c == Cell::TopUnit || c == Cell::MidUnit ? "UC" : "GC"; }

kif::FormulaKind parse_kind(const std::string& s) {
  if (s == "UC") return kif::FormulaKind::UnitClause;
  if (s == "GC") return kif::FormulaKind::GeneralClause;
  throw std::invalid_argument("unknown clause kind '" + s + "'");
}

folify::Layer parse_layer_or_throw(const std::string& s) {
  auto l = folify::parse_layer(s);
  if (!l) throw std::invalid_argument("unknown layer '" + s + "'");
  return *l;
}

std::string num(double v) { return prover::format_limit(v); }

}  // namespace

const char* to_string(Group g) noexcept {
  switch (g) {
    case Group::All: return "all";
    case Group::Truth: return "truth";
    case Group::Falsity: return "falsity";
  }
  return "?";
}

void AxiomMetadata::add(const std::string& name, AxiomInfo i) {
  if (!info.emplace(name, i).second) throw std::invalid_argument("duplicate axiom name " + name);
  order.push_back(name);
}

AxiomMetadata metadata_from(const folify::AxiomSet& axioms) {
  AxiomMetadata m;
  for (const auto& a : axioms.axioms()) m.add(a.name, {a.layer, a.kind});
  return m;
}

std::string metadata_to_json(const AxiomMetadata& m) {
  json list = json::array();
  for (const auto& name : m.order) {
    const auto& i = m.info.at(name);
    list.push_back({{"name", name}, {"layer", folify::to_string(i.layer)}, {"kind", kif::to_string(i.kind)}});
  }
  return json{{"axioms", list}}.dump(1) + "\n";
}

AxiomMetadata parse_metadata(std::string_view json_text) {
  AxiomMetadata m;
  try {
    auto doc = json::parse(json_text);
    for (const auto& a : doc.at("axioms")) {
      m.add(a.at("name").get<std::string>(),
            {parse_layer_or_throw(a.at("layer").get<std::string>()), parse_kind(a.at("kind").get<std::string>())});
    }
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("axiom metadata: ") + e.what());
  }
  return m;
}

std::int64_t percent(std::int64_t n, std::int64_t den) {
  if (den == 0) return 0;
  return round_div(100 * n, den);
}

std::string Rational::fixed2() const {
  const std::int64_t hundredths = den ? round_div(100 * num, den) : 0;
  const std::int64_t mag = hundredths < 0 ? -hundredths : hundredths;
  char buf[48];
  std::snprintf(buf, sizeof buf, "%s%lld.%02lld", hundredths < 0 ? "-" : "",
                static_cast<long long>(mag / 100), static_cast<long long>(mag % 100));
  return buf;
}

EvaluationReport aggregate_report(const std::vector<eval::RunRecord>& records,
                                  const AxiomMetadata& metadata, std::vector<double> limits,
                                  std::size_t useful_threshold) {
  if (useful_threshold == 0) throw std::invalid_argument("usefulness threshold must be at least 1");
  if (limits.empty()) {
    std::set<double> seen;
    for (const auto& r : records) seen.insert(r.limit_s);
    limits.assign(seen.begin(), seen.end());
  }
  for (std::size_t i = 1; i < limits.size(); ++i) {
    if (limits[i] <= limits[i - 1]) throw std::invalid_argument("limits must be strictly increasing");
  }
  std::map<std::string, std::size_t> limit_index;
  for (std::size_t i = 0; i < limits.size(); ++i) limit_index[num(limits[i])] = i;

  EvaluationReport rep;
  rep.useful_threshold = useful_threshold;
  rep.axiom_total = metadata.size();
  for (const auto& [name, info] : metadata.info) {
    (info.kind == kif::FormulaKind::UnitClause ? rep.unit_total : rep.general_total)++;
    if (auto c = cell_of(info)) rep.cell_totals[static_cast<std::size_t>(*c)]++;
  }

  std::array<std::set<std::string>, 3> test_ids;
  std::vector<std::array<std::set<std::string>, 3>> used(limits.size());
  std::map<std::string, AxiomUsage> usage;
  rep.limits.resize(limits.size());
  for (std::size_t i = 0; i < limits.size(); ++i) rep.limits[i].limit_s = limits[i];
  rep.usage_limit_s = limits.empty() ? 0 : limits.back();

  for (const auto& r : records) {
    auto li = limit_index.find(num(r.limit_s));
    if (li == limit_index.end()) {
      throw std::invalid_argument("record " + r.test_id + " has unexpected limit " + num(r.limit_s));
    }
    const Group g = r.kind == cq::TestKind::TruthTest ? Group::Truth : Group::Falsity;
    test_ids[index(Group::All)].insert(r.test_id);
    test_ids[index(g)].insert(r.test_id);
    if (r.verdict != prover::VerdictKind::ProofFound) continue;
    for (const auto& name : r.used_axioms) {
      if (!metadata.info.count(name)) throw UnknownAxiomName(name);
    }
    LimitStats& ls = rep.limits[li->second];
    for (Group gg : {Group::All, g}) {
      auto& gs = ls.groups[index(gg)];
      gs.solved++;
      gs.axiom_sum += r.used_axioms.size();
      used[li->second][index(gg)].insert(r.used_axioms.begin(), r.used_axioms.end());
    }
    if (li->second + 1 == limits.size()) {
      for (const auto& name : r.used_axioms) {
        const auto& info = metadata.info.at(name);
        auto [it, fresh] = usage.try_emplace(name, AxiomUsage{name, info.layer, info.kind});
        it->second.proofs_total++;
        (g == Group::Truth ? it->second.proofs_truth : it->second.proofs_falsity)++;
      }
    }
  }

  for (Group g : kGroups) rep.tests[index(g)] = test_ids[index(g)].size();
  for (std::size_t i = 0; i < limits.size(); ++i) {
    for (Group g : kGroups) {
      auto& gs = rep.limits[i].groups[index(g)];
      const auto& set = used[i][index(g)];
      gs.distinct = set.size();
      gs.average = gs.solved ? Rational{static_cast<std::int64_t>(gs.axiom_sum),
                                        static_cast<std::int64_t>(gs.solved)}
                             : Rational{0, 1};
      for (const auto& name : set) {
        if (auto c = cell_of(metadata.info.at(name))) gs.cells[static_cast<std::size_t>(*c)]++;
      }
    }
  }
  for (auto& [name, u] : usage) rep.usage.push_back(u);

  if (!rep.limits.empty()) {
    const auto& last = rep.limits.back();
    const auto& all = last.at(Group::All);
    auto add = [&](std::string label, std::size_t n, std::size_t d) {
      rep.percentages.push_back({std::move(label), static_cast<std::int64_t>(n),
                                 static_cast<std::int64_t>(d),
                                 percent(static_cast<std::int64_t>(n), static_cast<std::int64_t>(d))});
    };
    add("solved_all", all.solved, rep.tests[0]);
    add("solved_truth", last.at(Group::Truth).solved, rep.tests[1]);
    add("solved_falsity", last.at(Group::Falsity).solved, rep.tests[2]);
    add("used_axioms", all.distinct, rep.axiom_total);
    add("unused_axioms", rep.axiom_total - all.distinct, rep.axiom_total);
    std::size_t used_unit = 0;
    for (const auto& u : rep.usage) used_unit += u.kind == kif::FormulaKind::UnitClause;
    add("used_unit", used_unit, rep.unit_total);
    add("used_general", rep.usage.size() - used_unit, rep.general_total);
    for (Cell c : kCells) {
      add(std::string("used_") + cell_layer(c) + "_" + cell_kind(c), all.cells[static_cast<std::size_t>(c)],
          rep.cell_totals[static_cast<std::size_t>(c)]);
    }
    add("useful", usefulness_histogram(rep.usage, useful_threshold).size(), rep.usage.size());
    add("useful_truth", usefulness_histogram(rep.usage, useful_threshold, true).size(), rep.usage.size());
  }
  return rep;
}

ReportSeries series(const EvaluationReport& r, std::string_view metric, Group g) {
  ReportSeries s{std::string(metric), g, {}};
  for (const auto& ls : r.limits) {
    const auto& gs = ls.at(g);
    double v = 0;
    if (metric == "solved") {
      v = static_cast<double>(gs.solved);
    } else if (metric == "distinct") {
      v = static_cast<double>(gs.distinct);
    } else if (metric == "average") {
      v = gs.average.value();
    } else {
      bool found = false;
      for (Cell c : kCells) {
        if (metric == std::string(cell_layer(c)) + "_" + cell_kind(c)) {
          v = static_cast<double>(gs.cells[static_cast<std::size_t>(c)]);
          found = true;
        }
      }
      if (!found) throw std::invalid_argument("unknown metric " + std::string(metric));
    }
    s.points.emplace_back(ls.limit_s, v);
  }
  return s;
}

std::vector<AxiomUsage> usefulness_histogram(const std::vector<AxiomUsage>& usage,
                                             std::size_t threshold, bool truth_only) {
  if (threshold == 0) throw std::invalid_argument("threshold must be at least 1");
  auto count = [truth_only](const AxiomUsage& u) { return truth_only ? u.proofs_truth : u.proofs_total; };
  std::vector<AxiomUsage> out;
  for (const auto& u : usage) {
    if (count(u) >= threshold) out.push_back(u);
  }
  std::sort(out.begin(), out.end(), [&](const AxiomUsage& a, const AxiomUsage& b) {
    if (count(a) != count(b)) return count(a) > count(b);
    return a.name < b.name;
  });
  return out;
}

std::string report_to_json(const EvaluationReport& r) {
  json limits = json::array();
  for (const auto& ls : r.limits) {
    json groups = json::object();
    for (Group g : kGroups) {
      const auto& gs = ls.at(g);
      json cells = json::object();
      for (Cell c : kCells) {
        cells[std::string(cell_layer(c)) + "_" + cell_kind(c)] = gs.cells[static_cast<std::size_t>(c)];
      }
      groups[to_string(g)] = {{"solved", gs.solved},
                              {"distinct", gs.distinct},
                              {"axiom_sum", gs.axiom_sum},
                              {"average", gs.average.fixed2()},
                              {"average_exact", {gs.average.num, gs.average.den}},
                              {"cells", cells}};
    }
    limits.push_back({{"limit_s", ls.limit_s}, {"groups", groups}});
  }
  json usage = json::array();
  for (const auto& u : r.usage) {
    usage.push_back({{"name", u.name},
                     {"layer", folify::to_string(u.layer)},
                     {"kind", kif::to_string(u.kind)},
                     {"proofs_total", u.proofs_total},
                     {"proofs_truth", u.proofs_truth},
                     {"proofs_falsity", u.proofs_falsity}});
  }
  json pct = json::array();
  for (const auto& p : r.percentages) {
    pct.push_back({{"label", p.label}, {"num", p.num}, {"den", p.den}, {"percent", p.value}});
  }
  json cell_totals = json::object();
  for (Cell c : kCells) {
    cell_totals[std::string(cell_layer(c)) + "_" + cell_kind(c)] = r.cell_totals[static_cast<std::size_t>(c)];
  }
  json doc = {{"limits", limits},
              {"tests", {{"all", r.tests[0]}, {"truth", r.tests[1]}, {"falsity", r.tests[2]}}},
              {"axioms", {{"total", r.axiom_total},
                          {"unit", r.unit_total},
                          {"general", r.general_total},
                          {"cells", cell_totals}}},
              {"usage_limit_s", r.usage_limit_s},
              {"useful_threshold", r.useful_threshold},
              {"usage", usage},
              {"percentages", pct},
              {"note", "runs are independent per limit unless the campaign used reuse mode"}};
  return doc.dump(2) + "\n";
}

EvaluationReport report_from_json(std::string_view text) {
  EvaluationReport r;
  try {
    auto doc = json::parse(text);
    for (const auto& l : doc.at("limits")) {
      LimitStats ls;
      ls.limit_s = l.at("limit_s").get<double>();
      for (Group g : kGroups) {
        const auto& j = l.at("groups").at(to_string(g));
        auto& gs = ls.groups[index(g)];
        gs.solved = j.at("solved").get<std::size_t>();
        gs.distinct = j.at("distinct").get<std::size_t>();
        gs.axiom_sum = j.at("axiom_sum").get<std::size_t>();
        gs.average = {j.at("average_exact").at(0).get<std::int64_t>(), j.at("average_exact").at(1).get<std::int64_t>()};
        for (Cell c : kCells) {
          gs.cells[static_cast<std::size_t>(c)] =
              j.at("cells").at(std::string(cell_layer(c)) + "_" + cell_kind(c)).get<std::size_t>();
        }
      }
      r.limits.push_back(ls);
    }
    const auto& t = doc.at("tests");
    r.tests = {t.at("all").get<std::size_t>(), t.at("truth").get<std::size_t>(), t.at("falsity").get<std::size_t>()};
    const auto& a = doc.at("axioms");
    r.axiom_total = a.at("total").get<std::size_t>();
    r.unit_total = a.at("unit").get<std::size_t>();
    r.general_total = a.at("general").get<std::size_t>();
    for (Cell c : kCells) {
      r.cell_totals[static_cast<std::size_t>(c)] =
          a.at("cells").at(std::string(cell_layer(c)) + "_" + cell_kind(c)).get<std::size_t>();
    }
    r.usage_limit_s = doc.at("usage_limit_s").get<double>();
    r.useful_threshold = doc.at("useful_threshold").get<std::size_t>();
    for (const auto& u : doc.at("usage")) {
      r.usage.push_back({u.at("name").get<std::string>(), parse_layer_or_throw(u.at("layer").get<std::string>()),
                         parse_kind(u.at("kind").get<std::string>()), u.at("proofs_total").get<std::size_t>(),
                         u.at("proofs_truth").get<std::size_t>(), u.at("proofs_falsity").get<std::size_t>()});
    }
    for (const auto& p : doc.at("percentages")) {
      r.percentages.push_back({p.at("label").get<std::string>(), p.at("num").get<std::int64_t>(),
                               p.at("den").get<std::int64_t>(), p.at("percent").get<std::int64_t>()});
    }
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("report: ") + e.what());
  }
  return r;
}

std::string fig_csv(const EvaluationReport& r, int figure) {
  std::string out;
  if (figure == 4) {
    out = "limit_s,layer,kind,all,truth,falsity\n";
    for (const auto& ls : r.limits) {
      for (Cell c : kCells) {
        out += num(ls.limit_s) + "," + cell_layer(c) + "," + cell_kind(c);
        for (Group g : kGroups) out += "," + std::to_string(ls.at(g).cells[static_cast<std::size_t>(c)]);
        out += "\n";
      }
    }
    return out;
  }
  if (figure < 1 || figure > 3) throw std::invalid_argument("figure must be 1..4");
  out = "limit_s,all,truth,falsity\n";
  for (const auto& ls : r.limits) {
    out += num(ls.limit_s);
    for (Group g : kGroups) {
      const auto& gs = ls.at(g);
      out += ",";
      out += figure == 1 ? std::to_string(gs.solved)
             : figure == 2 ? std::to_string(gs.distinct)
                           : gs.average.fixed2();
    }
    out += "\n";
  }
  return out;
}

std::string usage_csv(const EvaluationReport& r) {
  std::string out = "name,layer,kind,proofs_total,proofs_truth,proofs_falsity\n";
  for (const auto& u : r.usage) {
    out += u.name + "," + folify::to_string(u.layer) + "," + kif::to_string(u.kind) + "," +
           std::to_string(u.proofs_total) + "," + std::to_string(u.proofs_truth) + "," +
           std::to_string(u.proofs_falsity) + "\n";
  }
  return out;
}

std::string plot_tsv(const EvaluationReport& r) {
  std::string out = "figure\tmetric\tgroup\tlimit_s\tvalue\n";
  auto emit = [&](const char* fig, const std::string& metric) {
    for (Group g : kGroups) {
      for (const auto& ls : r.limits) {
        const auto& gs = ls.at(g);
        std::string v;
        if (metric == "solved") v = std::to_string(gs.solved);
        else if (metric == "distinct") v = std::to_string(gs.distinct);
        else if (metric == "average") v = gs.average.fixed2();
        else {
          for (Cell c : kCells) {
            if (metric == std::string(cell_layer(c)) + "_" + cell_kind(c)) {
              v = std::to_string(gs.cells[static_cast<std::size_t>(c)]);
            }
          }
        }
        out += std::string(fig) + "\t" + metric + "\t" + to_string(g) + "\t" + num(ls.limit_s) + "\t" + v + "\n";
      }
    }
  };
  emit("fig1", "solved");
  emit("fig2", "distinct");
  emit("fig3", "average");
  for (Cell c : kCells) emit("fig4", std::string(cell_layer(c)) + "_" + cell_kind(c));
  return out;
}

std::vector<std::filesystem::path> emit_outputs(const EvaluationReport& r,
                                                const std::filesystem::path& dir) {
  std::vector<std::pair<std::string, std::string>> files = {
      {"report.json", report_to_json(r)}, {"fig1.csv", fig_csv(r, 1)}, {"fig2.csv", fig_csv(r, 2)},
      {"fig3.csv", fig_csv(r, 3)},        {"fig4.csv", fig_csv(r, 4)}, {"usage.csv", usage_csv(r)},
      {"plot.tsv", plot_tsv(r)}};
  std::vector<std::filesystem::path> out;
  for (const auto& [name, content] : files) {
    io::write_file(dir / name, content);
    out.push_back(dir / name);
  }
  return out;
}

std::string render_text(const EvaluationReport& r) {
  std::ostringstream o;
  o << "tests: " << r.tests[0] << " (" << r.tests[1] << " truth, " << r.tests[2] << " falsity); axioms: "
    << r.axiom_total << " (" << r.unit_total << " UC, " << r.general_total << " GC)\n\n";
  auto table = [&](const char* title, int figure) {
    o << title << "\n";
    std::istringstream rows(fig_csv(r, figure));
    std::string line;
    while (std::getline(rows, line)) {
      std::replace(line.begin(), line.end(), ',', '\t');
      o << "  " << line << "\n";
    }
    o << "\n";
  };
  table("Solved goals", 1);
  table("Distinct axioms used in proofs", 2);
  table("Average axioms per proof", 3);
  table("Top/mid level axioms used (UC/GC)", 4);
  o << "Usage at " << num(r.usage_limit_s) << " s (threshold " << r.useful_threshold << ")\n";
  for (const auto& p : r.percentages) {
    o << "  " << p.label << ": " << p.num << "/" << p.den << " = " << p.value << "%\n";
  }
  auto top = usefulness_histogram(r.usage, r.useful_threshold);
  if (!top.empty()) {
    o << "\nAxioms used in " << r.useful_threshold << " or more proofs\n";
    for (const auto& u : top) {
      o << "  " << u.name << "\t" << u.proofs_total << " (" << u.proofs_truth << " truth)\n";
    }
  }
  return o.str();
}

}  // namespace ontoprobe::analytics
