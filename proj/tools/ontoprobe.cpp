#include <cstdlib>
#include <iostream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "ontoprobe/analytics/report.hpp"
#include "ontoprobe/cq/generate.hpp"
#include "ontoprobe/eval/campaign.hpp"
#include "ontoprobe/folify/tptp.hpp"
#include "ontoprobe/folify/translate.hpp"
#include "ontoprobe/io.hpp"
#include "ontoprobe/kif/analysis.hpp"
#include "ontoprobe/mini/prover.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace ontoprobe;

namespace {

// Bad input; reported with exit code 1.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

fs::path workdir() {
  const char* env = std::getenv("ONTOPROBE_WORKDIR");
  return env && *env ? fs::path(env) : fs::current_path();
}

fs::path resolve_out(const std::string& given, const std::string& fallback) {
  return given.empty() ? workdir() / fallback : fs::path(given);
}

void require_file(const fs::path& p, const char* what) {
  if (!fs::is_regular_file(p)) throw InputError(std::string(what) + " not found: " + p.string());
}

std::vector<double> parse_limits(const std::string& text) {
  std::vector<double> out;
  for (auto part : io::split(text, ',')) {
    auto t = io::trim(part);
    if (t.empty()) continue;
    try {
      std::size_t used = 0;
      double v = std::stod(std::string(t), &used);
      if (used != t.size()) throw std::invalid_argument("trailing");
      out.push_back(v);
    } catch (const std::exception&) {
      throw InputError("bad time limit '" + std::string(t) + "'");
    }
  }
  if (out.empty()) throw InputError("no time limits given");
  return out;
}

fs::path sibling(const fs::path& p, const std::string& suffix) {
  fs::path s = p;
  s.replace_extension();
  return s.string() + suffix;
}

// --- translate -------------------------------------------------------------

struct TranslateArgs {
  std::vector<std::string> inputs;
  std::string layer_map;
  std::string output;
  std::size_t max_row_arity = folify::kDefaultMaxRowArity;
};

int cmd_translate(const TranslateArgs& a) {
  std::map<std::string, folify::Layer> layers;
  if (!a.layer_map.empty()) {
    require_file(a.layer_map, "layer map");
    try {
      auto doc = json::parse(io::read_file(a.layer_map));
      for (const auto& [file, layer] : doc.at("files").items()) {
        auto l = folify::parse_layer(layer.get<std::string>());
        if (!l) throw InputError("unknown layer '" + layer.get<std::string>() + "' for " + file);
        layers[file] = *l;
      }
    } catch (const json::exception& e) {
      throw InputError(std::string("layer map: ") + e.what());
    }
  }
  if (a.max_row_arity == 0) throw InputError("--max-row-arity must be positive");

  std::vector<folify::SourceStatement> statements;
  for (const auto& in : a.inputs) {
    require_file(in, "input");
    const std::string base = fs::path(in).filename().string();
    folify::Layer layer = folify::Layer::TopLevel;
    if (auto it = layers.find(base); it != layers.end()) {
      layer = it->second;
    } else if (!layers.empty()) {
      throw InputError("layer map has no entry for " + base);
    }
    try {
      for (auto& st : kif::parse_suo_kif(io::read_file(in))) statements.push_back({std::move(st), layer, base});
    } catch (const kif::ParseError& e) {
      throw InputError(base + ": " + e.what());
    }
  }

  const fs::path out = resolve_out(a.output, "axioms.p");
  folify::TranslateOptions opt;
  opt.max_row_arity = a.max_row_arity;
  auto t = folify::translate_ontology(statements, opt);

  json report;
  json census = json::object();
  auto counts = folify::census(statements);
  for (auto l : folify::kAllLayers) {
    const auto& c = counts[static_cast<std::size_t>(l)];
    census[folify::to_string(l)] = {{"unit", c.unit}, {"general", c.general}};
  }
  json translated = json::object();
  for (auto l : folify::kAllLayers) {
    auto c = t.axioms.counts(l);
    translated[folify::to_string(l)] = {{"unit", c.unit}, {"general", c.general}};
  }
  json dropped = json::array();
  for (const auto& d : t.dropped) {
    dropped.push_back({{"origin", d.origin}, {"line", d.location.line}, {"reason", d.reason}, {"text", d.text}});
  }
  report = {{"census", census},
            {"axioms", translated},
            {"total", {{"unit", t.axioms.totals().unit}, {"general", t.axioms.totals().general}}},
            {"non_logical", t.non_logical},
            {"dropped", dropped},
            {"max_row_arity", a.max_row_arity}};

  io::write_file(out, folify::emit_tptp(t.axioms, std::nullopt));
  io::write_file(sibling(out, ".metadata.json"), analytics::metadata_to_json(analytics::metadata_from(t.axioms)));
  io::write_file(sibling(out, ".translation.json"), report.dump(2) + "\n");
  std::cerr << "translated " << statements.size() << " statements into " << t.axioms.size() << " axioms ("
            << t.dropped.size() << " dropped, " << t.non_logical << " non-logical) -> " << out.string() << "\n";
  return 0;
}

// --- generate --------------------------------------------------------------

struct GenerateArgs {
  std::string mapping, antonyms, morpholinks, templates, output;
};

int cmd_generate(const GenerateArgs& a) {
  require_file(a.mapping, "mapping");
  if (!a.antonyms.empty()) require_file(a.antonyms, "antonyms");
  if (!a.morpholinks.empty()) require_file(a.morpholinks, "morpholinks");
  if (!a.templates.empty()) require_file(a.templates, "templates");
  if (a.antonyms.empty() && a.morpholinks.empty()) throw InputError("need --antonyms and/or --morpholinks");

  std::vector<cq::PatternTemplate> templates;
  try {
    templates = a.templates.empty() ? cq::default_templates() : cq::load_templates(a.templates);
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  auto report_skipped = [](const std::string& file, const auto& loaded) {
    for (const auto& s : loaded.skipped) std::cerr << file << ":" << s.line << ": skipped: " << s.reason << "\n";
    return loaded.items;
  };
  auto mapping = report_skipped(a.mapping, cq::load_mapping(a.mapping));
  auto antonyms = a.antonyms.empty() ? std::vector<cq::AntonymPair>{}
                                     : report_skipped(a.antonyms, cq::load_antonyms(a.antonyms));
  auto links = a.morpholinks.empty() ? std::vector<cq::MorphoLink>{}
                                     : report_skipped(a.morpholinks, cq::load_morpholinks(a.morpholinks));

  cq::GenerationStats stats;
  auto truth = cq::generate_truth_tests(mapping, antonyms, links, templates, &stats);
  auto suite = truth;
  for (auto& f : cq::derive_falsity_tests(truth)) suite.push_back(std::move(f));

  const fs::path out = resolve_out(a.output, "suite.jsonl");
  io::write_file(out, cq::to_jsonl(suite));
  std::cerr << "generated " << truth.size() << " truth-tests and " << truth.size() << " falsity-tests ("
            << stats.duplicates << " duplicates, " << stats.unresolved_links << " unresolved links) -> "
            << out.string() << "\n";
  return 0;
}

// --- evaluate --------------------------------------------------------------

struct EvaluateArgs {
  std::string suite, axioms, prover = "builtin", prover_args, limits = "60,120,300,600", output;
  std::size_t workers = std::max(1u, std::thread::hardware_concurrency());
  bool reuse = false;
  bool no_raw = false;
  double grace_s = prover::kDefaultGraceSeconds;
  double steps_per_second = 1000;
};

int cmd_evaluate(const EvaluateArgs& a) {
  require_file(a.suite, "suite");
  require_file(a.axioms, "axioms");
  eval::CampaignConfig config;
  config.limits_s = parse_limits(a.limits);
  config.workers = a.workers;
  config.reuse = a.reuse;
  config.keep_raw = !a.no_raw;
  config.output_dir = resolve_out(a.output, "campaign");
  if (a.prover == "builtin") {
    eval::BuiltinProver b;
    b.steps_per_second = a.steps_per_second;
    b.grace_s = a.grace_s;
    config.prover = b;
  } else if (a.prover.rfind("exec:", 0) == 0 && a.prover.size() > 5) {
    prover::ProverConfig p;
    p.executable = a.prover.substr(5);
    if (!a.prover_args.empty()) p.arguments = a.prover_args;
    p.grace_s = a.grace_s;
    config.prover = p;
  } else {
    throw InputError("--prover must be 'builtin' or 'exec:<path>'");
  }
  if (auto err = config.validate(); !err.empty()) throw InputError(err);

  std::vector<cq::TestCase> suite;
  eval::CampaignInput input;
  try {
    suite = cq::parse_suite(io::read_file(a.suite));
    input = eval::make_input(io::read_file(a.axioms), std::move(suite));
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }

  eval::CampaignSummary summary;
  std::size_t done = 0;
  const std::size_t total = input.tests.size() * config.limits_s.size();
  auto records = eval::run_campaign(input, config, &summary, [&](const eval::RunRecord& r) {
    ++done;
    if (r.has_flag("error")) std::cerr << "warning: " << r.test_id << " @" << r.limit_s << "s: prover error\n";
    if (done % 50 == 0 || done == total) std::cerr << "\r" << done << "/" << total << std::flush;
  });
  if (total) std::cerr << "\n";
  std::size_t proofs = 0;
  for (const auto& r : records) proofs += r.verdict == prover::VerdictKind::ProofFound;
  std::cerr << records.size() << " records (" << summary.executed << " run, " << summary.resumed << " resumed, "
            << summary.reused << " reused), " << proofs << " proofs -> " << config.output_dir.string() << "\n";
  return 0;
}

// --- analyze / report ------------------------------------------------------

struct AnalyzeArgs {
  std::string records, metadata, limits, output;
  std::size_t threshold = 10;
};

int cmd_analyze(const AnalyzeArgs& a) {
  fs::path records = a.records;
  fs::path campaign_meta;
  if (fs::is_directory(records)) {
    campaign_meta = records / "metadata.json";
    records /= "records.jsonl";
  }
  require_file(records, "records");
  require_file(a.metadata, "axiom metadata");
  if (a.threshold == 0) throw InputError("--threshold must be at least 1");

  std::vector<double> limits;
  if (!a.limits.empty()) {
    limits = parse_limits(a.limits);
  } else if (!campaign_meta.empty() && fs::is_regular_file(campaign_meta)) {
    try {
      limits = json::parse(io::read_file(campaign_meta)).at("limits_s").get<std::vector<double>>();
    } catch (const json::exception& e) {
      throw InputError("campaign metadata: " + std::string(e.what()));
    }
  }
  std::vector<eval::RunRecord> rs;
  analytics::AxiomMetadata meta;
  try {
    rs = eval::parse_records(io::read_file(records));
    meta = analytics::parse_metadata(io::read_file(a.metadata));
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  analytics::EvaluationReport report;
  try {
    report = analytics::aggregate_report(rs, meta, limits, a.threshold);
  } catch (const analytics::UnknownAxiomName& e) {
    throw InputError(e.what());
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  const fs::path out = resolve_out(a.output, "report");
  for (const auto& f : analytics::emit_outputs(report, out)) std::cerr << "wrote " << f.string() << "\n";
  return 0;
}

int cmd_report(const std::string& path) {
  fs::path p = path;
  if (fs::is_directory(p)) p /= "report.json";
  require_file(p, "report");
  try {
    std::cout << analytics::render_text(analytics::report_from_json(io::read_file(p)));
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  return 0;
}

// --- prove -----------------------------------------------------------------

int cmd_prove(const std::string& file, std::size_t steps, double wall_s) {
  require_file(file, "problem");
  mini::Problem p;
  try {
    p = mini::load_problem(io::read_file(file));
  } catch (const std::invalid_argument& e) {
    throw InputError(e.what());
  }
  mini::SaturationBudget budget;
  budget.max_steps = steps;
  budget.wall_limit_s = wall_s;
  if (!budget.valid()) throw InputError("budget must be positive");
  auto r = mini::saturate(std::move(p.axioms), std::move(p.negated_conjecture), p.signature, budget);
  std::cout << mini::format_result(r, p.signature, fs::path(file).filename().string());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ontoprobe: ontology competency-question evaluation"};
  app.set_version_flag("--version", std::string(ONTOPROBE_VERSION));
  app.require_subcommand(1);

  TranslateArgs ta;
  auto* translate = app.add_subcommand("translate", "translate SUO-KIF files into a TPTP axiom file");
  translate->add_option("inputs", ta.inputs, "SUO-KIF files")->required();
  translate->add_option("--layer-map", ta.layer_map, "JSON manifest {\"files\": {name: layer}}");
  translate->add_option("-o,--output", ta.output, "TPTP output (.p)");
  translate->add_option("--max-row-arity", ta.max_row_arity, "row variable expansion bound")->capture_default_str();

  GenerateArgs ga;
  auto* generate = app.add_subcommand("generate", "generate truth- and falsity-tests");
  generate->add_option("--mapping", ga.mapping, "WordNet-to-concept mapping (TSV)")->required();
  generate->add_option("--antonyms", ga.antonyms, "antonym pairs (TSV)");
  generate->add_option("--morpholinks", ga.morpholinks, "morphosemantic links (CSV)");
  generate->add_option("--templates", ga.templates, "pattern templates (JSON)");
  generate->add_option("-o,--output", ga.output, "suite output (.jsonl)");

  EvaluateArgs ea;
  auto* evaluate = app.add_subcommand("evaluate", "run every test at every time limit");
  evaluate->add_option("--suite", ea.suite, "suite (.jsonl)")->required();
  evaluate->add_option("--axioms", ea.axioms, "TPTP axiom file")->required();
  evaluate->add_option("--prover", ea.prover, "builtin | exec:<path>")->capture_default_str();
  evaluate->add_option("--prover-args", ea.prover_args, "argument template with {limit_s} and {problem}");
  evaluate->add_option("--limits", ea.limits, "comma-separated seconds")->capture_default_str();
  evaluate->add_option("--workers", ea.workers, "parallel prover runs")->capture_default_str();
  evaluate->add_flag("--reuse", ea.reuse, "carry proofs found at a smaller limit to larger ones");
  evaluate->add_flag("--no-raw", ea.no_raw, "do not keep raw prover output");
  evaluate->add_option("--grace", ea.grace_s, "seconds past the limit before the run is killed")->capture_default_str();
  evaluate->add_option("--steps-per-second", ea.steps_per_second, "builtin prover budget")->capture_default_str();
  evaluate->add_option("-o,--output", ea.output, "campaign directory");

  AnalyzeArgs aa;
  auto* analyze = app.add_subcommand("analyze", "aggregate run records into report files");
  analyze->add_option("records", aa.records, "records.jsonl or campaign directory")->required();
  analyze->add_option("--metadata", aa.metadata, "axiom metadata JSON from translate")->required();
  analyze->add_option("--limits", aa.limits, "comma-separated seconds (default: from the campaign)");
  analyze->add_option("--threshold", aa.threshold, "usefulness threshold")->capture_default_str();
  analyze->add_option("-o,--output", aa.output, "report directory");

  std::string report_path;
  auto* report = app.add_subcommand("report", "print a report as text");
  report->add_option("report", report_path, "report.json or report directory")->required();

  std::string prove_file;
  std::size_t prove_steps = 100'000;
  double prove_wall = 60;
  auto* prove = app.add_subcommand("prove", "run the builtin prover on one TPTP problem");
  prove->add_option("problem", prove_file, "TPTP file")->required();
  prove->add_option("--steps", prove_steps, "given-clause step budget")->capture_default_str();
  prove->add_option("--wall", prove_wall, "wall-clock limit in seconds")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    if (e.get_exit_code() != 0) std::cerr << app.help();
    return e.get_exit_code() == 0 ? 0 : 1;
  }

  try {
    if (*translate) return cmd_translate(ta);
    if (*generate) return cmd_generate(ga);
    if (*evaluate) return cmd_evaluate(ea);
    if (*analyze) return cmd_analyze(aa);
    if (*report) return cmd_report(report_path);
    if (*prove) return cmd_prove(prove_file, prove_steps, prove_wall);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}
