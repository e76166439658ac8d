#include "bdi/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include "json.hpp"
#include <ostream>

#include "bdi/cq.hpp"
#include "bdi/deliberation.hpp"
#include "bdi/mental_graph.hpp"
#include "bdi/rules.hpp"
#include "bdi/schema.hpp"
#include "bdi/temporal.hpp"
#include "bdi/turtle.hpp"
#include "bdi/vocab.hpp"

namespace bdi {

namespace {

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Graph load_graphs(const std::vector<std::string>& paths) {
  Graph merged;
  for (const auto& path : paths) {
    std::ifstream in(path);
    if (!in) throw InputError(path + ": cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
      Graph g = parse_turtle(buf.str());
      merged.insert_all(g);
      for (const auto& [k, v] : g.prefixes()) merged.prefixes().emplace(k, v);
    } catch (const TurtleError& e) {
      throw InputError(path + ": " + e.what());
    }
  }
  return merged;
}

PrefixMap display_prefixes(const Graph& g) {
  PrefixMap p = vocab::standard_prefixes();
  p["run"] = std::string(vocab::kRunNs);
  for (const auto& [k, v] : g.prefixes()) p[k] = v;
  return p;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError(path + ": cannot write file");
  out << content;
  if (!out) throw InputError(path + ": write failed");
}

std::string graph_json(const Graph& g) {
  nlohmann::ordered_json prefixes = nlohmann::ordered_json::object();
  for (const auto& [k, v] : display_prefixes(g)) prefixes[k] = v;
  nlohmann::ordered_json triples = nlohmann::ordered_json::array();
  for (const auto& t : g) triples.push_back({to_ntriples(t.subject), to_ntriples(Term(t.predicate)), to_ntriples(t.object)});
  nlohmann::ordered_json out;
  out["prefixes"] = std::move(prefixes);
  out["triples"] = std::move(triples);
  return out.dump(2) + "\n";
}

std::string report_json(const ValidationReport& r, const PrefixMap& prefixes) {
  nlohmann::ordered_json items = nlohmann::ordered_json::array();
  for (const auto& i : r.items) {
    items.push_back({{"severity", i.severity == Severity::Error ? "error" : "warning"},
                     {"code", i.code},
                     {"subject", compact(i.subject, prefixes)},
                     {"message", i.message}});
  }
  nlohmann::ordered_json out;
  out["errors"] = r.error_count();
  out["warnings"] = r.warning_count();
  out["items"] = std::move(items);
  return out.dump(2) + "\n";
}

struct Options {
  std::vector<std::string> files;
  std::string rules;
  std::string timemap;
  std::size_t max_cycles = 1000;
  std::string clock_start = "2025-01-01T00:00:00Z";
  std::string format;
  std::string out;
  std::string trace_out;
  bool parallel = false;
  std::string cq;
  std::vector<std::string> params;
  bool list = false;
  std::string entity;
  std::size_t max_nodes = 500;
};

std::optional<TimeMap> load_timemap(const std::string& path) {
  if (path.empty()) return std::nullopt;
  try {
    return TimeMap::load(path);
  } catch (const TemporalError& e) {
    throw InputError(path + ": " + e.what());
  }
}

int cmd_validate(const Options& o, std::ostream& out, const CliEnv& env) {
  const Graph g = load_graphs(o.files);
  const auto& reg = load_schema();
  const auto report = validate(materialize(g, reg), reg);
  const auto prefixes = display_prefixes(g);
  if (o.format == "json")
    out << report_json(report, prefixes);
  else
    out << format_report(report, prefixes, env.color);
  return report.clean() ? exit_code::kOk : exit_code::kValidationErrors;
}

int cmd_run(const Options& o, std::ostream& out, std::ostream& err, const CliEnv& env) {
  const auto clock = TimeInstant::try_parse(o.clock_start);
  if (!clock) {
    err << "error: --clock-start '" << o.clock_start << "' is not an xsd:dateTime\n";
    return exit_code::kUsage;
  }
  const Graph g = load_graphs(o.files);
  RuleSet rules;
  rules.prefixes = g.prefixes();
  if (!o.rules.empty()) {
    try {
      rules = read_rules_file(o.rules, g.prefixes());
    } catch (const RuleError& e) {
      throw InputError(o.rules + ": " + e.what());
    } catch (const std::runtime_error& e) {
      throw InputError(e.what());
    }
  }
  const auto timemap = load_timemap(o.timemap);

  const auto& reg = load_schema();
  const Graph closed = materialize(g, reg, nullptr, o.parallel ? Execution::Parallel : Execution::Serial);
  const auto report = validate(closed, reg);
  if (!report.clean()) {
    err << format_report(report, display_prefixes(g), env.color);
    err << "error: input has validation errors; not running\n";
    return exit_code::kValidationErrors;
  }

  KBState kb = ingest(closed, *clock);
  RunOptions opts;
  opts.max_cycles = o.max_cycles;
  opts.exec = o.parallel ? Execution::Parallel : Execution::Serial;
  opts.timemap = timemap ? &*timemap : nullptr;
  const RunResult result = run(kb, rules, opts);

  const Graph exported = export_graph(kb);
  const std::string text = o.format == "json" ? graph_json(exported) : serialize_turtle(exported);
  if (o.out.empty())
    out << text;
  else
    write_file(o.out, text);
  if (!o.trace_out.empty()) write_file(o.trace_out, trace_jsonl(kb.trace));

  err << "run: " << kb.trace.size() << " firing(s), " << to_string(result.status) << ", " << exported.size()
      << " triple(s) exported\n";
  if (result.status == RunStatus::Failed) {
    err << "error: " << result.error << "\n";
    return exit_code::kActionFailure;
  }
  return exit_code::kOk;
}

std::string usage_for(const CqTemplate& t) {
  std::string s = "usage: bdi query " + t.id + " FILE...";
  for (const auto& p : t.params) s += std::string(p.required ? " " : " [") + "--param " + p.name + "=VALUE" + (p.required ? "" : "]");
  return s;
}

int cmd_query(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.list) {
    for (const auto& t : list_templates()) {
      out << t.id << "\t" << t.question;
      for (const auto& p : t.params) out << "\t" << (p.required ? "" : "[") << p.name << (p.required ? "" : "]");
      out << "\n";
    }
    return exit_code::kOk;
  }
  if (o.cq.empty() || o.files.empty()) {
    err << "error: query needs a CQ id and at least one file (or --list)\n";
    return exit_code::kUsage;
  }
  const CqTemplate* tpl = nullptr;
  try {
    tpl = &find_template(o.cq);
  } catch (const CqError& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::kUsage;
  }

  const Graph g = load_graphs(o.files);
  const auto timemap = load_timemap(o.timemap);
  const auto& reg = load_schema();
  const Graph closed = materialize(g, reg);
  const auto prefixes = display_prefixes(g);

  try {
    CqParams params;
    for (const auto& kv : o.params) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos || eq == 0) throw CqError("parameter '" + kv + "' is not NAME=VALUE");
      const std::string name = kv.substr(0, eq);
      const auto it = std::find_if(tpl->params.begin(), tpl->params.end(), [&](const CqParam& p) { return p.name == name; });
      if (it == tpl->params.end()) throw CqError(tpl->id + " has no parameter '" + name + "'");
      params[name] = parse_param(*it, kv.substr(eq + 1), prefixes);
    }
    const auto rs = answer(tpl->id, params, closed, timemap ? &*timemap : nullptr);
    out << (o.format == "csv" ? format_csv(rs, prefixes) : format_table(rs, prefixes));
  } catch (const CqError& e) {
    err << "error: " << e.what() << "\n" << usage_for(*tpl) << "\n";
    return exit_code::kUsage;
  }
  return exit_code::kOk;
}

int cmd_explain(const Options& o, std::ostream& out, std::ostream& err) {
  const Graph g = load_graphs(o.files);
  const auto& reg = load_schema();
  const Graph closed = materialize(g, reg);
  const auto prefixes = display_prefixes(g);
  auto entity = expand_name(o.entity, prefixes);
  if (!entity && Iri::is_valid(o.entity)) entity = Iri(o.entity);
  if (!entity) {
    err << "error: cannot resolve entity '" << o.entity << "'\n";
    return exit_code::kUsage;
  }
  try {
    const auto e = explain(*entity, closed, reg, o.max_nodes);
    if (o.format == "json")
      out << explanation_json(e, prefixes);
    else if (o.format == "dot")
      out << explanation_dot(e, prefixes);
    else
      out << explanation_text(e, prefixes);
  } catch (const MentalError& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::kUsage;
  }
  return exit_code::kOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const CliEnv& env) {
  CLI::App app{"BDI ontology engine: validate, run, query and explain mental-state graphs", "bdi"};
  app.require_subcommand(1);
  Options o;

  auto* validate_cmd = app.add_subcommand("validate", "Materialize and validate Turtle files");
  validate_cmd->add_option("files", o.files, "Turtle files")->required()->check(CLI::ExistingFile);
  validate_cmd->add_option("--format", o.format, "text or json")->check(CLI::IsMember({"text", "json"}));

  auto* run_cmd = app.add_subcommand("run", "Ingest, deliberate and export");
  run_cmd->add_option("files", o.files, "Turtle files")->required()->check(CLI::ExistingFile);
  run_cmd->add_option("--rules", o.rules, "Rule file")->check(CLI::ExistingFile);
  run_cmd->add_option("--timemap", o.timemap, "Symbolic time labels")->check(CLI::ExistingFile);
  run_cmd->add_option("--max-cycles", o.max_cycles, "Upper bound on firings")->check(CLI::PositiveNumber);
  run_cmd->add_option("--clock-start", o.clock_start, "Logical clock origin (xsd:dateTime)");
  run_cmd->add_option("--format", o.format, "turtle or json")->check(CLI::IsMember({"turtle", "json"}));
  run_cmd->add_option("--out", o.out, "Export path (default: stdout)");
  run_cmd->add_option("--trace-out", o.trace_out, "Trace path (JSON lines)");
  run_cmd->add_flag("--parallel", o.parallel, "Parallel agenda matching and materialization");

  auto* query_cmd = app.add_subcommand("query", "Answer a competency question");
  query_cmd->add_option("cq", o.cq, "CQ1 .. CQ18");
  query_cmd->add_option("files", o.files, "Turtle files")->check(CLI::ExistingFile);
  query_cmd->add_option("--param", o.params, "NAME=VALUE (repeatable)");
  query_cmd->add_option("--timemap", o.timemap, "Symbolic time labels")->check(CLI::ExistingFile);
  query_cmd->add_option("--format", o.format, "table or csv")->check(CLI::IsMember({"table", "csv"}));
  query_cmd->add_flag("--list", o.list, "List the competency questions");

  auto* explain_cmd = app.add_subcommand("explain", "Derivation tree of a mental entity");
  explain_cmd->add_option("files", o.files, "Turtle files")->required()->check(CLI::ExistingFile);
  explain_cmd->add_option("--entity", o.entity, "IRI or prefixed name")->required();
  explain_cmd->add_option("--format", o.format, "text, json or dot")->check(CLI::IsMember({"text", "json", "dot"}));
  explain_cmd->add_option("--max-nodes", o.max_nodes, "Node cap")->check(CLI::PositiveNumber);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return exit_code::kOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return exit_code::kOk;
  } catch (const CLI::ParseError& e) {
    const bool missing_file = e.what() && std::string(e.what()).find("File does not exist") != std::string::npos;
    err << "error: " << e.what() << "\n";
    if (missing_file) return exit_code::kInputError;
    err << app.help();
    return exit_code::kUsage;
  }

  try {
    if (validate_cmd->parsed()) return cmd_validate(o, out, env);
    if (run_cmd->parsed()) return cmd_run(o, out, err, env);
    if (query_cmd->parsed()) return cmd_query(o, out, err);
    if (explain_cmd->parsed()) return cmd_explain(o, out, err);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::kInputError;
  }
  return exit_code::kUsage;
}

}  // namespace bdi
