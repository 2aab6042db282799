#include "pisdim/cli.hpp"

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "pisdim/constructions.hpp"
#include "pisdim/error.hpp"
#include "pisdim/metric_dim.hpp"
#include "pisdim/pis_graph.hpp"
#include "pisdim/verify.hpp"

namespace pisdim {
namespace {

struct CliConfig {
  std::string ring;
  std::string graph_path;
  std::string format;
  std::string family;
  std::string params;
  std::string out_path = "-";
  double budget_seconds = 600;
  std::uint64_t exact_cap = 100;
  unsigned threads = std::max(1U, std::thread::hardware_concurrency());
  bool json = false;
};

std::string read_input(const std::string& path, std::istream& in) {
  if (path == "-") return {std::istreambuf_iterator<char>(in), {}};
  std::ifstream f(path);
  if (!f) throw Error(ErrorKind::MalformedDocument, "cannot open '" + path + "'");
  return {std::istreambuf_iterator<char>(f), {}};
}

std::string join_labels(const Graph& g, const std::vector<std::size_t>& set) {
  std::string s = "{";
  for (std::size_t i = 0; i < set.size(); ++i) s += (i ? ", " : "") + g.label(set[i]);
  return s + "}";
}

std::chrono::milliseconds to_budget(double seconds) {
  return std::chrono::milliseconds(static_cast<std::int64_t>(seconds * 1000.0));
}

std::string cmd_build(const CliConfig& cfg) {
  const auto g = build(parse_ring_spec(cfg.ring));
  const auto format = cfg.json ? std::string("json") : cfg.format;
  if (format == "dot") return export_dot(g);
  if (format == "json") return export_json(g);
  if (!format.empty() && format != "text") throw Error(ErrorKind::UnknownFormat, "build supports dot, json, text");
  std::ostringstream os;
  const auto d = all_pairs_distances(g.graph, cfg.threads);
  os << "ring " << g.spec.canonical() << ": " << g.graph.order() << " vertices, " << g.graph.edge_count()
     << " edges, diameter " << diameter(d) << (is_connected(d) ? "" : " (disconnected)") << "\n";
  for (std::size_t u = 0; u < g.graph.order(); ++u) os << "  " << u << "  " << g.graph.label(u) << "\n";
  for (auto [u, v] : g.graph.edges()) os << "  " << g.graph.label(u) << " -- " << g.graph.label(v) << "\n";
  return os.str();
}

std::string cmd_dim(const CliConfig& cfg, std::istream& in) {
  Graph graph;
  std::string title;
  if (!cfg.ring.empty()) {
    auto g = build(parse_ring_spec(cfg.ring));
    title = "ring " + g.spec.canonical();
    graph = std::move(g.graph);
  } else {
    auto imported = import_graph_json(read_input(cfg.graph_path, in));
    title = imported.ring ? "ring " + imported.ring->canonical() : "graph";
    graph = std::move(imported.graph);
  }
  const auto d = all_pairs_distances(graph, cfg.threads);
  const auto report = metric_dimension_exact(graph, d, {to_budget(cfg.budget_seconds), cfg.threads});
  if (cfg.json) return report_json(report, graph) + "\n";
  std::ostringstream os;
  os << title << ": " << graph.order() << " vertices\n";
  if (report.status == SolveStatus::InfeasibleBudget) {
    os << "metric dimension: unknown (infeasible_budget)\n";
  } else {
    os << "metric dimension: " << report.size << " (" << status_name(report.status) << ")\n";
    os << "resolving set: " << join_labels(graph, report.set) << "\n";
  }
  os << "bounds: twin=" << report.twin_bound << " info=" << report.info_bound << "\n";
  os << "search: " << report.nodes << " nodes, " << report.millis << " ms\n";
  return os.str();
}

std::string cmd_construct(const CliConfig& cfg) {
  const auto spec = parse_ring_spec(cfg.ring);
  const auto w = construct_resolving(spec);
  std::optional<bool> resolving;
  if (spec.vertex_count() <= kMaxBuildVertices) {
    const auto g = build(spec);
    resolving = static_cast<bool>(is_resolving(all_pairs_distances(g.graph, cfg.threads), w.indices(spec)));
  }
  if (cfg.json) {
    nlohmann::json doc;
    doc["theorem"] = theorem_name(w.theorem);
    doc["set"] = nlohmann::json::array();
    for (const auto& m : w.members) doc["set"].push_back(spec.label(m));
    doc["size"] = w.members.size();
    doc["resolving"] = resolving ? nlohmann::json(*resolving) : nlohmann::json(nullptr);
    return doc.dump() + "\n";
  }
  std::ostringstream os;
  os << "theorem: " << theorem_name(w.theorem) << "\nsize: " << w.members.size() << "\nset:";
  for (const auto& m : w.members) os << "\n  " << spec.label(m);
  os << "\nresolving: " << (resolving ? (*resolving ? "verified" : "FAILED") : "not checked (graph too large)")
     << "\n";
  return os.str();
}

std::string cmd_formula(const CliConfig& cfg) {
  const auto spec = parse_ring_spec(cfg.ring);
  const auto f = formula_metric_dim(spec);
  if (!f) throw Error(ErrorKind::NotCovered, spec.canonical() + " matches no closed-form case");
  if (cfg.json)
    return nlohmann::json{{"value", f->value}, {"theorem", theorem_name(f->theorem)}, {"note", f->hypothesis_note}}
               .dump() +
           "\n";
  return std::to_string(f->value) + " (" + std::string(theorem_name(f->theorem)) + ": " + f->hypothesis_note + ")\n";
}

std::string cmd_verify(const CliConfig& cfg, bool counterexamples) {
  VerifyOptions opts{to_budget(cfg.budget_seconds), cfg.exact_cap, cfg.threads};
  const auto rows = counterexamples ? run_counterexamples(opts) : run_family(parse_family(cfg.family), cfg.params, opts);
  const auto format = cfg.json ? ReportFormat::Json : parse_report_format(cfg.format.empty() ? "md" : cfg.format);
  return emit_report(rows, format);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Prime ideal sum graphs of finite chain-ring products and their metric dimension", "pisdim"};
  app.require_subcommand(1);
  CliConfig cfg;

  auto add_out = [&](CLI::App* sub) {
    sub->add_option("--out,-o", cfg.out_path, "Output path ('-' for standard output)");
    sub->add_flag("--json", cfg.json, "Machine-readable JSON output");
    sub->add_option("--threads", cfg.threads, "Worker threads")->check(CLI::PositiveNumber);
  };

  auto* build_cmd = app.add_subcommand("build", "Build PIS(R) and print it");
  build_cmd->add_option("--ring,-r", cfg.ring, "Ring, e.g. \"Z4 x Z2\"")->required();
  build_cmd->add_option("--format,-f", cfg.format, "text, dot or json")->check(CLI::IsMember({"text", "dot", "json"}));
  add_out(build_cmd);

  auto* dim_cmd = app.add_subcommand("dim", "Exact metric dimension");
  auto* ring_opt = dim_cmd->add_option("--ring,-r", cfg.ring, "Ring specification");
  auto* graph_opt = dim_cmd->add_option("--graph,-g", cfg.graph_path, "Graph JSON file ('-' for standard input)");
  ring_opt->excludes(graph_opt);
  dim_cmd->add_option("--budget", cfg.budget_seconds, "Time limit in seconds")->check(CLI::NonNegativeNumber);
  add_out(dim_cmd);

  auto* construct_cmd = app.add_subcommand("construct", "Resolving set from the closed-form construction");
  construct_cmd->add_option("--ring,-r", cfg.ring, "Ring specification")->required();
  add_out(construct_cmd);

  auto* formula_cmd = app.add_subcommand("formula", "Closed-form metric dimension");
  formula_cmd->add_option("--ring,-r", cfg.ring, "Ring specification")->required();
  add_out(formula_cmd);

  auto* verify_cmd = app.add_subcommand("verify", "Compare formula, construction and exact solver over a family");
  verify_cmd->add_option("--family", cfg.family, "reduced, three, chain or custom")
      ->required()
      ->check(CLI::IsMember({"reduced", "three", "chain", "custom", "custom-list"}));
  verify_cmd->add_option("--params", cfg.params, "Family parameters");
  verify_cmd->add_option("--format,-f", cfg.format, "csv, json or md")->check(CLI::IsMember({"csv", "json", "md"}));
  verify_cmd->add_option("--budget", cfg.budget_seconds, "Per-instance time limit in seconds")
      ->check(CLI::NonNegativeNumber);
  verify_cmd->add_option("--cap", cfg.exact_cap, "Skip the exact stage above this many vertices");
  add_out(verify_cmd);

  auto* counter_cmd = app.add_subcommand("counterexamples", "Rings violating the mixed side condition");
  counter_cmd->add_option("--format,-f", cfg.format, "csv, json or md")->check(CLI::IsMember({"csv", "json", "md"}));
  counter_cmd->add_option("--budget", cfg.budget_seconds, "Per-instance time limit in seconds")
      ->check(CLI::NonNegativeNumber);
  add_out(counter_cmd);

  std::vector<std::string> argv_storage{"pisdim"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_storage) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
    if (dim_cmd->parsed() && cfg.ring.empty() && cfg.graph_path.empty())
      throw CLI::ValidationError("dim", "exactly one of --ring or --graph is required");
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  try {
    std::string result;
    if (build_cmd->parsed()) result = cmd_build(cfg);
    else if (dim_cmd->parsed()) result = cmd_dim(cfg, in);
    else if (construct_cmd->parsed()) result = cmd_construct(cfg);
    else if (formula_cmd->parsed()) result = cmd_formula(cfg);
    else if (verify_cmd->parsed()) result = cmd_verify(cfg, false);
    else result = cmd_verify(cfg, true);

    if (cfg.out_path == "-") {
      out << result;
    } else {
      std::ofstream f(cfg.out_path);
      if (!f) throw Error(ErrorKind::MalformedDocument, "cannot write '" + cfg.out_path + "'");
      f << result;
    }
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace pisdim
