#include "app.hpp"

#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "decosim/csv.hpp"
#include "decosim/error.hpp"
#include "decosim/gossip.hpp"
#include "decosim/netselect.hpp"
#include "decosim/pan.hpp"
#include "decosim/scenario.hpp"
#include "decosim/version.hpp"

namespace decosim::app {
namespace {

constexpr const char* kOutDirEnv = "DECOSIM_OUT_DIR";

struct Options {
  std::string scenario_path;
  std::string out_path;
  std::string graph_out_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  bool quiet = false;
};

void add_common_options(CLI::App* cmd, Options& opts) {
  cmd->add_option("--scenario", opts.scenario_path, "Scenario config file (JSON)")
      ->required();
  cmd->add_option("--out", opts.out_path,
                  "Output CSV path (default: $" + std::string(kOutDirEnv) +
                      "/<subcommand>.csv or ./<subcommand>.csv)");
  cmd->add_option("--seed", opts.seed, "Master seed override");
  cmd->add_option("--trials", opts.trials, "Trial count override");
  cmd->add_flag("--quiet", opts.quiet, "Suppress the summary line");
}

std::string resolve_out_path(const Options& opts, const std::string& subcommand) {
  if (!opts.out_path.empty()) return opts.out_path;
  if (const char* dir = std::getenv(kOutDirEnv); dir && *dir) {
    return std::string(dir) + "/" + subcommand + ".csv";
  }
  return subcommand + ".csv";
}

Scenario load(const Options& opts) {
  Scenario scenario = load_scenario(opts.scenario_path);
  if (opts.seed) scenario.seed = *opts.seed;
  if (opts.trials) scenario.trials = *opts.trials;
  return scenario;
}

// Binary mode so the bytes written are exactly the bytes on disk.
std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw SimError(ErrorCode::io_error, "cannot open output file '" + path + "'");
  }
  return out;
}

void stamp(CsvWriter& csv, const Scenario& scenario) {
  csv.comment("seed=" + std::to_string(scenario.seed) + " version=" + kVersion);
}

int cmd_pan(const Options& opts, std::ostream& out) {
  const Scenario scenario = load(opts);
  if (scenario.organisms.empty()) {
    throw ScenarioError(ErrorCode::scenario_schema, "organisms",
                        "'pan' needs at least one organism");
  }
  const std::string path = resolve_out_path(opts, "pan");
  std::ofstream file = open_out(path);
  CsvWriter csv(file);
  stamp(csv, scenario);
  csv.header({"user", "record", "field1", "field2", "field3"});

  std::size_t components = 0, warnings = 0;
  for (const auto& organism : scenario.organisms) {
    const PanConfig config = configure(organism.devices, scenario.weights);
    for (const auto& edge : config.organism.overlay.edges) {
      csv.row({organism.user, "edge", edge.a, edge.b, to_string(edge.tech)});
    }
    for (std::size_t i = 0; i < config.components.size(); ++i) {
      const auto& component = config.components[i];
      std::string members;
      for (const auto& id : component.members) {
        if (!members.empty()) members += ';';
        members += id;
      }
      csv.row({organism.user, "component", CsvWriter::num(i), members, ""});
      csv.row({organism.user, "coordinator", CsvWriter::num(i), component.coordinator, ""});
      csv.row({organism.user, "gateway", CsvWriter::num(i),
               component.gateway.value_or(""), ""});
    }
    for (const auto& [code, detail] : config.warnings) {
      csv.row({organism.user, "warning", to_string(code), detail, ""});
    }
    components += config.components.size();
    warnings += config.warnings.size();
  }
  if (!file.good()) {
    throw SimError(ErrorCode::io_error, "write failed for '" + path + "'");
  }
  if (!opts.quiet) {
    out << "pan: " << scenario.organisms.size() << " organism(s), " << components
        << " component(s), " << warnings << " warning(s) -> " << path << "\n";
  }
  return 0;
}

int cmd_handover(const Options& opts, std::ostream& out) {
  const Scenario scenario = load(opts);
  if (!scenario.handover) {
    throw ScenarioError(ErrorCode::scenario_schema, "handover",
                        "'handover' needs a handover section");
  }
  const DeviceProfile* device = nullptr;
  for (const auto& organism : scenario.organisms) {
    for (const auto& dev : organism.devices) {
      if (dev.id == scenario.handover->device) device = &dev;
    }
  }
  if (!device) {
    throw ScenarioError(ErrorCode::scenario_bad_reference, "handover.device",
                        "unknown device '" + scenario.handover->device + "'");
  }

  const HandoverTrace trace =
      simulate_handover(device->interfaces, scenario.handover->duration,
                        scenario.handover->period, scenario.weights,
                        scenario.handover->penalty_ms, device->battery_level);

  const std::string path = resolve_out_path(opts, "handover");
  std::ofstream file = open_out(path);
  CsvWriter csv(file);
  stamp(csv, scenario);
  csv.header({"tick", "iface", "delivered", "latency_ms", "handover_flag"});
  for (const auto& packet : trace.packets) {
    csv.row({CsvWriter::num(packet.tick), packet.iface,
             packet.delivered ? "1" : "0", CsvWriter::num(packet.latency_ms),
             packet.handover ? "1" : "0"});
  }
  if (!file.good()) {
    throw SimError(ErrorCode::io_error, "write failed for '" + path + "'");
  }
  if (!opts.quiet) {
    out << "handover: " << trace.packets.size() << " packet(s), " << trace.drop_count()
        << " drop(s), " << trace.handovers.size() << " handover(s) -> " << path << "\n";
  }
  return 0;
}

int cmd_gossip(const Options& opts, std::ostream& out) {
  const Scenario scenario = load(opts);
  if (!scenario.overlay || !scenario.gossip) {
    throw ScenarioError(ErrorCode::scenario_schema, "gossip",
                        "'gossip' needs overlay and gossip sections");
  }
  RngStream graph_rng = derive_stream(scenario.seed, 1);
  const OverlayGraph graph = build_graph(*scenario.overlay, graph_rng);
  if (!opts.graph_out_path.empty()) {
    std::ofstream graph_file = open_out(opts.graph_out_path);
    write_edge_list(graph, graph_file);
    if (!graph_file.good()) {
      throw SimError(ErrorCode::io_error,
                     "write failed for '" + opts.graph_out_path + "'");
    }
  }
  RngStream run_rng = derive_stream(scenario.seed, 2);
  const MultiMetrics result =
      run_multi(graph, scenario.gossip->origins, scenario.gossip->params, run_rng);

  const std::string path = resolve_out_path(opts, "gossip");
  std::ofstream file = open_out(path);
  CsvWriter csv(file);
  stamp(csv, scenario);
  double coverage_sum = 0.0;
  for (std::size_t m = 0; m < result.per_message.size(); ++m) {
    const Metrics& metrics = result.per_message[m];
    coverage_sum += metrics.coverage;
    csv.comment("msg=" + std::to_string(m) +
                " origin=" + std::to_string(scenario.gossip->origins[m]) +
                " coverage=" + CsvWriter::num(metrics.coverage) +
                " mean_hops=" + CsvWriter::num(metrics.mean_hops) +
                " duplicates=" + std::to_string(metrics.duplicates));
  }
  csv.header({"msg", "origin", "node", "first_receipt_hop"});
  for (std::size_t m = 0; m < result.per_message.size(); ++m) {
    const Metrics& metrics = result.per_message[m];
    for (int node = 0; node < metrics.nodes; ++node) {
      csv.row({CsvWriter::num(m), CsvWriter::num(scenario.gossip->origins[m]),
               CsvWriter::num(node), CsvWriter::num(metrics.first_hop[node])});
    }
  }
  if (!file.good()) {
    throw SimError(ErrorCode::io_error, "write failed for '" + path + "'");
  }
  if (!opts.quiet) {
    out << "gossip: " << result.per_message.size() << " message(s), mean coverage "
        << CsvWriter::num(coverage_sum / result.per_message.size()) << " -> " << path
        << "\n";
  }
  return 0;
}

int cmd_sweep(const Options& opts, std::ostream& out) {
  const Scenario scenario = load(opts);
  if (!scenario.overlay || !scenario.sweep) {
    throw ScenarioError(ErrorCode::scenario_schema, "sweep",
                        "'sweep' needs overlay and sweep sections");
  }
  SweepSpec spec = make_sweep_spec(scenario);
  if (opts.trials) spec.trials = *opts.trials;
  const std::vector<SweepRow> rows = sweep(spec);

  const std::string path = resolve_out_path(opts, "sweep");
  std::ofstream file = open_out(path);
  CsvWriter csv(file);
  stamp(csv, scenario);
  csv.header({"protocol", "n", "topology", "param_p", "param_f", "ttl", "cache", "trials",
              "mean_coverage", "sd_coverage", "mean_hops", "sd_hops", "mean_duplicates"});
  for (const auto& row : rows) {
    csv.row({to_string(row.protocol), CsvWriter::num(row.n), to_string(row.topology),
             row.p ? CsvWriter::num(*row.p) : "",
             row.fanout ? CsvWriter::num(*row.fanout) : "", CsvWriter::num(row.ttl),
             CsvWriter::num(row.cache), CsvWriter::num(row.trials),
             row.failed ? "" : CsvWriter::num(row.mean_coverage),
             row.failed ? "" : CsvWriter::num(row.sd_coverage),
             row.failed ? "" : CsvWriter::num(row.mean_hops),
             row.failed ? "" : CsvWriter::num(row.sd_hops),
             row.failed ? "" : CsvWriter::num(row.mean_duplicates)});
  }
  if (!file.good()) {
    throw SimError(ErrorCode::io_error, "write failed for '" + path + "'");
  }
  if (!opts.quiet) {
    std::size_t failed = 0;
    for (const auto& row : rows) failed += row.failed ? 1 : 0;
    out << "sweep: " << rows.size() << " cell(s) x " << spec.trials << " trial(s)";
    if (failed > 0) out << ", " << failed << " failed";
    out << " -> " << path << "\n";
  }
  return 0;
}

bool is_scenario_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::scenario_syntax:
    case ErrorCode::scenario_schema:
    case ErrorCode::scenario_duplicate_id:
    case ErrorCode::scenario_out_of_range:
    case ErrorCode::scenario_bad_reference:
      return true;
    default:
      return false;
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App cli{"decosim - digital ecosystem simulator", "decosim"};
  cli.require_subcommand(1);

  Options opts;
  CLI::App* pan = cli.add_subcommand("pan", "PAN auto-configuration and election");
  CLI::App* handover = cli.add_subcommand("handover", "Seamless handover trace");
  CLI::App* gossip = cli.add_subcommand("gossip", "One gossip dissemination run");
  CLI::App* sweep = cli.add_subcommand("sweep", "Gossip parameter sweep");
  for (CLI::App* cmd : {pan, handover, gossip, sweep}) {
    add_common_options(cmd, opts);
  }
  gossip->add_option("--graph-out", opts.graph_out_path,
                     "Also write the overlay as edge-list text");

  try {
    // CLI11 consumes argv-style input in reverse order.
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    cli.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << cli.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n\n" << cli.help();
    return 1;
  }

  try {
    if (pan->parsed()) return cmd_pan(opts, out);
    if (handover->parsed()) return cmd_handover(opts, out);
    if (gossip->parsed()) return cmd_gossip(opts, out);
    return cmd_sweep(opts, out);
  } catch (const SimError& e) {
    err << "error (" << to_string(e.code()) << "): " << e.what() << "\n";
    return is_scenario_code(e.code()) ? 1 : 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace decosim::app
