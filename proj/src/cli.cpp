#include "numasched/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>

#include "numasched/errors.hpp"
#include "numasched/oracle.hpp"
#include "numasched/report.hpp"
#include "numasched/sim_engine.hpp"
#include "numasched/trace_io.hpp"
#include "numasched/workload.hpp"

namespace numasched::cli {

namespace {

struct Options {
  // system
  std::optional<std::size_t> threads;
  std::size_t nodes = 4;
  std::size_t cores_per_node = 4;
  std::size_t quanta = 16;

  // workload
  std::string workload;
  std::optional<std::size_t> phases;
  WorkloadSpec synth;

  // latency
  LatencyConfig lat;
  std::vector<Cycles> grid_c2c_remote;
  std::vector<Cycles> grid_dram_remote;
  std::string grid_mode = "zip";

  // policy
  std::vector<std::string> policies;
  bool affinity = false;
  std::vector<std::string> affinity_modes{"off", "on"};

  std::vector<std::string> traces;
  std::string out;
};

void add_shared_options(CLI::App& app, Options& o) {
  app.add_option("--threads", o.threads, "Total threads N (must equal nodes * cores-per-node)");
  app.add_option("--nodes", o.nodes, "Sockets / NUMA nodes L")->capture_default_str();
  app.add_option("--cores-per-node", o.cores_per_node, "Cores per node K")->capture_default_str();
  app.add_option("--quanta", o.quanta, "Scheduling quanta Q")->capture_default_str();

  app.add_option("--workload", o.workload,
                 "gen: synth1 | synth2 | synth3; run/sweep: label for the result rows");
  app.add_option("--phases", o.phases, "Override the workload's phase count");
  app.add_option("--c2c-intra", o.synth.c2c_intra, "Transfers per in-group pair per quantum")->capture_default_str();
  app.add_option("--c2c-inter", o.synth.c2c_inter, "Transfers per cross-group pair per quantum")->capture_default_str();
  app.add_option("--dram-home", o.synth.dram_home, "Accesses per thread to its home node")->capture_default_str();
  app.add_option("--dram-other", o.synth.dram_other, "Accesses per thread to each other node")->capture_default_str();
  app.add_option("--seed", o.synth.seed, "Jitter seed")->capture_default_str();
  app.add_option("--jitter-pct", o.synth.jitter_pct, "Multiplicative jitter, +/- percent")->capture_default_str();

  app.add_option("--lat-c2c-local", o.lat.c2c_local, "Cycles")->capture_default_str();
  app.add_option("--lat-c2c-remote", o.lat.c2c_remote, "Cycles")->capture_default_str();
  app.add_option("--lat-dram-local", o.lat.dram_local, "Cycles")->capture_default_str();
  app.add_option("--lat-dram-remote", o.lat.dram_remote, "Cycles")->capture_default_str();
  app.add_option("--affinity-lines", o.lat.affinity_lines, "Cache lines lost per migration")->capture_default_str();
  app.add_option("--affinity-line-latency", o.lat.affinity_line_latency, "Cycles per lost line")
      ->capture_default_str();

  app.add_option("--policy", o.policies, "none, c2c1, c2c2, dram1, dram2 or a '+' combination; comma list for sweep")
      ->delimiter(',');
  app.add_flag("--affinity", o.affinity, "Charge the cache-affinity migration penalty");
  app.add_option("--affinity-modes", o.affinity_modes, "sweep: off,on subset")->delimiter(',');

  app.add_option("--grid-c2c-remote", o.grid_c2c_remote, "sweep: remote c2c latencies")->delimiter(',');
  app.add_option("--grid-dram-remote", o.grid_dram_remote, "sweep: remote DRAM latencies")->delimiter(',');
  app.add_option("--grid-mode", o.grid_mode, "sweep: zip (pair positionally) or cross")
      ->check(CLI::IsMember({"zip", "cross"}))
      ->capture_default_str();

  app.add_option("--trace", o.traces, "Trace file (sweep accepts several)")->delimiter(',');
  app.add_option("--out", o.out, "Output file (default: standard output)");
}

SystemConfig system_config(const Options& o) {
  SystemConfig cfg{o.nodes * o.cores_per_node, o.nodes, o.cores_per_node, o.quanta};
  if (o.threads && *o.threads != cfg.n_threads) {
    throw InvalidArgument("--threads must equal --nodes * --cores-per-node");
  }
  cfg.validate();
  return cfg;
}

void write_output(const std::string& path, std::ostream& fallback,
                  const std::function<void(std::ostream&)>& writer) {
  if (path.empty()) {
    writer(fallback);
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw InvalidArgument("cannot write " + path);
  writer(file);
  if (!file) throw InvalidArgument("failed writing " + path);
}

std::string trace_label(const Options& o, const std::string& path) {
  if (!o.workload.empty() && o.traces.size() == 1) return o.workload;
  return std::filesystem::path(path).stem().string();
}

std::size_t sweep_threads() {
  const char* env = std::getenv("NUMA_SCHED_THREADS");
  if (!env || !*env) return 0;
  std::size_t value = 0;
  const char* end = env + std::char_traits<char>::length(env);
  auto [ptr, ec] = std::from_chars(env, end, value);
  if (ec != std::errc{} || ptr != end || value == 0) {
    throw InvalidArgument("NUMA_SCHED_THREADS must be a positive integer");
  }
  return value;
}

int cmd_gen(const Options& o, std::ostream& out) {
  WorkloadSpec spec = o.synth;
  spec.config = system_config(o);
  const std::string name = o.workload.empty() ? "synth1" : o.workload;
  if (name == "synth1") {
    spec.phases = 1;
  } else if (name == "synth2") {
    spec.phases = 2;
  } else if (name == "synth3") {
    spec.phases = 4;
  } else {
    throw InvalidArgument("unknown workload '" + name + "' (expected synth1, synth2 or synth3)");
  }
  if (o.phases) spec.phases = *o.phases;
  const Trace trace = gen_trace(spec);
  write_output(o.out, out, [&](std::ostream& s) { write_trace(s, trace); });
  return kSuccess;
}

int cmd_run(const Options& o, std::ostream& out) {
  if (o.traces.size() != 1) throw InvalidArgument("run needs exactly one --trace");
  if (o.policies.size() != 1) throw InvalidArgument("run needs exactly one --policy");
  const Policy policy = Policy::parse(o.policies.front(), o.affinity);
  o.lat.validate();
  const Trace trace = read_trace_file(o.traces.front());
  const SimResult result = simulate(trace, policy, o.lat);

  write_output(o.out, out, [&](std::ostream& s) { write_quantum_csv(s, result); });
  out << summary_line(trace_label(o, o.traces.front()), policy, o.lat, result) << '\n';
  return kSuccess;
}

std::vector<LatencyConfig> latency_grid(const Options& o) {
  std::vector<Cycles> c2c = o.grid_c2c_remote;
  std::vector<Cycles> dram = o.grid_dram_remote;
  if (c2c.empty()) c2c.push_back(o.lat.c2c_remote);
  if (dram.empty()) dram.push_back(o.lat.dram_remote);

  std::vector<LatencyConfig> points;
  auto add = [&](Cycles c, Cycles d) {
    LatencyConfig lat = o.lat;
    lat.c2c_remote = c;
    lat.dram_remote = d;
    lat.validate();
    points.push_back(lat);
  };
  if (o.grid_mode == "cross" || c2c.size() == 1 || dram.size() == 1) {
    for (Cycles c : c2c) {
      for (Cycles d : dram) add(c, d);
    }
  } else {
    if (c2c.size() != dram.size()) {
      throw InvalidArgument("zip grid needs equally long --grid-c2c-remote and --grid-dram-remote lists");
    }
    for (std::size_t i = 0; i < c2c.size(); ++i) add(c2c[i], dram[i]);
  }
  return points;
}

int cmd_sweep(const Options& o, std::ostream& out) {
  if (o.traces.empty()) throw InvalidArgument("sweep needs at least one --trace");

  std::vector<std::string> names = o.policies;
  if (names.empty()) names = {"c2c1", "c2c2", "c2c1+dram2", "c2c2+dram2"};
  std::vector<bool> modes;
  if (o.affinity) {
    modes = {true};
  } else {
    for (const auto& m : o.affinity_modes) {
      if (m != "off" && m != "on") throw InvalidArgument("--affinity-modes takes off and/or on");
      modes.push_back(m == "on");
    }
  }
  if (modes.empty()) throw InvalidArgument("empty affinity mode list");

  std::vector<Policy> policies;
  for (const auto& n : names) {
    for (bool aff : modes) policies.push_back(Policy::parse(n, aff));
  }
  const std::vector<LatencyConfig> points = latency_grid(o);
  const std::size_t threads = sweep_threads();

  std::vector<SweepRow> rows;
  for (const auto& path : o.traces) {
    const Trace trace = read_trace_file(path);
    const std::string label = trace_label(o, path);
    for (const SweepCell& cell : sweep(trace, policies, points, threads)) {
      rows.push_back({label, cell.policy, cell.lat, cell.result.baseline_total, cell.result.optimized_total,
                      cell.result.improvement});
    }
  }
  write_output(o.out, out, [&](std::ostream& s) { write_sweep_csv(s, rows); });
  return kSuccess;
}

int cmd_oracle(const Options& o, std::ostream& out) {
  if (o.traces.size() != 1) throw InvalidArgument("oracle needs exactly one --trace");
  o.lat.validate();
  const Trace trace = read_trace_file(o.traces.front());
  const auto checks = verify_trace(trace, o.lat);
  write_output(o.out, out, [&](std::ostream& s) { write_oracle_report(s, checks); });
  return kSuccess;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"ccNUMA thread scheduling simulator", "numa_sched"};
  app.set_config("--config", "", "Flat key=value settings file; command-line flags take precedence");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.require_subcommand(1);
  add_shared_options(app, o);

  auto* gen = app.add_subcommand("gen", "Generate a synthetic trace");
  auto* run_cmd = app.add_subcommand("run", "Simulate one policy over a trace");
  auto* sweep_cmd = app.add_subcommand("sweep", "Simulate policies over a latency grid");
  auto* oracle = app.add_subcommand("oracle", "Compare heuristics with exhaustive search");
  for (auto* sub : {gen, run_cmd, sweep_cmd, oracle}) sub->fallthrough();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == static_cast<int>(CLI::ExitCodes::Success)) {
      app.exit(e, out, err);
      return kSuccess;
    }
    err << "numa_sched: " << e.what() << '\n';
    return kUsageError;
  }

  try {
    if (gen->parsed()) return cmd_gen(o, out);
    if (run_cmd->parsed()) return cmd_run(o, out);
    if (sweep_cmd->parsed()) return cmd_sweep(o, out);
    return cmd_oracle(o, out);
  } catch (const ParseError& e) {
    err << "numa_sched: " << e.what() << '\n';
    return kInputFormatError;
  } catch (const BoundsError& e) {
    err << "numa_sched: " << e.what() << '\n';
    return kBoundsError;
  } catch (const Error& e) {
    err << "numa_sched: " << e.what() << '\n';
    return kUsageError;
  }
}

}  // namespace numasched::cli
