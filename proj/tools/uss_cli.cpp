// Command-line workbench. Exit status: 0 found (or success), 1 exhausted,
// 2 input or usage error, 3 paused with work left.
#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "uss/analysis.hpp"
#include "uss/bench.hpp"
#include "uss/report.hpp"
#include "uss/scheduler.hpp"
#include "uss/solver.hpp"
#include "uss/workbench.hpp"

using namespace uss;
using nlohmann::json;

namespace {

constexpr int kExitFound = 0;
constexpr int kExitExhausted = 1;
constexpr int kExitError = 2;
constexpr int kExitPaused = 3;

struct Globals {
  std::uint64_t seed = 1;
  int alias = 0;
  bool anytime = false;
  std::string policy = "alternating";
  std::string stats;
  std::string checkpoint;
  std::string resume;
  bool parallel = false;
  int clear_bits = 0;
  std::optional<int> max_cycles;
  std::optional<int> look_ahead;
  bool timing = false;
};

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot open for writing: " + path);
  return out;
}

SolverConfig solver_config(const Globals& g) {
  if (g.parallel && g.anytime) throw InputError("--parallel cannot be combined with --anytime");
  SolverConfig c;
  c.alias_count = g.alias;
  c.anytime = g.anytime;
  c.look_ahead = g.look_ahead;
  c.policy = parse_split_policy(g.policy);
  c.parallel = g.parallel;
  return c;
}

int exit_for(Outcome o) {
  switch (o) {
    case Outcome::kFound: return kExitFound;
    case Outcome::kExhausted: return kExitExhausted;
    case Outcome::kPaused: return kExitPaused;
  }
  return kExitError;
}

int cmd_solve(const Globals& g, const std::string& instance_path) {
  SolverConfig config = solver_config(g);
  std::optional<Search> search;
  json extra = json::object();
  if (!g.resume.empty()) {
    if (!instance_path.empty() || g.clear_bits != 0)
      throw InputError("--resume takes the instance from the checkpoint");
    search.emplace(Search::load_file(g.resume, config));
  } else {
    if (instance_path.empty()) throw InputError("solve needs --instance or --resume");
    Instance inst = read_instance_file(instance_path);
    if (g.clear_bits > 0) {
      const ClearedInstance c = clear_bits(inst, g.clear_bits);
      inst = c.instance;
      extra["clear_bits"] = g.clear_bits;
      extra["error_bound"] = to_string(c.error_bound);
    }
    if (inst.n() < 2) {
      const Decision d = solve(inst, config);
      std::cout << to_json(d).dump(2) << '\n';
      return exit_for(d.outcome);
    }
    search.emplace(inst, config);
  }
  const Decision d = search->run_cycles(g.max_cycles);
  if (!g.stats.empty()) {
    auto out = open_out(g.stats);
    write_column_csv(out, d.columns);
    auto cycles = open_out(g.stats + ".cycles.csv");
    write_cycle_csv(cycles, d.cycles, g.timing);
  }
  if (d.outcome == Outcome::kPaused && !g.checkpoint.empty()) {
    search->save_file(g.checkpoint);
    extra["checkpoint"] = g.checkpoint;
  }
  json out = to_json(d);
  out["look_ahead"] = search->look_ahead();
  out["cycle"] = search->current_cycle();
  for (auto& [key, value] : extra.items()) out[key] = value;
  std::cout << out.dump(2) << '\n';
  return exit_for(d.outcome);
}

int cmd_probe(const std::string& instance_path, int k_cap) {
  const Instance inst = read_instance_file(instance_path);
  json out;
  out["instance"] = to_json(analyze(inst.elements, k_cap));
  if (inst.n() >= 2) {
    const SplitPair p = split_instance(inst, SplitPolicy::kAlternating);
    out["l0"] = to_json(litmus_probe(p.l0, k_cap));
    out["l1"] = to_json(litmus_probe(p.l1, k_cap));
  }
  std::cout << out.dump(2) << '\n';
  return kExitFound;
}

int cmd_enumerate(const Globals& g, const std::string& instance_path, int split,
                  std::optional<int> max_k, const std::string& memo_out) {
  const Instance inst = read_instance_file(instance_path);
  inst.validate();
  const SplitPair p = split_instance(inst, parse_split_policy(g.policy));
  const auto& half = split == 0 ? p.l0 : p.l1;
  const int m = static_cast<int>(half.size());
  const int k = max_k.value_or(m / 2);
  const AliasPlan plan = plan_alias(half, g.alias, split);
  const EnumerationResult r = enumerate_split(half, k, {}, &plan);
  const SumValue total = split == 0 ? p.sum_l0 : p.sum_l1;
  json out{{"split", split},
           {"m", m},
           {"max_k", k},
           {"alias", g.alias},
           {"memo_size", r.memo.size()},
           {"expanded", r.totals.states_expanded},
           {"generated", r.totals.candidates_generated},
           {"pruned", r.totals.collisions_pruned},
           {"replaced", r.totals.canonical_replacements}};
  if (g.alias == 0 && 2 * k >= m - 1) {
    out["sumset"] = sumset_size_from_memo(r.memo, total);
    out["unique"] = folded_unique_count(r.memo, total);
  }
  if (!g.stats.empty()) {
    auto csv = open_out(g.stats);
    write_column_csv(csv, r.columns);
  }
  if (!memo_out.empty()) {
    auto csv = open_out(memo_out);
    csv << "sum,mask\n";
    for (const auto& e : r.memo.sorted_entries()) csv << to_string(e.sum()) << ',' << e.mask << '\n';
  }
  std::cout << out.dump(2) << '\n';
  return kExitFound;
}

int cmd_bench(const Globals& g, const std::string& suite_name, const std::string& out_dir, int cycles_n) {
  const BenchSuite suite = parse_bench_suite(suite_name);
  std::filesystem::create_directories(out_dir);
  const std::filesystem::path dir(out_dir);
  std::vector<TableRow> rows;
  std::string name;
  switch (suite) {
    case BenchSuite::kTable1: rows = run_table1(g.seed); name = "table1.csv"; break;
    case BenchSuite::kTable2: rows = run_table2(g.seed); name = "table2.csv"; break;
    case BenchSuite::kTable3: rows = run_table3(g.seed); name = "table3.csv"; break;
    case BenchSuite::kCycles: {
      const Decision d = run_cycle_bench(cycles_n, g.seed);
      auto cycles = open_out((dir / "cycles.csv").string());
      write_cycle_csv(cycles, d.cycles, g.timing);
      auto columns = open_out((dir / "columns.csv").string());
      write_column_csv(columns, d.columns);
      std::cout << (dir / "cycles.csv").string() << '\n' << (dir / "columns.csv").string() << '\n';
      return kExitFound;
    }
  }
  auto out = open_out((dir / name).string());
  write_table_csv(out, rows, g.timing);
  std::cout << (dir / name).string() << '\n';
  return kExitFound;
}

int cmd_generate(const Globals& g, GenSpec spec, const std::string& kind, const std::string& target,
                 const std::string& stride, const std::string& out_path) {
  spec.kind = parse_gen_kind(kind);
  spec.seed = g.seed;
  if (!target.empty()) spec.target = parse_sum(target);
  if (!stride.empty()) spec.sequence_stride = parse_sum(stride);
  const Instance inst = generate(spec);
  {
    auto out = open_out(out_path);
    write_instance(out, inst);
  }
  auto sidecar = open_out(out_path + ".json");
  sidecar << to_json(spec).dump(2) << '\n';
  std::cout << out_path << '\n';
  return kExitFound;
}

int cmd_oracle(const std::string& instance_path) {
  const Instance inst = read_instance_file(instance_path);
  const bool yes = oracle_decide(inst.elements, inst.target);
  std::cout << json{{"decision", yes}}.dump() << '\n';
  return yes ? kExitFound : kExitExhausted;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Unique-subset-sum solver workbench"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "RNG seed for generate and bench");
  app.add_option("--alias", g.alias, "Alias pairs per half")->check(CLI::Range(0, 2));
  app.add_flag("--anytime", g.anytime, "Cycle-sliced search with look-ahead deferral");
  app.add_option("--policy", g.policy, "Split policy: alternating or balanced");
  app.add_option("--stats", g.stats, "Per-column stats CSV path");
  app.add_option("--checkpoint", g.checkpoint, "Write a checkpoint here when the search pauses");
  app.add_option("--resume", g.resume, "Resume from a checkpoint file");
  app.add_flag("--parallel", g.parallel, "Two workers, one per split (column mode)");
  app.add_option("--clear-bits", g.clear_bits, "Drop this many low bits before solving")->check(CLI::NonNegativeNumber);
  app.add_option("--max-cycles", g.max_cycles, "Pause after this many cycles")->check(CLI::NonNegativeNumber);
  app.add_option("--look-ahead", g.look_ahead, "Override the computed look-ahead")->check(CLI::NonNegativeNumber);
  app.add_flag("--timing", g.timing, "Add wall-time columns to CSV output");

  std::string instance_path;
  auto* solve_cmd = app.add_subcommand("solve", "Decide an instance");
  solve_cmd->add_option("--instance,-i", instance_path, "Instance file");

  int k_cap = 4;
  auto* probe_cmd = app.add_subcommand("probe", "Litmus probe and structural measures");
  probe_cmd->add_option("--instance,-i", instance_path, "Instance file")->required();
  probe_cmd->add_option("--k-cap", k_cap, "Largest subset size probed")->check(CLI::Range(1, 8));

  int split = 0;
  std::optional<int> max_k;
  std::string memo_out;
  auto* enum_cmd = app.add_subcommand("enumerate", "Enumerate the unique sums of one split");
  enum_cmd->add_option("--instance,-i", instance_path, "Instance file")->required();
  enum_cmd->add_option("--split", split, "Split 0 or 1")->check(CLI::Range(0, 1));
  enum_cmd->add_option("--max-k", max_k, "Largest subset size (default floor(m/2))")->check(CLI::NonNegativeNumber);
  enum_cmd->add_option("--memo-out", memo_out, "Write memo entries as CSV");

  std::string suite, out_dir = ".";
  int cycles_n = 32;
  auto* bench_cmd = app.add_subcommand("bench", "Regenerate an experiment as CSV");
  bench_cmd->add_option("suite", suite, "TABLE1, TABLE2, TABLE3 or CYCLES")->required();
  bench_cmd->add_option("--out-dir,-o", out_dir, "Output directory");
  bench_cmd->add_option("--n", cycles_n, "Instance size for CYCLES")->check(CLI::Range(2, 128));

  GenSpec spec;
  std::string kind = "dissociative", target, stride, out_path;
  auto* gen_cmd = app.add_subcommand("generate", "Write a generated instance and its spec");
  gen_cmd->add_option("--kind", kind, "dissociative, dense, duplicates or progressions");
  gen_cmd->add_option("--n", spec.n, "Element count");
  gen_cmd->add_option("--w", spec.w, "Bit width");
  gen_cmd->add_option("--duplicates", spec.duplicates_per_half, "Duplicates per half");
  gen_cmd->add_option("--sequences", spec.sequences_per_half, "Progressions per half");
  gen_cmd->add_option("--length", spec.sequence_length, "Progression length");
  gen_cmd->add_option("--stride", stride, "Progression stride (default random)");
  gen_cmd->add_option("--target", target, "Target (default: planted subset sum)");
  gen_cmd->add_option("--out,-o", out_path, "Instance file to write")->required();

  auto* oracle_cmd = app.add_subcommand("oracle", "Reference DP decision");
  oracle_cmd->add_option("--instance,-i", instance_path, "Instance file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitError;
  }

  try {
    if (g.resume.empty() && !solve_cmd->parsed() && (!g.checkpoint.empty() || g.max_cycles))
      throw InputError("--checkpoint and --max-cycles apply to solve only");
    if (solve_cmd->parsed()) return cmd_solve(g, instance_path);
    if (probe_cmd->parsed()) return cmd_probe(instance_path, k_cap);
    if (enum_cmd->parsed()) return cmd_enumerate(g, instance_path, split, max_k, memo_out);
    if (bench_cmd->parsed()) return cmd_bench(g, suite, out_dir, cycles_n);
    if (gen_cmd->parsed()) return cmd_generate(g, spec, kind, target, stride, out_path);
    if (oracle_cmd->parsed()) return cmd_oracle(instance_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
