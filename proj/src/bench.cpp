#include "uss/bench.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <ostream>

#include "uss/analysis.hpp"
#include "uss/enumerator.hpp"
#include "uss/scheduler.hpp"
#include "uss/workbench.hpp"

namespace uss {

namespace {

constexpr int kTableN = 48;
constexpr int kTableW = 48;

TableRow make_row(std::string label, int w, const std::vector<SumValue>& elements, int reference) {
  TableRow row;
  row.label = std::move(label);
  row.n = static_cast<int>(elements.size());
  row.w = w;
  row.density = density(elements);
  row.measure = measure_split(alternating_half(elements, 0));
  row.reference = reference;
  return row;
}

void fill_ratios(std::vector<TableRow>& rows) {
  for (TableRow& row : rows)
    if (row.reference >= 0)
      row.ratio = static_cast<double>(row.measure.unique) /
                  static_cast<double>(rows[row.reference].measure.unique);
}

}  // namespace

SplitMeasure measure_split(const std::vector<SumValue>& split) {
  const auto start = std::chrono::steady_clock::now();
  SplitMeasure out;
  out.m = static_cast<int>(split.size());
  for (SumValue v : split) out.split_total += v;
  const EnumerationResult r = enumerate_split(split, out.m / 2);
  out.raw_memo = r.memo.size();
  out.sumset = sumset_size_from_memo(r.memo, out.split_total);
  out.unique = folded_unique_count(r.memo, out.split_total);
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

BenchSuite parse_bench_suite(const std::string& name) {
  std::string up = name;
  std::transform(up.begin(), up.end(), up.begin(), [](unsigned char c) { return std::toupper(c); });
  if (up == "TABLE1") return BenchSuite::kTable1;
  if (up == "TABLE2") return BenchSuite::kTable2;
  if (up == "TABLE3") return BenchSuite::kTable3;
  if (up == "CYCLES") return BenchSuite::kCycles;
  throw InputError("unknown bench suite: " + name);
}

std::vector<TableRow> run_table1(std::uint64_t seed) {
  GenSpec spec{GenKind::kDissociative, kTableN, kTableW, seed};
  const Instance base = generate(spec);
  std::vector<TableRow> rows;
  rows.push_back(make_row("baseline", kTableW, base.elements, -1));
  for (int w : {32, 28, 24, 20, 16}) {
    const Instance shifted = clear_bits(base, kTableW - w).instance;
    rows.push_back(make_row("w=" + std::to_string(w), w, shifted.elements, 0));
  }
  fill_ratios(rows);
  return rows;
}

std::vector<TableRow> run_table2(std::uint64_t seed) {
  std::vector<TableRow> rows;
  for (int d = 0; d <= 4; ++d) {
    GenSpec spec{GenKind::kWithDuplicates, kTableN, kTableW, seed};
    spec.duplicates_per_half = d;
    const Instance inst = generate(spec);
    rows.push_back(make_row(d == 0 ? "baseline" : std::to_string(d) + " duplicate" + (d > 1 ? "s" : ""),
                            kTableW, inst.elements, d - 1));
  }
  fill_ratios(rows);
  return rows;
}

std::vector<TableRow> run_table3(std::uint64_t seed) {
  std::vector<TableRow> rows;
  GenSpec base{GenKind::kDissociative, kTableN, kTableW, seed};
  rows.push_back(make_row("baseline", kTableW, generate(base).elements, -1));
  struct Arm {
    int sequences, length, reference;
  };
  for (const Arm& arm : {Arm{1, 3, 0}, Arm{1, 4, 1}, Arm{2, 3, 0}, Arm{2, 4, 3}}) {
    GenSpec spec{GenKind::kWithProgressions, kTableN, kTableW, seed};
    spec.sequences_per_half = arm.sequences;
    spec.sequence_length = arm.length;
    rows.push_back(make_row(std::to_string(arm.sequences) + " seq - " + std::to_string(arm.length) +
                                " length",
                            kTableW, generate(spec).elements, arm.reference));
  }
  fill_ratios(rows);
  return rows;
}

Decision run_cycle_bench(int n, std::uint64_t seed) {
  GenSpec spec{GenKind::kDissociative, n, n, seed};
  const Instance inst = generate(spec);
  SolverConfig config;
  config.anytime = true;
  config.enumerate_only = true;
  Search search(inst, config);
  return search.run_cycles();
}

void write_table_csv(std::ostream& out, const std::vector<TableRow>& rows, bool timing) {
  out << "row,label,n,w,density,split_total,raw_memo,sumset,unique,reference,ratio"
      << (timing ? ",seconds" : "") << '\n';
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const TableRow& r = rows[i];
    out << i << ',' << r.label << ',' << r.n << ',' << r.w << ',' << r.density << ','
        << to_string(r.measure.split_total) << ',' << r.measure.raw_memo << ','
        << r.measure.sumset << ',' << r.measure.unique << ',' << r.reference << ',' << r.ratio;
    if (timing) out << ',' << r.measure.seconds;
    out << '\n';
  }
}

}  // namespace uss
