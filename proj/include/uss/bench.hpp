#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "uss/core.hpp"
#include "uss/solver.hpp"

namespace uss {

// Unique-sum measurement of one split enumerated to floor(m/2).
struct SplitMeasure {
  int m = 0;
  SumValue split_total = 0;
  std::uint64_t raw_memo = 0;  // memo entries, subsets of size <= floor(m/2)
  std::uint64_t sumset = 0;    // |Sigma(split)| including 0
  std::uint64_t unique = 0;    // complement-folded count, see README
  double seconds = 0.0;
};

SplitMeasure measure_split(const std::vector<SumValue>& split);

struct TableRow {
  std::string label;
  int n = 0;
  int w = 0;
  double density = 0.0;
  SplitMeasure measure;
  int reference = -1;  // row the ratio is taken against, -1 for none
  double ratio = 0.0;
};

enum class BenchSuite { kTable1, kTable2, kTable3, kCycles };
BenchSuite parse_bench_suite(const std::string& name);

// Dissociative n=48, w=48 baseline, then w in {32, 28, 24, 20, 16} by
// right-shifting every element.
std::vector<TableRow> run_table1(std::uint64_t seed);
// Baseline, then 1..4 duplicates per half.
std::vector<TableRow> run_table2(std::uint64_t seed);
// Baseline, one 3-term and 4-term progression, two 3-term and 4-term.
std::vector<TableRow> run_table3(std::uint64_t seed);
// Anytime enumeration of a dissociative instance, one report per cycle.
Decision run_cycle_bench(int n, std::uint64_t seed);

void write_table_csv(std::ostream& out, const std::vector<TableRow>& rows, bool timing);

}  // namespace uss
