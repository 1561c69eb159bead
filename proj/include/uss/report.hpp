#pragma once

#include <iosfwd>
#include <vector>

#include <json.hpp>

#include "uss/enumerator.hpp"
#include "uss/solver.hpp"
#include "uss/workbench.hpp"

namespace uss {

// Sums are written as base-10 strings: they may exceed 64 bits.
nlohmann::json to_json(const SolutionReport& r);
nlohmann::json to_json(const Decision& d);
nlohmann::json to_json(const ProbeReport& p);
nlohmann::json to_json(const GenSpec& g);

inline constexpr const char* kColumnCsvHeader = "cycle,column,expanded,generated,admitted,pruned,replaced";

void write_column_csv_header(std::ostream& out);
void write_column_csv_row(std::ostream& out, const ColumnStats& s);
void write_column_csv(std::ostream& out, const std::vector<ColumnStats>& columns);
void write_cycle_csv(std::ostream& out, const std::vector<CycleReport>& cycles, bool timing);

}  // namespace uss
