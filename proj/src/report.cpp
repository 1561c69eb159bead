#include "uss/report.hpp"

#include <ostream>

namespace uss {

using nlohmann::json;

json to_json(const SolutionReport& r) {
  return json{{"lemma", r.lemma_id},
              {"indices", r.original_indices},
              {"sum", to_string(r.verified_sum)},
              {"cycle", r.cycle_found},
              {"column", r.column_found}};
}

json to_json(const Decision& d) {
  json out{{"outcome", to_string(d.outcome)},
           {"u0", d.u0},
           {"u1", d.u1},
           {"expanded", d.totals.states_expanded},
           {"generated", d.totals.candidates_generated},
           {"admitted", d.totals.new_sums_admitted},
           {"pruned", d.totals.collisions_pruned},
           {"replaced", d.totals.canonical_replacements},
           {"cycles", d.cycles.size()},
           {"alias_fallback", d.alias_fallback}};
  out["solution"] = d.solution ? to_json(*d.solution) : json(nullptr);
  return out;
}

json to_json(const ProbeReport& p) {
  return json{{"subsets_enumerated", p.subsets_enumerated},
              {"unique_sums", p.unique_sums},
              {"collision_rate", p.collision_rate},
              {"density", p.density},
              {"doubling_constant", {p.doubling_num, p.doubling_den}},
              {"additive_energy", p.additive_energy},
              {"duplicate_count", p.duplicate_count}};
}

json to_json(const GenSpec& g) {
  return json{{"kind", to_string(g.kind)},
              {"n", g.n},
              {"w", g.w},
              {"seed", g.seed},
              {"duplicates_per_half", g.duplicates_per_half},
              {"sequences_per_half", g.sequences_per_half},
              {"sequence_length", g.sequence_length},
              {"sequence_stride", to_string(g.sequence_stride)},
              {"target", to_string(g.target)}};
}

void write_column_csv_header(std::ostream& out) { out << kColumnCsvHeader << '\n'; }

void write_column_csv_row(std::ostream& out, const ColumnStats& s) {
  out << s.cycle << ',' << s.column << ',' << s.states_expanded << ',' << s.candidates_generated
      << ',' << s.new_sums_admitted << ',' << s.collisions_pruned << ','
      << s.canonical_replacements << '\n';
}

void write_column_csv(std::ostream& out, const std::vector<ColumnStats>& columns) {
  write_column_csv_header(out);
  for (const ColumnStats& s : columns) write_column_csv_row(out, s);
}

void write_cycle_csv(std::ostream& out, const std::vector<CycleReport>& cycles, bool timing) {
  out << "cycle,expanded,new_sums,deferrals,max_column_cost" << (timing ? ",wall_time" : "") << '\n';
  for (const CycleReport& c : cycles) {
    out << c.cycle << ',' << c.states_expanded << ',' << c.new_sums << ',' << c.deferrals << ','
        << c.max_column_cost;
    if (timing) out << ',' << c.wall_time;
    out << '\n';
  }
}

}  // namespace uss
