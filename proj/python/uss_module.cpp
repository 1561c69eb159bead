#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "uss/analysis.hpp"
#include "uss/bench.hpp"
#include "uss/enumerator.hpp"
#include "uss/scheduler.hpp"
#include "uss/solver.hpp"
#include "uss/workbench.hpp"

namespace py = pybind11;

// 128-bit sums travel as plain Python ints.
namespace pybind11::detail {
template <>
struct type_caster<unsigned __int128> {
  PYBIND11_TYPE_CASTER(unsigned __int128, const_name("int"));

  bool load(handle src, bool) {
    if (!PyLong_Check(src.ptr())) return false;
    object value = reinterpret_borrow<object>(src);
    if (value < int_(0)) return false;
    object hi = value.attr("__rshift__")(64);
    if (hi.attr("bit_length")().cast<int>() > 64) return false;
    object lo = value.attr("__and__")(int_(~std::uint64_t{0}));
    this->value = (static_cast<unsigned __int128>(hi.cast<std::uint64_t>()) << 64) |
                  lo.cast<std::uint64_t>();
    return true;
  }

  static handle cast(unsigned __int128 v, return_value_policy, handle) {
    object hi = int_(static_cast<std::uint64_t>(v >> 64));
    object lo = int_(static_cast<std::uint64_t>(v));
    return hi.attr("__lshift__")(64).attr("__or__")(lo).release();
  }
};
}  // namespace pybind11::detail

namespace {

uss::Instance make_instance(const std::vector<uss::SumValue>& elements, uss::SumValue target) {
  uss::Instance inst{elements, target};
  inst.validate();
  return inst;
}

uss::SolverConfig make_config(int alias, bool anytime, std::optional<int> look_ahead,
                              const std::string& policy, bool parallel, bool enumerate_only) {
  uss::SolverConfig c;
  c.alias_count = alias;
  c.anytime = anytime;
  c.look_ahead = look_ahead;
  c.policy = uss::parse_split_policy(policy);
  c.parallel = parallel;
  c.enumerate_only = enumerate_only;
  return c;
}

}  // namespace

PYBIND11_MODULE(_uss, m) {
  m.doc() = "Unique subset sums: enumeration, meet-in-the-middle decision, anytime search";

  auto base = py::register_exception<uss::Error>(m, "Error");
  py::register_exception<uss::ContractViolation>(m, "ContractViolation", base);
  py::register_exception<uss::InputError>(m, "InputError", base);

  py::enum_<uss::Outcome>(m, "Outcome")
      .value("FOUND", uss::Outcome::kFound)
      .value("EXHAUSTED", uss::Outcome::kExhausted)
      .value("PAUSED", uss::Outcome::kPaused);

  py::class_<uss::Instance>(m, "Instance")
      .def(py::init(&make_instance), py::arg("elements"), py::arg("target"))
      .def_readonly("elements", &uss::Instance::elements)
      .def_readonly("target", &uss::Instance::target)
      .def_property_readonly("n", &uss::Instance::n)
      .def_property_readonly("total", &uss::Instance::total)
      .def("__repr__", [](const uss::Instance& i) {
        return "<Instance n=" + std::to_string(i.n()) + " target=" + uss::to_string(i.target) + ">";
      });

  py::class_<uss::SolutionReport>(m, "SolutionReport")
      .def_readonly("lemma_id", &uss::SolutionReport::lemma_id)
      .def_readonly("indices", &uss::SolutionReport::original_indices)
      .def_readonly("verified_sum", &uss::SolutionReport::verified_sum)
      .def_readonly("cycle_found", &uss::SolutionReport::cycle_found)
      .def_readonly("column_found", &uss::SolutionReport::column_found);

  py::class_<uss::ColumnStats>(m, "ColumnStats")
      .def_readonly("cycle", &uss::ColumnStats::cycle)
      .def_readonly("column", &uss::ColumnStats::column)
      .def_readonly("states_expanded", &uss::ColumnStats::states_expanded)
      .def_readonly("candidates_generated", &uss::ColumnStats::candidates_generated)
      .def_readonly("new_sums_admitted", &uss::ColumnStats::new_sums_admitted)
      .def_readonly("collisions_pruned", &uss::ColumnStats::collisions_pruned)
      .def_readonly("canonical_replacements", &uss::ColumnStats::canonical_replacements);

  py::class_<uss::CycleReport>(m, "CycleReport")
      .def_readonly("cycle", &uss::CycleReport::cycle)
      .def_readonly("states_expanded", &uss::CycleReport::states_expanded)
      .def_readonly("new_sums", &uss::CycleReport::new_sums)
      .def_readonly("deferrals", &uss::CycleReport::deferrals)
      .def_readonly("max_column_cost", &uss::CycleReport::max_column_cost)
      .def_readonly("wall_time", &uss::CycleReport::wall_time);

  py::class_<uss::Decision>(m, "Decision")
      .def_readonly("outcome", &uss::Decision::outcome)
      .def_readonly("solution", &uss::Decision::solution)
      .def_readonly("totals", &uss::Decision::totals)
      .def_readonly("columns", &uss::Decision::columns)
      .def_readonly("cycles", &uss::Decision::cycles)
      .def_readonly("u0", &uss::Decision::u0)
      .def_readonly("u1", &uss::Decision::u1)
      .def_readonly("alias_fallback", &uss::Decision::alias_fallback);

  py::class_<uss::ProbeReport>(m, "ProbeReport")
      .def_readonly("subsets_enumerated", &uss::ProbeReport::subsets_enumerated)
      .def_readonly("unique_sums", &uss::ProbeReport::unique_sums)
      .def_readonly("collision_rate", &uss::ProbeReport::collision_rate)
      .def_readonly("density", &uss::ProbeReport::density)
      .def_property_readonly("doubling_constant",
                             [](const uss::ProbeReport& p) {
                               return py::make_tuple(p.doubling_num, p.doubling_den);
                             })
      .def_readonly("additive_energy", &uss::ProbeReport::additive_energy)
      .def_readonly("duplicate_count", &uss::ProbeReport::duplicate_count);

  m.def(
      "solve",
      [](const uss::Instance& inst, int alias, bool anytime, std::optional<int> look_ahead,
         const std::string& policy, bool parallel) {
        py::gil_scoped_release release;
        return uss::solve(inst, make_config(alias, anytime, look_ahead, policy, parallel, false));
      },
      py::arg("instance"), py::kw_only(), py::arg("alias") = 0, py::arg("anytime") = false,
      py::arg("look_ahead") = py::none(), py::arg("policy") = "alternating",
      py::arg("parallel") = false);

  m.def("verify_solution", &uss::verify_solution, py::arg("indices"), py::arg("instance"),
        py::arg("target"));
  m.def("compute_lookahead", &uss::compute_lookahead, py::arg("n"), py::arg("total_sum"));

  m.def(
      "enumerate_split",
      [](const std::vector<uss::SumValue>& split, std::optional<int> max_k) {
        const int k = max_k ? *max_k : static_cast<int>(split.size());
        const uss::EnumerationResult r = uss::enumerate_split(split, k);
        py::list out;
        for (const auto& e : r.memo.sorted_entries())
          out.append(py::make_tuple(e.sum(), uss::SubsetMask{e.mask, static_cast<int>(split.size())}
                                                 .indices()));
        return out;
      },
      py::arg("split"), py::arg("max_k") = py::none(),
      "Memo contents as (sum, canonical split indices), sorted by sum.");

  m.def("probe", &uss::litmus_probe, py::arg("elements"), py::arg("k_cap") = 4);
  m.def("analyze", &uss::analyze, py::arg("elements"), py::arg("k_cap") = 4);
  m.def("density", &uss::density, py::arg("elements"));
  m.def("additive_energy", &uss::additive_energy, py::arg("elements"));

  m.def(
      "generate",
      [](const std::string& kind, int n, int w, std::uint64_t seed, int duplicates,
         int sequences, int length, uss::SumValue stride, uss::SumValue target) {
        uss::GenSpec spec;
        spec.kind = uss::parse_gen_kind(kind);
        spec.n = n;
        spec.w = w;
        spec.seed = seed;
        spec.duplicates_per_half = duplicates;
        spec.sequences_per_half = sequences;
        spec.sequence_length = length;
        spec.sequence_stride = stride;
        spec.target = target;
        return uss::generate(spec);
      },
      py::arg("kind") = "DISSOCIATIVE", py::arg("n") = 16, py::arg("w") = 32,
      py::arg("seed") = 1, py::arg("duplicates") = 0, py::arg("sequences") = 1,
      py::arg("length") = 3, py::arg("stride") = 0, py::arg("target") = 0);

  m.def("oracle_decide", &uss::oracle_decide, py::arg("elements"), py::arg("target"));
  m.def("oracle_sumset", &uss::oracle_sumset, py::arg("elements"));
  m.def(
      "clear_bits",
      [](const uss::Instance& inst, int b) {
        const uss::ClearedInstance c = uss::clear_bits(inst, b);
        return py::make_tuple(c.instance, c.error_bound);
      },
      py::arg("instance"), py::arg("bits"), "Returns (shifted instance, error bound).");
  m.def("read_instance", &uss::read_instance_file, py::arg("path"));

  py::class_<uss::Search>(m, "Search")
      .def(py::init([](const uss::Instance& inst, int alias, std::optional<int> look_ahead,
                       const std::string& policy, bool enumerate_only) {
             return uss::Search(inst, make_config(alias, true, look_ahead, policy, false,
                                                  enumerate_only));
           }),
           py::arg("instance"), py::kw_only(), py::arg("alias") = 0,
           py::arg("look_ahead") = py::none(), py::arg("policy") = "alternating",
           py::arg("enumerate_only") = false)
      .def(
          "run_cycles",
          [](uss::Search& s, std::optional<int> max_cycles) {
            py::gil_scoped_release release;
            return s.run_cycles(max_cycles);
          },
          py::arg("max_cycles") = py::none())
      .def("add_element", &uss::Search::add_element_online, py::arg("value"),
           py::arg("split") = uss::kAutoSplit)
      .def("save", &uss::Search::save_file, py::arg("path"))
      .def_static(
          "load", [](const std::string& path) { return uss::Search::load_file(path); },
          py::arg("path"))
      .def_property_readonly("look_ahead", &uss::Search::look_ahead)
      .def_property_readonly("current_cycle", &uss::Search::current_cycle)
      .def_property_readonly("finished", &uss::Search::finished)
      .def_property_readonly("instance", &uss::Search::instance);
}
