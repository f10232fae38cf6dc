#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gapdiff/error.hpp"
#include "gapdiff/jfraction.hpp"
#include "gapdiff/levy_measure.hpp"
#include "gapdiff/mc_simulator.hpp"
#include "gapdiff/refinement.hpp"
#include "gapdiff/spectral_measure.hpp"

namespace py = pybind11;
using namespace gapdiff;

namespace {

SpectralMeasure measure_from_pairs(const std::vector<std::pair<double, double>>& atoms) {
  SpectralMeasure sm;
  for (const auto& [x, w] : atoms) sm.atoms.push_back({x, w});
  return sm;
}

std::vector<std::pair<double, double>> measure_to_pairs(const SpectralMeasure& sm) {
  std::vector<std::pair<double, double>> out;
  for (const auto& a : sm.atoms) out.emplace_back(a.location, a.weight);
  return out;
}

}  // namespace

PYBIND11_MODULE(_gapdiff, m) {
  m.doc() = "Spectral and Monte Carlo tools for gap diffusions";

  py::register_exception<Error>(m, "GapdiffError", PyExc_ValueError);

  py::enum_<LocalTimeConvention>(m, "LocalTimeConvention")
      .value("CHAIN_UNITS", LocalTimeConvention::ChainUnits)
      .value("SPEED_UNITS", LocalTimeConvention::SpeedUnits);

  py::class_<ChainSpec>(m, "ChainSpec")
      .def(py::init([](std::vector<double> states, std::vector<double> rates, std::vector<double> right_probs) {
             return validate_chain({std::move(states), std::move(rates), std::move(right_probs)});
           }),
           py::arg("states"), py::arg("rates"), py::arg("right_probs"))
      .def_readonly("states", &ChainSpec::states)
      .def_readonly("rates", &ChainSpec::rates)
      .def_readonly("right_probs", &ChainSpec::right_probs)
      .def("__len__", &ChainSpec::size)
      .def("__eq__", [](const ChainSpec& a, const ChainSpec& b) { return a == b; })
      .def("__repr__", [](const ChainSpec& c) { return "<ChainSpec N=" + std::to_string(c.size()) + ">"; });

  py::class_<JFraction>(m, "JFraction")
      .def(py::init<std::vector<double>, std::vector<double>>(), py::arg("partial_numerators"),
           py::arg("partial_denominators"))
      .def_readonly("partial_numerators", &JFraction::partial_numerators)
      .def_readonly("partial_denominators", &JFraction::partial_denominators)
      .def("__len__", &JFraction::size);

  py::class_<LevyRepresentation>(m, "LevyRepresentation")
      .def_readonly("drift", &LevyRepresentation::drift)
      .def_readonly("excursion_rate", &LevyRepresentation::excursion_rate)
      .def_property_readonly("atoms", [](const LevyRepresentation& r) { return measure_to_pairs(r.measure); })
      .def_readonly("convention", &LevyRepresentation::convention);

  py::class_<LaplaceEstimate>(m, "LaplaceEstimate")
      .def_readonly("estimate", &LaplaceEstimate::estimate)
      .def_readonly("standard_error", &LaplaceEstimate::standard_error);

  py::class_<EmpiricalSummary>(m, "EmpiricalSummary")
      .def_readonly("excursion_durations", &EmpiricalSummary::excursion_durations)
      .def_readonly("excursion_counts", &EmpiricalSummary::excursion_count_by_local_time)
      .def_readonly("seed", &EmpiricalSummary::seed);

  m.def("first_passage_transform", &first_passage_transform, py::arg("chain"), py::arg("z"));
  m.def("jfraction_from_chain", &jfraction_from_chain, py::arg("chain"));
  m.def("approximant_eval", &approximant_eval, py::arg("jf"), py::arg("z"));

  m.def("spectrum", [](const JFraction& jf) { return measure_to_pairs(spectrum(jf)); }, py::arg("jf"),
        "Atoms (x_k, lambda_k) of the partial-fraction decomposition.");
  m.def("stieltjes_eval",
        [](const std::vector<std::pair<double, double>>& atoms, double z) {
          return stieltjes_eval(measure_from_pairs(atoms), z);
        },
        py::arg("atoms"), py::arg("z"));
  m.def("jacobi_from_atoms",
        [](const std::vector<std::pair<double, double>>& atoms) { return jacobi_from_atoms(measure_from_pairs(atoms)); },
        py::arg("atoms"));

  m.def("levy_representation",
        [](const ChainSpec& c, LocalTimeConvention conv, double m0) {
          return levy_representation(c, conv, m0);
        },
        py::arg("chain"), py::arg("convention") = LocalTimeConvention::ChainUnits, py::arg("speed_mass_at_zero") = 0.0);
  m.def("levy_density", &levy_density, py::arg("rep"), py::arg("y"));
  m.def("laplace_exponent", &laplace_exponent, py::arg("rep"), py::arg("z"));
  m.def("knight_functional", &knight_functional, py::arg("rep"));
  m.def("tail_mass", &tail_mass, py::arg("rep"), py::arg("z"));

  m.def("empirical_laplace", &empirical_laplace, py::arg("chain"), py::arg("z"), py::arg("t"),
        py::arg("replicas"), py::arg("seed"), py::arg("threads") = 1u, py::call_guard<py::gil_scoped_release>());
  m.def("simulate_replicas", &simulate_replicas, py::arg("chain"), py::arg("local_time_budget"), py::arg("replicas"),
        py::arg("seed"), py::arg("threads") = 1u, py::call_guard<py::gil_scoped_release>());

  m.def("refine",
        [](const std::string& density, double endpoint, std::vector<std::size_t> sizes) {
          RefinementPlan plan;
          plan.target = SpeedMeasureSpec::named_density(density, endpoint);
          plan.sizes = std::move(sizes);
          plan.domain_cutoff = endpoint;
          return refine(plan);
        },
        py::arg("density"), py::arg("endpoint"), py::arg("sizes"),
        "Chains discretizing a named speed density on [0, endpoint].");
  m.def("convergence_summary",
        [](const std::string& density, double endpoint, std::vector<std::size_t> sizes, std::vector<double> z_grid,
           std::vector<double> y_grid) {
          RefinementPlan plan;
          plan.target = SpeedMeasureSpec::named_density(density, endpoint);
          plan.sizes = std::move(sizes);
          plan.domain_cutoff = endpoint;
          const ConvergenceReport r = convergence_experiment(plan, z_grid, y_grid);
          py::dict out;
          py::list rows;
          for (const auto& row : r.rows) {
            py::dict d;
            d["cells"] = row.cells;
            d["psi_slope"] = row.psi_slope;
            d["density_slope"] = row.density_slope;
            d["knight"] = row.knight;
            d["gap_to_previous"] = row.gap_to_previous;
            rows.append(d);
          }
          out["rows"] = rows;
          out["gaps_strictly_decreasing"] = r.gaps_strictly_decreasing();
          return out;
        },
        py::arg("density"), py::arg("endpoint"), py::arg("sizes"), py::arg("z_grid"), py::arg("y_grid"));
}
