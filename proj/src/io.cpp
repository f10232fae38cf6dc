#include "gapdiff/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>

#include "gapdiff/error.hpp"

namespace gapdiff::io {

namespace {

[[noreturn]] void fail(const std::string& what) { throw Error("cli_toolkit", what); }

std::vector<double> number_list(const Json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array()) fail(std::string("missing array '") + key + "'");
  std::vector<double> out;
  for (const auto& v : j.at(key)) {
    if (!v.is_number()) fail(std::string("non-numeric entry in '") + key + "'");
    out.push_back(v.get<double>());
  }
  return out;
}

std::optional<double> endpoint_from_json(const Json& j) {
  if (!j.contains("endpoint")) fail("speed measure needs an 'endpoint'");
  const auto& e = j.at("endpoint");
  if (e.is_string()) {
    if (e.get<std::string>() == "inf") return std::nullopt;
    fail("endpoint must be a number or \"inf\"");
  }
  if (!e.is_number()) fail("endpoint must be a number or \"inf\"");
  return e.get<double>();
}

std::vector<SpectralAtom> atoms_from_json(const Json& j) {
  if (!j.contains("atoms") || !j.at("atoms").is_array()) fail("missing array 'atoms'");
  std::vector<SpectralAtom> atoms;
  for (const auto& a : j.at("atoms")) {
    if (!a.is_array() || a.size() != 2 || !a[0].is_number() || !a[1].is_number())
      fail("each atom must be a pair [x, lambda]");
    atoms.push_back({a[0].get<double>(), a[1].get<double>()});
  }
  return atoms;
}

}  // namespace

ChainFile chain_from_json(const Json& j) {
  if (!j.is_object()) fail("chain file must be a JSON object");
  ChainFile f;
  f.chain.states = number_list(j, "states");
  f.chain.rates = number_list(j, "rates");
  f.chain.right_probs = number_list(j, "right_probs");
  f.chain = validate_chain(std::move(f.chain));
  if (j.contains("speed_mass_at_zero")) f.speed_mass_at_zero = j.at("speed_mass_at_zero").get<double>();
  return f;
}

Json chain_to_json(const ChainSpec& chain) {
  return Json{{"states", chain.states}, {"rates", chain.rates}, {"right_probs", chain.right_probs}};
}

SpeedMeasureFile speed_measure_from_json(const Json& j) {
  if (!j.is_object()) fail("speed measure file must be a JSON object");
  SpeedMeasureFile f;
  const auto endpoint = endpoint_from_json(j);
  const bool inextensible = j.value("inextensible", false);
  if (j.contains("cutoff")) f.cutoff = j.at("cutoff").get<double>();

  if (j.contains("density")) {
    if (j.contains("atoms")) fail("speed measure is either 'atoms' or 'density', not both");
    f.measure = SpeedMeasureSpec::named_density(j.at("density").get<std::string>(), endpoint,
                                                j.value("grid_n", std::size_t{0}));
    f.measure.inextensible = inextensible;
    return f;
  }
  if (!j.contains("atoms") || !j.at("atoms").is_array()) fail("speed measure needs 'atoms' or 'density'");
  std::vector<SpeedMeasureSpec::Atom> atoms;
  for (const auto& a : j.at("atoms")) {
    if (!a.is_array() || a.size() != 2 || !a[0].is_number() || !a[1].is_number())
      fail("each atom must be a pair [position, mass]");
    atoms.push_back({a[0].get<double>(), a[1].get<double>()});
  }
  f.measure = SpeedMeasureSpec::from_atoms(std::move(atoms), endpoint, inextensible);
  return f;
}

Json spectral_measure_to_json(const SpectralMeasure& sm) {
  Json atoms = Json::array();
  for (const auto& a : sm.atoms) atoms.push_back({a.location, a.weight});
  return Json{{"atoms", atoms}};
}

SpectralMeasure spectral_measure_from_json(const Json& j) {
  SpectralMeasure sm{atoms_from_json(j)};
  sm.validate();
  return sm;
}

Json representation_to_json(const LevyRepresentation& rep) {
  Json j = spectral_measure_to_json(rep.measure);
  j["drift"] = rep.drift;
  j["rate"] = rep.excursion_rate;
  j["convention"] = to_string(rep.convention);
  return j;
}

LevyRepresentation representation_from_json(const Json& j) {
  LevyRepresentation rep;
  rep.drift = j.at("drift").get<double>();
  rep.excursion_rate = j.at("rate").get<double>();
  rep.convention = convention_from_string(j.at("convention").get<std::string>());
  rep.measure = spectral_measure_from_json(j);
  return rep;
}

Json counts_to_json(const EmpiricalSummary& summary, std::size_t replicas, double budget) {
  std::map<std::uint64_t, std::uint64_t> histogram;
  for (auto c : summary.excursion_count_by_local_time) ++histogram[c];
  Json counts = Json::object();
  for (const auto& [k, n] : histogram) counts[std::to_string(k)] = n;
  return Json{{"counts", counts},
              {"seed", summary.seed},
              {"replicas", replicas},
              {"local_time_budget", budget},
              {"excursions", summary.excursion_durations.size()}};
}

Json report_summary_to_json(const ConvergenceReport& report) {
  Json sizes = Json::array(), psi_slopes = Json::array(), density_slopes = Json::array();
  Json knight = Json::array(), drift = Json::array(), rate = Json::array(), mass = Json::array();
  Json oracle = Json::array();
  for (const auto& r : report.rows) {
    sizes.push_back(r.cells);
    psi_slopes.push_back(r.psi_slope);
    density_slopes.push_back(r.density_slope);
    knight.push_back(r.knight);
    drift.push_back(r.drift);
    rate.push_back(r.excursion_rate);
    mass.push_back(r.total_mass);
    oracle.push_back(r.oracle_discrepancy);
  }
  return Json{{"sizes", sizes},
              {"slopes", {{"psi", psi_slopes}, {"density", density_slopes}}},
              {"knight", knight},
              {"gaps", report.gaps()},
              {"gaps_strictly_decreasing", report.gaps_strictly_decreasing()},
              {"psi_monotone", report.psi_monotone_tail()},
              {"drift", drift},
              {"rate", rate},
              {"total_mass", mass},
              {"oracle_discrepancy", oracle},
              {"cutoff", report.domain_cutoff},
              {"cutoff_rule", report.cutoff_rule}};
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_xy_csv(std::ostream& os, const std::string& header, std::span<const double> x,
                  std::span<const double> y) {
  os << header << '\n';
  for (std::size_t i = 0; i < x.size(); ++i) os << format_number(x[i]) << ',' << format_number(y[i]) << '\n';
}

Spacing spacing_from_string(const std::string& s) {
  if (s == "lin" || s == "linear") return Spacing::Linear;
  if (s == "log") return Spacing::Log;
  fail("spacing must be 'lin' or 'log'");
}

std::vector<double> make_grid(double min, double max, std::size_t count, Spacing spacing) {
  if (count < 2) fail("grid needs at least 2 points");
  if (!(min > 0.0) || !(max > min) || !std::isfinite(max)) fail("grid bounds must satisfy 0 < min < max");
  std::vector<double> g(count);
  const double span = static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) {
    const double t = static_cast<double>(i) / span;
    g[i] = spacing == Spacing::Linear ? min + t * (max - min)
                                      : std::exp(std::log(min) + t * (std::log(max) - std::log(min)));
  }
  g.front() = min;
  g.back() = max;
  return g;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    fail("malformed JSON in '" + path + "': " + e.what());
  }
}

}  // namespace gapdiff::io
