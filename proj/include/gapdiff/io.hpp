#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "gapdiff/chain_model.hpp"
#include "gapdiff/levy_measure.hpp"
#include "gapdiff/mc_simulator.hpp"
#include "gapdiff/refinement.hpp"
#include "gapdiff/spectral_measure.hpp"

namespace gapdiff::io {

using Json = nlohmann::json;

/// Chain file: {"states": [...], "rates": [...], "right_probs": [...]} with an
/// optional "speed_mass_at_zero" used by the speed-units convention.
struct ChainFile {
  ChainSpec chain;
  std::optional<double> speed_mass_at_zero;
};

ChainFile chain_from_json(const Json& j);
Json chain_to_json(const ChainSpec& chain);

/// {"atoms": [[pos, mass], ...], "endpoint": number|"inf"} or
/// {"density": "uniform"|"linear"|"exponential", "endpoint": ..., "grid_n": ...}.
/// An optional "inextensible" flag and "cutoff" are honored.
struct SpeedMeasureFile {
  SpeedMeasureSpec measure;
  std::optional<double> cutoff;
};

SpeedMeasureFile speed_measure_from_json(const Json& j);

Json spectral_measure_to_json(const SpectralMeasure& sm);
SpectralMeasure spectral_measure_from_json(const Json& j);

/// {"drift": b, "rate": r0, "convention": ..., "atoms": [...]}
Json representation_to_json(const LevyRepresentation& rep);
LevyRepresentation representation_from_json(const Json& j);

/// {"counts": {"k": replicas with k excursions, ...}, "seed": ..., ...}
Json counts_to_json(const EmpiricalSummary& summary, std::size_t replicas, double budget);

Json report_summary_to_json(const ConvergenceReport& report);

/// 17 significant digits, round-trip exact for doubles.
std::string format_number(double v);

/// Two-column CSV with a fixed header, e.g. "y,n_y".
void write_xy_csv(std::ostream& os, const std::string& header, std::span<const double> x,
                  std::span<const double> y);

enum class Spacing { Linear, Log };
Spacing spacing_from_string(const std::string& s);

/// Grid of `count` points on [min, max]. Requires count >= 2 and, for log
/// spacing, 0 < min < max.
std::vector<double> make_grid(double min, double max, std::size_t count, Spacing spacing);

Json read_json_file(const std::string& path);

}  // namespace gapdiff::io
