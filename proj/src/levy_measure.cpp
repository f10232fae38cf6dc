#include "gapdiff/levy_measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gapdiff/error.hpp"

namespace gapdiff {

namespace {

[[noreturn]] void fail(const std::string& what) { throw Error("levy_measure", what); }

}  // namespace

std::string to_string(LocalTimeConvention c) {
  return c == LocalTimeConvention::ChainUnits ? "chain-units" : "speed-units";
}

LocalTimeConvention convention_from_string(const std::string& s) {
  if (s == "chain" || s == "chain-units") return LocalTimeConvention::ChainUnits;
  if (s == "speed" || s == "speed-units") return LocalTimeConvention::SpeedUnits;
  fail("unknown convention '" + s + "'");
}

LevyRepresentation levy_representation(const ChainSpec& chain, const SpectralMeasure& measure,
                                       LocalTimeConvention convention, double speed_mass_at_zero) {
  const ChainSpec c = validate_chain(chain);
  LevyRepresentation rep;
  rep.measure = measure;
  rep.convention = convention;
  const double a0 = c.rates[0];
  if (convention == LocalTimeConvention::ChainUnits) {
    rep.drift = 1.0;
    rep.excursion_rate = a0;
  } else {
    if (!(speed_mass_at_zero > 0.0)) fail("speed-units convention needs a positive speed mass at 0");
    rep.drift = 2.0 * speed_mass_at_zero;
    rep.excursion_rate = 2.0 * speed_mass_at_zero * a0;
  }
  return rep;
}

LevyRepresentation levy_representation(const ChainSpec& chain, LocalTimeConvention convention,
                                       double speed_mass_at_zero) {
  return levy_representation(chain, spectrum(jfraction_from_chain(chain)), convention, speed_mass_at_zero);
}

double levy_density(const LevyRepresentation& rep, double y) {
  if (!(y > 0.0)) fail("y must be positive");
  double s = 0.0;
  for (const auto& a : rep.measure.atoms) s += a.weight * std::exp(-y * a.location);
  return rep.excursion_rate * s;
}

double knight_functional(const LevyRepresentation& rep) {
  double s = 0.0;
  for (const auto& a : rep.measure.atoms) s += a.weight / (a.location * (1.0 + a.location));
  return rep.excursion_rate * s;
}

double laplace_exponent(const LevyRepresentation& rep, double z) {
  if (!(z >= 0.0)) fail("z must be nonnegative");
  double s = 0.0;
  for (const auto& a : rep.measure.atoms) s += a.weight * z / (a.location * (z + a.location));
  return rep.drift * z + rep.excursion_rate * s;
}

double tail_mass(const LevyRepresentation& rep, double z) {
  if (!(z > 0.0)) fail("z must be positive");
  double s = 0.0;
  for (const auto& a : rep.measure.atoms) s += a.weight / a.location * std::exp(-z * a.location);
  return rep.excursion_rate * s;
}

bool MonotonicityReport::all_passed() const {
  return std::all_of(passed.begin(), passed.end(), [](bool b) { return b; });
}

MonotonicityReport monotonicity_profile(std::span<const std::pair<double, double>> samples, int order) {
  if (order < 1 || order > 4) fail("order must be between 1 and 4");
  if (samples.size() < static_cast<std::size_t>(order) + 1) fail("grid too short for the requested order");
  const double h = samples[1].first - samples[0].first;
  if (!(h > 0.0)) fail("grid must be strictly increasing");
  for (std::size_t i = 1; i < samples.size(); ++i) {
    const double step = samples[i].first - samples[i - 1].first;
    if (!(step > 0.0)) fail("grid must be strictly increasing");
    if (std::abs(step - h) > 1e-6 * h) fail("grid must be uniformly spaced");
  }

  MonotonicityReport report;
  double peak = 0.0;
  std::vector<double> diff;
  diff.reserve(samples.size());
  for (const auto& [y, v] : samples) {
    diff.push_back(v);
    peak = std::max(peak, std::abs(v));
  }
  report.tolerance = 1e-9 * peak;
  double sign = 1.0;
  for (int j = 1; j <= order; ++j) {
    sign = -sign;
    for (std::size_t i = 0; i + 1 < diff.size(); ++i) diff[i] = diff[i + 1] - diff[i];
    diff.pop_back();
    double worst = std::numeric_limits<double>::infinity();
    for (double d : diff) worst = std::min(worst, sign * d);
    report.worst.push_back(worst);
    report.passed.push_back(worst >= -report.tolerance);
  }
  return report;
}

double tail_convergence_gap(const LevyRepresentation& a, const LevyRepresentation& b,
                            std::span<const double> z_grid) {
  if (z_grid.empty()) fail("z grid is empty");
  double gap = 0.0;
  for (double z : z_grid) {
    const double ta = tail_mass(a, z);
    const double tb = tail_mass(b, z);
    gap = std::max(gap, std::abs(ta - tb) / std::max(tb, 1e-300));
  }
  return gap;
}

}  // namespace gapdiff
