#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gapdiff/chain_model.hpp"
#include "gapdiff/spectral_measure.hpp"

namespace gapdiff {

/// Normalization of local time at 0.
///  - ChainUnits: local time is occupation time at state 0; drift 1, rate a_0.
///  - SpeedUnits: occupation time divided by 2 m_0; drift 2 m_0, rate 2 m_0 a_0.
enum class LocalTimeConvention { ChainUnits, SpeedUnits };

std::string to_string(LocalTimeConvention c);
LocalTimeConvention convention_from_string(const std::string& s);

/// Levy triple of the inverse local time at 0: psi(z) = b z + int (1 - e^{-zy}) n(y) dy
/// with n(y) = r_0 sum_k lambda_k e^{-y x_k}.
struct LevyRepresentation {
  double drift = 0.0;
  double excursion_rate = 0.0;
  SpectralMeasure measure;
  LocalTimeConvention convention = LocalTimeConvention::ChainUnits;
};

/// Full pipeline chain -> fraction -> spectrum -> representation. SpeedUnits
/// needs the speed mass at 0.
LevyRepresentation levy_representation(const ChainSpec& chain, LocalTimeConvention convention,
                                       double speed_mass_at_zero = 0.0);
LevyRepresentation levy_representation(const ChainSpec& chain, const SpectralMeasure& measure,
                                       LocalTimeConvention convention, double speed_mass_at_zero = 0.0);

double levy_density(const LevyRepresentation& rep, double y);

/// r_0 sum_k lambda_k / (x_k (1 + x_k)); equals int (1 - e^{-y}) n(y) dy.
double knight_functional(const LevyRepresentation& rep);

double laplace_exponent(const LevyRepresentation& rep, double z);

/// int_z^inf n(y) dy = r_0 sum_k (lambda_k / x_k) e^{-z x_k}
double tail_mass(const LevyRepresentation& rep, double z);

struct MonotonicityReport {
  /// passed[j-1] is true when (-1)^j Delta^j f >= -tol on the whole grid.
  std::vector<bool> passed;
  /// Most negative value of (-1)^j Delta^j f seen at each order.
  std::vector<double> worst;
  double tolerance = 0.0;

  bool all_passed() const;
};

/// Forward-difference sign test for complete monotonicity up to `order`
/// (1..4) on a uniform grid. tol = 1e-9 * max |sample|.
MonotonicityReport monotonicity_profile(std::span<const std::pair<double, double>> samples, int order);

double tail_convergence_gap(const LevyRepresentation& a, const LevyRepresentation& b,
                            std::span<const double> z_grid);

}  // namespace gapdiff
