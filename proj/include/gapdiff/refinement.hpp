#pragma once

#include <span>
#include <string>
#include <vector>

#include "gapdiff/chain_model.hpp"
#include "gapdiff/levy_measure.hpp"

namespace gapdiff {

/// Sequence of finite discretizations of a target speed measure on [0, L].
struct RefinementPlan {
  SpeedMeasureSpec target;
  std::vector<std::size_t> sizes;  ///< cell counts N_1 < N_2 < ...
  double domain_cutoff = 0.0;      ///< L; must not exceed a finite endpoint
  LocalTimeConvention convention = LocalTimeConvention::SpeedUnits;

  void validate() const;
};

/// Cutoff for an unbounded target: 5 sqrt(max y) under Brownian scaling.
double default_domain_cutoff(std::span<const double> y_grid);

struct RefinedChain {
  std::size_t cells = 0;
  ChainSpec chain;
  double speed_mass_at_zero = 0.0;
  double total_mass = 0.0;
};

/// Uniform grid of N + 1 points per size, midpoint-rule masses with half
/// cells at the ends. Grid points an atom target does not charge are
/// skipped: the gap diffusion jumps over them.
std::vector<RefinedChain> refine_detailed(const RefinementPlan& plan);
std::vector<ChainSpec> refine(const RefinementPlan& plan);

/// Ordinary least-squares slope of log y against log x over the central
/// half of the samples.
double central_loglog_slope(std::span<const double> x, std::span<const double> y);

struct ConvergenceRow {
  std::size_t cells = 0;
  double drift = 0.0;
  double excursion_rate = 0.0;
  double total_mass = 0.0;
  std::vector<double> psi;      ///< on z_grid
  std::vector<double> density;  ///< on y_grid
  std::vector<double> tail;     ///< tail_mass on y_grid
  double knight = 0.0;
  double psi_slope = 0.0;
  double density_slope = 0.0;
  /// tail_convergence_gap against the previous size on y_grid (0 for the first).
  double gap_to_previous = 0.0;
  /// max relative difference between psi and b z + r_0 (1 - T(z)) with T
  /// from the first-passage oracle.
  double oracle_discrepancy = 0.0;
  double weight_discrepancy = 0.0;
  LevyRepresentation representation;
};

struct ConvergenceReport {
  std::vector<double> z_grid;
  std::vector<double> y_grid;
  double domain_cutoff = 0.0;
  std::string cutoff_rule;
  std::vector<ConvergenceRow> rows;

  std::vector<double> gaps() const;
  bool gaps_strictly_decreasing() const;
  /// For every z, psi_N(z) moves in one direction across the last three
  /// sizes (differences below `tol` relative count as zero).
  bool psi_monotone_tail(double tol = 1e-6) const;
};

ConvergenceReport convergence_experiment(const RefinementPlan& plan, std::span<const double> z_grid,
                                         std::span<const double> y_grid, unsigned threads = 1);

}  // namespace gapdiff
