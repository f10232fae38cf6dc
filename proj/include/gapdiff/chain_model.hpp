#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace gapdiff {

/// Finite-state gap diffusion reflected at 0: a birth-death chain on
/// positions 0 = b_0 < ... < b_N with exponential holding rates a_i and
/// right-jump probabilities p_i (p_0 = 1, p_N = 0).
struct ChainSpec {
  std::vector<double> states;
  std::vector<double> rates;
  std::vector<double> right_probs;

  /// Number of non-origin states N.
  std::size_t size() const noexcept { return states.empty() ? 0 : states.size() - 1; }
  double left_prob(std::size_t i) const { return 1.0 - right_probs[i]; }

  bool operator==(const ChainSpec&) const = default;
};

/// Speed measure on [0, l]. Either a finite set of atoms or a density
/// sampled on a grid. An inextensible measure carries an implied infinite
/// atom at a finite endpoint; it is kept as a flag and never enters
/// arithmetic.
struct SpeedMeasureSpec {
  struct Atom {
    double position;
    double mass;
  };

  std::vector<Atom> atoms;
  std::function<double(double)> density;  ///< empty for atom measures
  std::string density_name;                ///< label for reports, e.g. "uniform"
  std::optional<double> endpoint;          ///< nullopt means l = +infinity
  bool inextensible = false;
  std::size_t grid_n = 0;                  ///< default cell count for density measures

  bool is_density() const noexcept { return static_cast<bool>(density); }
  /// True when the implied infinite atom at l exists (finite l, inextensible).
  bool absorbing_endpoint() const noexcept { return inextensible && endpoint.has_value(); }

  static SpeedMeasureSpec from_atoms(std::vector<Atom> atoms, std::optional<double> endpoint,
                                     bool inextensible = false);
  static SpeedMeasureSpec from_density(std::function<double(double)> density, std::string name,
                                       std::optional<double> endpoint, std::size_t grid_n = 0);
  /// Named densities: "uniform" (1), "linear" (1 + x), "exponential" (exp(-x)).
  static SpeedMeasureSpec named_density(const std::string& name, std::optional<double> endpoint,
                                        std::size_t grid_n = 0);

  void validate() const;
};

/// Returns `spec` unchanged when every invariant holds, otherwise throws
/// gapdiff::Error naming the first violated invariant.
ChainSpec validate_chain(ChainSpec spec);

/// Masses the speed measure assigns to each grid point. Density measures use
/// the midpoint rule on the dual cells [(b_{i-1}+b_i)/2, (b_i+b_{i+1})/2]
/// (half cells at both ends); atoms are collected into the dual cell that
/// contains them.
std::vector<double> grid_masses(const SpeedMeasureSpec& sm, std::span<const double> grid);

/// Chain with generator (1/2) d/dm d/dx on the given grid and masses.
ChainSpec chain_from_masses(std::span<const double> grid, std::span<const double> masses);

/// Discretizes `sm` onto `grid` and builds the corresponding chain.
ChainSpec chain_from_speed_measure(const SpeedMeasureSpec& sm, std::span<const double> grid);

/// Laplace transform of the first return time to 0 started from b_1,
/// obtained from the resolvent equations by tridiagonal elimination. Used as
/// an oracle independent of the continued-fraction route.
double first_passage_transform(const ChainSpec& chain, double z);

}  // namespace gapdiff
