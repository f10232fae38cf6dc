#pragma once

#include <vector>

#include "gapdiff/chain_model.hpp"

namespace gapdiff {

/// Real J-fraction  k_1/(l_1 + z) - k_2/(l_2 + z) - ... - k_N/(l_N + z)
/// with every k_n > 0.
struct JFraction {
  std::vector<double> partial_numerators;    ///< k_1..k_N
  std::vector<double> partial_denominators;  ///< l_1..l_N

  std::size_t size() const noexcept { return partial_numerators.size(); }
  void validate() const;

  bool operator==(const JFraction&) const = default;
};

/// Numerator K_N and monic denominator L_N of the N-th approximant.
/// Coefficients are stored lowest degree first.
struct PolynomialPair {
  std::vector<double> numerator_coeffs;
  std::vector<double> denominator_coeffs;
};

/// Continued fraction of the Laplace transform of the excursion-length
/// density S:  k_1 = q_1 a_1,  k_n = p_{n-1} q_n a_{n-1} a_n,  l_n = a_n.
JFraction jfraction_from_chain(const ChainSpec& chain);

/// Value of the terminating fraction at z >= 0 by the forward three-term
/// recurrence, rescaled whenever the running pair exceeds 2^512.
double approximant_eval(const JFraction& jf, double z);

PolynomialPair polynomial_pair(const JFraction& jf);

/// Horner evaluation, coefficients lowest degree first.
double eval_polynomial(const std::vector<double>& coeffs, double z);

/// K_N(z), L_N(z) and dL_N/dz evaluated together by the recurrences, with a
/// shared scale factor removed (ratios are exact, magnitudes are not).
struct RecurrenceValues {
  double numerator;
  double denominator;
  double denominator_derivative;
};
RecurrenceValues scaled_recurrence_values(const JFraction& jf, double z);

}  // namespace gapdiff
