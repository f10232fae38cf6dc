#pragma once

#include <string>
#include <vector>

#include "gapdiff/jfraction.hpp"

namespace gapdiff {

struct SpectralAtom {
  double location;  ///< x_k > 0
  double weight;    ///< Christoffel number lambda_k > 0

  bool operator==(const SpectralAtom&) const = default;
};

/// Discrete measure sum_k lambda_k delta_{x_k}. For a measure coming from a
/// chain, L(S)(z) = sum_k lambda_k / (z + x_k) and sum_k lambda_k / x_k = 1.
struct SpectralMeasure {
  std::vector<SpectralAtom> atoms;

  /// Throws unless locations are positive and strictly increasing and
  /// weights positive.
  void validate() const;
  double total_weight() const;          ///< sum lambda_k
  double normalization_defect() const;  ///< |sum lambda_k / x_k - 1|
};

struct JacobiMatrix {
  std::vector<double> diagonal;      ///< l_1..l_N
  std::vector<double> off_diagonal;  ///< sqrt(k_2)..sqrt(k_N)
};

JacobiMatrix jacobi_matrix(const JFraction& jf);

struct SpectrumDiagnostics {
  SpectralMeasure measure;
  /// Largest difference between eigenvector weights and the residues
  /// K_N(-x_k) / L_N'(-x_k), relative to the total weight k_1.
  double weight_discrepancy = 0.0;
  /// Smallest (x_{k+1} - x_k) / max |x|.
  double min_relative_gap = 0.0;
  std::vector<std::string> warnings;
};

/// Atoms of the partial-fraction decomposition of the fraction.
SpectralMeasure spectrum(const JFraction& jf);
SpectrumDiagnostics spectrum_with_diagnostics(const JFraction& jf);

/// sum_k lambda_k / (z + x_k)
double stieltjes_eval(const SpectralMeasure& sm, double z);

/// Phi(t) = sum of lambda_k over x_k < t.
double step_function(const SpectralMeasure& sm, double t);

/// Inverse map: Lanczos tridiagonalization of diag(x_k) started from
/// (sqrt(lambda_k / sum lambda))_k, with full reorthogonalization.
JFraction jacobi_from_atoms(const SpectralMeasure& sm);

}  // namespace gapdiff
