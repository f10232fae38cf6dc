#include "gapdiff/spectral_measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "gapdiff/error.hpp"
#include "gapdiff/tridiagonal.hpp"

namespace gapdiff {

namespace {

[[noreturn]] void fail(const std::string& what) { throw Error("spectral_measure", what); }

constexpr double kDegenerateGap = 1e3 * std::numeric_limits<double>::epsilon();

}  // namespace

void SpectralMeasure::validate() const {
  for (std::size_t k = 0; k < atoms.size(); ++k) {
    const auto& a = atoms[k];
    if (!(a.location > 0.0) || !std::isfinite(a.location))
      fail("atom location must be positive (atom " + std::to_string(k) + ")");
    if (!(a.weight > 0.0) || !std::isfinite(a.weight))
      fail("atom weight must be positive (atom " + std::to_string(k) + ")");
    if (k > 0 && !(a.location > atoms[k - 1].location)) fail("atom locations must be strictly increasing");
  }
}

double SpectralMeasure::total_weight() const {
  double s = 0.0;
  for (const auto& a : atoms) s += a.weight;
  return s;
}

double SpectralMeasure::normalization_defect() const {
  double s = 0.0;
  for (const auto& a : atoms) s += a.weight / a.location;
  return std::abs(s - 1.0);
}

JacobiMatrix jacobi_matrix(const JFraction& jf) {
  jf.validate();
  JacobiMatrix m;
  m.diagonal = jf.partial_denominators;
  m.off_diagonal.reserve(jf.size() - 1);
  for (std::size_t n = 1; n < jf.size(); ++n) m.off_diagonal.push_back(std::sqrt(jf.partial_numerators[n]));
  return m;
}

SpectrumDiagnostics spectrum_with_diagnostics(const JFraction& jf) {
  const JacobiMatrix jm = jacobi_matrix(jf);
  const TridiagonalEigen eig = tridiagonal_eigen(jm.diagonal, jm.off_diagonal);
  const double k1 = jf.partial_numerators[0];

  SpectrumDiagnostics out;
  const std::size_t n = eig.values.size();
  out.measure.atoms.reserve(n);
  double scale = 0.0;
  for (double x : eig.values) scale = std::max(scale, std::abs(x));
  out.min_relative_gap = std::numeric_limits<double>::infinity();

  for (std::size_t k = 0; k < n; ++k) {
    const double x = eig.values[k];
    if (!(x > 0.0)) fail("spectrum has a non-positive eigenvalue " + std::to_string(x));
    const double w = k1 * eig.first_components[k] * eig.first_components[k];
    out.measure.atoms.push_back({x, w});

    const RecurrenceValues rv = scaled_recurrence_values(jf, -x);
    const double residue = rv.numerator / rv.denominator_derivative;
    out.weight_discrepancy = std::max(out.weight_discrepancy, std::abs(residue - w) / k1);

    if (k > 0) out.min_relative_gap = std::min(out.min_relative_gap, (x - eig.values[k - 1]) / scale);
  }
  if (out.min_relative_gap < kDegenerateGap)
    out.warnings.push_back("near-degenerate eigenvalues: relative gap " + std::to_string(out.min_relative_gap));
  if (out.weight_discrepancy > 1e-8)
    out.warnings.push_back("eigenvector and residue weights disagree by " + std::to_string(out.weight_discrepancy));
  for (const auto& a : out.measure.atoms) {
    if (!(a.weight > 0.0)) fail("Christoffel weight underflowed to zero");
  }
  return out;
}

SpectralMeasure spectrum(const JFraction& jf) { return spectrum_with_diagnostics(jf).measure; }

double stieltjes_eval(const SpectralMeasure& sm, double z) {
  if (!(z >= 0.0)) fail("z must be nonnegative");
  double s = 0.0;
  for (const auto& a : sm.atoms) s += a.weight / (z + a.location);
  return s;
}

double step_function(const SpectralMeasure& sm, double t) {
  double s = 0.0;
  for (const auto& a : sm.atoms) {
    if (a.location < t) s += a.weight;
  }
  return s;
}

JFraction jacobi_from_atoms(const SpectralMeasure& sm) {
  sm.validate();
  const std::size_t n = sm.atoms.size();
  if (n == 0) fail("measure has no atoms");
  const double total = sm.total_weight();

  std::vector<double> x(n);
  std::vector<std::vector<double>> basis;  // Lanczos vectors q_1..q_j
  basis.reserve(n);
  std::vector<double> q(n);
  for (std::size_t k = 0; k < n; ++k) {
    x[k] = sm.atoms[k].location;
    q[k] = std::sqrt(sm.atoms[k].weight / total);
  }

  JFraction jf;
  jf.partial_numerators.push_back(total);
  auto dot = [n](const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
  };

  for (std::size_t j = 0; j < n; ++j) {
    basis.push_back(q);
    std::vector<double> r(n);
    for (std::size_t i = 0; i < n; ++i) r[i] = x[i] * q[i];
    const double alpha = dot(q, r);
    jf.partial_denominators.push_back(alpha);
    if (j + 1 == n) break;
    // two passes of classical Gram-Schmidt against every previous vector
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& v : basis) {
        const double c = dot(v, r);
        for (std::size_t i = 0; i < n; ++i) r[i] -= c * v[i];
      }
    }
    const double beta = std::sqrt(dot(r, r));
    const double scale = *std::max_element(x.begin(), x.end());
    if (!(beta > 1e-13 * scale))
      fail("Lanczos breakdown at step " + std::to_string(j + 1) + " (lost orthogonality or repeated atoms)");
    jf.partial_numerators.push_back(beta * beta);
    for (std::size_t i = 0; i < n; ++i) q[i] = r[i] / beta;
  }
  return jf;
}

}  // namespace gapdiff
