#pragma once

#include <span>
#include <vector>

namespace gapdiff {

/// Eigenvalues of a symmetric tridiagonal matrix together with the first
/// component of each normalized eigenvector (Golub-Welsch), sorted by
/// increasing eigenvalue.
struct TridiagonalEigen {
  std::vector<double> values;
  std::vector<double> first_components;
};

/// Implicit-shift QL iteration. `diagonal` has n entries, `off_diagonal`
/// n - 1. Deflation when |e_i| <= eps * (|d_i| + |d_{i+1}|). Throws
/// gapdiff::Error if an eigenvalue fails to converge in `max_sweeps`.
TridiagonalEigen tridiagonal_eigen(std::span<const double> diagonal, std::span<const double> off_diagonal,
                                   int max_sweeps = 60);

}  // namespace gapdiff
