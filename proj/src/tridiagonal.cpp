#include "gapdiff/tridiagonal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "gapdiff/error.hpp"

namespace gapdiff {

TridiagonalEigen tridiagonal_eigen(std::span<const double> diagonal, std::span<const double> off_diagonal,
                                   int max_sweeps) {
  const std::size_t n = diagonal.size();
  if (n == 0) throw Error("spectral_measure", "empty matrix");
  if (off_diagonal.size() + 1 != n) throw Error("spectral_measure", "off-diagonal must have n - 1 entries");

  constexpr double eps = std::numeric_limits<double>::epsilon();
  std::vector<double> d(diagonal.begin(), diagonal.end());
  std::vector<double> e(n, 0.0);
  std::copy(off_diagonal.begin(), off_diagonal.end(), e.begin());
  std::vector<double> z(n, 0.0);  // first row of the accumulated rotations
  z[0] = 1.0;

  for (std::size_t l = 0; l < n; ++l) {
    int sweeps = 0;
    for (;;) {
      std::size_t m = l;
      for (; m + 1 < n; ++m) {
        if (std::abs(e[m]) <= eps * (std::abs(d[m]) + std::abs(d[m + 1]))) break;
      }
      if (m == l) break;
      if (++sweeps > max_sweeps)
        throw Error("spectral_measure",
                    "eigenvalue " + std::to_string(l) + " did not converge after " + std::to_string(max_sweeps) +
                        " sweeps");

      // Wilkinson-type shift from the leading 2x2 block
      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0, c = 1.0, p = 0.0;
      bool underflow = false;
      for (std::size_t i = m; i-- > l;) {
        const double f = s * e[i];
        const double b = c * e[i];
        r = std::hypot(f, g);
        e[i + 1] = r;
        if (r == 0.0) {
          d[i + 1] -= p;
          e[m] = 0.0;
          underflow = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
        const double zf = z[i + 1];
        z[i + 1] = s * z[i] + c * zf;
        z[i] = c * z[i] - s * zf;
      }
      if (underflow) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return d[a] < d[b]; });
  TridiagonalEigen out;
  out.values.reserve(n);
  out.first_components.reserve(n);
  for (auto i : order) {
    out.values.push_back(d[i]);
    out.first_components.push_back(z[i]);
  }
  return out;
}

}  // namespace gapdiff
