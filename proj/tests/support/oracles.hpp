#pragma once

// Test-only generators and oracles. Nothing here calls into the code paths
// it is used to check.

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "gapdiff/chain_model.hpp"
#include "gapdiff/spectral_measure.hpp"

namespace gapdiff::testing {

/// Random chain with N in [1, max_n], rates log-uniform in [0.1, 10] and
/// interior right-jump probabilities uniform in (0.05, 0.95).
inline ChainSpec random_chain(std::mt19937_64& rng, std::size_t max_n = 12) {
  std::uniform_int_distribution<std::size_t> size(1, max_n);
  std::uniform_real_distribution<double> log_rate(std::log(0.1), std::log(10.0));
  std::uniform_real_distribution<double> prob(0.05, 0.95);
  const std::size_t n = size(rng);
  ChainSpec c;
  for (std::size_t i = 0; i <= n; ++i) {
    c.states.push_back(static_cast<double>(i));
    c.rates.push_back(std::exp(log_rate(rng)));
    c.right_probs.push_back(i == 0 ? 1.0 : (i == n ? 0.0 : prob(rng)));
  }
  return c;
}

/// Random measure with `n` distinct atoms, normalized so sum lambda/x = 1.
inline SpectralMeasure random_measure(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> log_x(std::log(0.05), std::log(20.0));
  std::uniform_real_distribution<double> w(0.1, 1.0);
  std::vector<double> xs;
  while (xs.size() < n) {
    const double x = std::exp(log_x(rng));
    bool distinct = true;
    for (double y : xs) distinct = distinct && std::abs(x - y) > 1e-3 * std::max(x, y);
    if (distinct) xs.push_back(x);
  }
  std::sort(xs.begin(), xs.end());
  SpectralMeasure sm;
  double norm = 0.0;
  for (double x : xs) {
    sm.atoms.push_back({x, w(rng)});
    norm += sm.atoms.back().weight / x;
  }
  for (auto& a : sm.atoms) a.weight /= norm;
  return sm;
}

/// Dense Gaussian elimination with partial pivoting on the full
/// first-passage system (unknowns u_1..u_N), returning u_1.
inline double dense_first_passage(const ChainSpec& c, double z) {
  const std::size_t n = c.size();
  std::vector<std::vector<double>> m(n, std::vector<double>(n + 1, 0.0));
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t i = k + 1;
    const double a = c.rates[i], p = c.right_probs[i], q = 1.0 - p;
    m[k][k] = z + a;
    if (k + 1 < n) m[k][k + 1] = -a * p;
    if (k > 0) m[k][k - 1] = -a * q;
    if (k == 0) m[k][n] = a * q;
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
    std::swap(m[col], m[piv]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = m[r][col] / m[col][col];
      for (std::size_t j = col; j <= n; ++j) m[r][j] -= f * m[col][j];
    }
  }
  std::vector<double> u(n);
  for (std::size_t k = n; k-- > 0;) {
    double s = m[k][n];
    for (std::size_t j = k + 1; j < n; ++j) s -= m[k][j] * u[j];
    u[k] = s / m[k][k];
  }
  return u[0];
}

/// Adaptive Simpson quadrature.
inline double integrate(const std::function<double(double)>& f, double a, double b, double tol = 1e-12,
                        int depth = 40) {
  std::function<double(double, double, double, double, double, double, int)> rec =
      [&](double lo, double hi, double flo, double fmid, double fhi, double whole, int d) {
        const double mid = 0.5 * (lo + hi);
        const double lm = 0.5 * (lo + mid), rm = 0.5 * (mid + hi);
        const double flm = f(lm), frm = f(rm);
        const double left = (mid - lo) / 6.0 * (flo + 4.0 * flm + fmid);
        const double right = (hi - mid) / 6.0 * (fmid + 4.0 * frm + fhi);
        if (d <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
          return left + right + (left + right - whole) / 15.0;
        return rec(lo, mid, flo, flm, fmid, left, d - 1) + rec(mid, hi, fmid, frm, fhi, right, d - 1);
      };
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  return rec(a, b, fa, fm, fb, (b - a) / 6.0 * (fa + 4.0 * fm + fb), depth);
}

/// Divided differences of order 1..max_order of samples on an arbitrary grid.
inline std::vector<std::vector<double>> divided_differences(const std::vector<double>& x,
                                                            const std::vector<double>& f, int max_order) {
  std::vector<std::vector<double>> out;
  std::vector<double> cur = f;
  for (int j = 1; j <= max_order; ++j) {
    std::vector<double> next;
    for (std::size_t i = 0; i + 1 < cur.size(); ++i)
      next.push_back((cur[i + 1] - cur[i]) / (x[i + static_cast<std::size_t>(j)] - x[i]));
    out.push_back(next);
    cur = next;
  }
  return out;
}

inline ChainSpec two_state(double a0, double a1) { return ChainSpec{{0.0, 1.0}, {a0, a1}, {1.0, 0.0}}; }

inline ChainSpec three_state(double a0, double a1, double a2, double p1) {
  return ChainSpec{{0.0, 1.0, 2.0}, {a0, a1, a2}, {1.0, p1, 0.0}};
}

inline double rel_err(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace gapdiff::testing
