#include "gapdiff/jfraction.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "gapdiff/error.hpp"

namespace gapdiff {

namespace {

[[noreturn]] void fail(const std::string& what) { throw Error("jfraction", what); }

constexpr double kRescaleThreshold = 0x1p512;
constexpr double kRescaleFactor = 0x1p-512;

}  // namespace

void JFraction::validate() const {
  if (partial_numerators.empty()) fail("fraction needs at least one level");
  if (partial_numerators.size() != partial_denominators.size())
    fail("numerator and denominator lists must have equal length");
  for (std::size_t n = 0; n < size(); ++n) {
    if (!(partial_numerators[n] > 0.0) || !std::isfinite(partial_numerators[n]))
      fail("partial numerator k_" + std::to_string(n + 1) + " must be positive");
    if (!std::isfinite(partial_denominators[n]))
      fail("partial denominator l_" + std::to_string(n + 1) + " must be finite");
  }
}

JFraction jfraction_from_chain(const ChainSpec& chain) {
  const ChainSpec c = validate_chain(chain);
  const std::size_t n = c.size();
  JFraction jf;
  jf.partial_numerators.resize(n);
  jf.partial_denominators.resize(n);
  for (std::size_t level = 1; level <= n; ++level) {
    const double a = c.rates[level];
    const double q = c.left_prob(level);
    jf.partial_denominators[level - 1] = a;
    jf.partial_numerators[level - 1] =
        level == 1 ? q * a : c.right_probs[level - 1] * q * c.rates[level - 1] * a;
  }
  return jf;
}

double approximant_eval(const JFraction& jf, double z) {
  jf.validate();
  if (!(z >= 0.0) || !std::isfinite(z)) fail("z must be nonnegative");
  // A_n = b_n A_{n-1} + a_n A_{n-2}, B_n likewise, with b_n = z + l_n,
  // a_1 = k_1 and a_n = -k_n afterwards (each level is subtracted).
  double a_prev = 1.0, a_cur = 0.0;  // A_{-1}, A_0
  double b_prev = 0.0, b_cur = 1.0;  // B_{-1}, B_0
  for (std::size_t n = 0; n < jf.size(); ++n) {
    const double bn = z + jf.partial_denominators[n];
    const double an = n == 0 ? jf.partial_numerators[0] : -jf.partial_numerators[n];
    const double a_next = bn * a_cur + an * a_prev;
    const double b_next = bn * b_cur + an * b_prev;
    a_prev = a_cur;
    a_cur = a_next;
    b_prev = b_cur;
    b_cur = b_next;
    const double big = std::max({std::abs(a_prev), std::abs(a_cur), std::abs(b_prev), std::abs(b_cur)});
    if (big > kRescaleThreshold) {
      a_prev *= kRescaleFactor;
      a_cur *= kRescaleFactor;
      b_prev *= kRescaleFactor;
      b_cur *= kRescaleFactor;
    }
  }
  if (b_cur == 0.0 || !std::isfinite(b_cur)) fail("approximant denominator vanished");
  return a_cur / b_cur;
}

PolynomialPair polynomial_pair(const JFraction& jf) {
  jf.validate();
  using Poly = std::vector<double>;
  // L_n = (l_n + z) L_{n-1} - k_n L_{n-2},  L_{-1} = 0, L_0 = 1
  // K_n = (l_n + z) K_{n-1} - k_n K_{n-2},  K_0 = 0, K_1 = k_1
  auto step = [](const Poly& prev, const Poly& prev2, double l, double k) {
    Poly next(prev.size() + 1, 0.0);
    for (std::size_t i = 0; i < prev.size(); ++i) {
      next[i] += l * prev[i];
      next[i + 1] += prev[i];
    }
    for (std::size_t i = 0; i < prev2.size(); ++i) next[i] -= k * prev2[i];
    return next;
  };

  Poly l_prev2{}, l_prev{1.0};
  Poly k_prev2{}, k_prev{};
  for (std::size_t n = 0; n < jf.size(); ++n) {
    const double l = jf.partial_denominators[n];
    const double k = jf.partial_numerators[n];
    Poly l_next = step(l_prev, l_prev2, l, k);
    Poly k_next = n == 0 ? Poly{k} : step(k_prev, k_prev2, l, k);
    l_prev2 = std::exchange(l_prev, std::move(l_next));
    k_prev2 = std::exchange(k_prev, std::move(k_next));
  }
  return {std::move(k_prev), std::move(l_prev)};
}

double eval_polynomial(const std::vector<double>& coeffs, double z) {
  double acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
  return acc;
}

RecurrenceValues scaled_recurrence_values(const JFraction& jf, double z) {
  jf.validate();
  // state: K_{n-1}, K_{n-2}, L_{n-1}, L_{n-2}, L'_{n-1}, L'_{n-2}
  double k1 = 0.0, k2 = 0.0;
  double l1 = 1.0, l2 = 0.0;
  double d1 = 0.0, d2 = 0.0;
  for (std::size_t n = 0; n < jf.size(); ++n) {
    const double b = z + jf.partial_denominators[n];
    const double k = jf.partial_numerators[n];
    const double kn = n == 0 ? k : b * k1 - k * k2;
    const double ln = b * l1 - k * l2;
    const double dn = l1 + b * d1 - k * d2;
    k2 = k1, k1 = kn;
    l2 = l1, l1 = ln;
    d2 = d1, d1 = dn;
    const double big = std::max({std::abs(k1), std::abs(k2), std::abs(l1), std::abs(l2), std::abs(d1),
                                 std::abs(d2)});
    if (big > kRescaleThreshold) {
      for (double* v : {&k1, &k2, &l1, &l2, &d1, &d2}) *v *= kRescaleFactor;
    }
  }
  return {k1, l1, d1};
}

}  // namespace gapdiff
