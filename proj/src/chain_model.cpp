#include "gapdiff/chain_model.hpp"

#include <cmath>
#include <string>

#include "gapdiff/error.hpp"

namespace gapdiff {

namespace {

[[noreturn]] void fail(const std::string& what) { throw Error("chain_model", what); }

void check_grid(std::span<const double> grid) {
  if (grid.size() < 2) fail("grid needs at least two points");
  if (grid[0] != 0.0) fail("grid must start at 0");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!std::isfinite(grid[i]) || !(grid[i] > grid[i - 1]))
      fail("grid must be strictly increasing (index " + std::to_string(i) + ")");
  }
}

}  // namespace

SpeedMeasureSpec SpeedMeasureSpec::from_atoms(std::vector<Atom> atoms, std::optional<double> endpoint,
                                              bool inextensible) {
  SpeedMeasureSpec sm;
  sm.atoms = std::move(atoms);
  sm.endpoint = endpoint;
  sm.inextensible = inextensible;
  sm.validate();
  return sm;
}

SpeedMeasureSpec SpeedMeasureSpec::from_density(std::function<double(double)> density, std::string name,
                                                std::optional<double> endpoint, std::size_t grid_n) {
  SpeedMeasureSpec sm;
  sm.density = std::move(density);
  sm.density_name = std::move(name);
  sm.endpoint = endpoint;
  sm.grid_n = grid_n;
  sm.validate();
  return sm;
}

SpeedMeasureSpec SpeedMeasureSpec::named_density(const std::string& name, std::optional<double> endpoint,
                                                 std::size_t grid_n) {
  std::function<double(double)> f;
  if (name == "uniform")
    f = [](double) { return 1.0; };
  else if (name == "linear")
    f = [](double x) { return 1.0 + x; };
  else if (name == "exponential")
    f = [](double x) { return std::exp(-x); };
  else
    fail("unknown density '" + name + "'");
  return from_density(std::move(f), name, endpoint, grid_n);
}

void SpeedMeasureSpec::validate() const {
  if (endpoint && !(*endpoint > 0.0 && std::isfinite(*endpoint))) fail("endpoint must be positive");
  if (is_density()) {
    if (!atoms.empty()) fail("speed measure is either atoms or a density, not both");
    if (!(density(0.0) > 0.0)) fail("speed measure must charge 0");
    return;
  }
  if (atoms.empty()) fail("speed measure has no atoms");
  bool charges_zero = false;
  for (const auto& a : atoms) {
    if (!std::isfinite(a.position) || a.position < 0.0) fail("atom position outside [0, l]");
    if (endpoint && a.position > *endpoint) fail("atom position outside [0, l]");
    if (!(a.mass > 0.0) || !std::isfinite(a.mass)) fail("atom mass must be positive and finite");
    if (a.position == 0.0) charges_zero = true;
  }
  if (!charges_zero) fail("speed measure must charge 0");
}

ChainSpec validate_chain(ChainSpec spec) {
  const auto n = spec.states.size();
  if (n < 2) fail("chain needs at least two states");
  if (spec.rates.size() != n || spec.right_probs.size() != n)
    fail("states, rates and right_probs must have equal length");
  if (spec.states[0] != 0.0) fail("first state must be 0");
  for (std::size_t i = 1; i < n; ++i) {
    if (!std::isfinite(spec.states[i]) || !(spec.states[i] > spec.states[i - 1]))
      fail("states must be strictly increasing (index " + std::to_string(i) + ")");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(spec.rates[i]) || !(spec.rates[i] > 0.0))
      fail("rate must be positive (state " + std::to_string(i) + ")");
  }
  if (spec.right_probs[0] != 1.0) fail("state 0 must reflect right");
  if (spec.right_probs[n - 1] != 0.0) fail("top state must jump left");
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double p = spec.right_probs[i];
    if (!(p > 0.0 && p < 1.0))
      fail("interior jump probability must lie in (0, 1) (state " + std::to_string(i) + ")");
  }
  return spec;
}

std::vector<double> grid_masses(const SpeedMeasureSpec& sm, std::span<const double> grid) {
  sm.validate();
  check_grid(grid);
  if (sm.endpoint && grid.back() > *sm.endpoint) fail("grid extends beyond the endpoint");
  const std::size_t n = grid.size();
  std::vector<double> masses(n, 0.0);

  if (sm.is_density()) {
    for (std::size_t i = 0; i < n; ++i) {
      const double lo = i == 0 ? grid[0] : 0.5 * (grid[i - 1] + grid[i]);
      const double hi = i + 1 == n ? grid[i] : 0.5 * (grid[i] + grid[i + 1]);
      const double f = sm.density(grid[i]);
      if (!std::isfinite(f) || f < 0.0)
        fail("density not sampleable at x = " + std::to_string(grid[i]));
      masses[i] = f * (hi - lo);
    }
    return masses;
  }

  for (const auto& a : sm.atoms) {
    if (a.position > grid.back()) continue;  // outside the truncated domain
    // dual cell [(b_{i-1}+b_i)/2, (b_i+b_{i+1})/2)
    std::size_t lo = 0, hi = n - 1;
    while (lo < hi) {
      const std::size_t mid = (lo + hi) / 2;
      if (a.position >= 0.5 * (grid[mid] + grid[mid + 1]))
        lo = mid + 1;
      else
        hi = mid;
    }
    masses[lo] += a.mass;
  }
  return masses;
}

ChainSpec chain_from_masses(std::span<const double> grid, std::span<const double> masses) {
  check_grid(grid);
  if (masses.size() != grid.size()) fail("one mass per grid point required");
  for (std::size_t i = 0; i < masses.size(); ++i) {
    if (!(masses[i] > 0.0) || !std::isfinite(masses[i]))
      fail("zero mass at grid point " + std::to_string(i));
  }
  const std::size_t n = grid.size();
  ChainSpec chain;
  chain.states.assign(grid.begin(), grid.end());
  chain.rates.resize(n);
  chain.right_probs.resize(n);

  chain.rates[0] = 1.0 / (2.0 * masses[0] * (grid[1] - grid[0]));
  chain.right_probs[0] = 1.0;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double right = 1.0 / (2.0 * masses[i] * (grid[i + 1] - grid[i]));
    const double left = 1.0 / (2.0 * masses[i] * (grid[i] - grid[i - 1]));
    chain.rates[i] = right + left;
    chain.right_probs[i] = right / (right + left);
  }
  chain.rates[n - 1] = 1.0 / (2.0 * masses[n - 1] * (grid[n - 1] - grid[n - 2]));
  chain.right_probs[n - 1] = 0.0;
  return validate_chain(std::move(chain));
}

ChainSpec chain_from_speed_measure(const SpeedMeasureSpec& sm, std::span<const double> grid) {
  if (sm.absorbing_endpoint() && !grid.empty() && grid.back() >= *sm.endpoint)
    fail("grid reaches the absorbing endpoint of an inextensible measure; the chain would not be persistent");
  const auto masses = grid_masses(sm, grid);
  return chain_from_masses(grid, masses);
}

double first_passage_transform(const ChainSpec& chain, double z) {
  if (!(z >= 0.0) || !std::isfinite(z)) fail("z must be nonnegative");
  const std::size_t n = chain.size();
  // Unknowns u_1..u_N:  (z + a_i) u_i - a_i p_i u_{i+1} - a_i q_i u_{i-1} = 0, u_0 = 1.
  std::vector<double> diag(n), upper(n), rhs(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t i = k + 1;
    const double a = chain.rates[i];
    const double p = chain.right_probs[i];
    const double q = 1.0 - p;
    diag[k] = z + a;
    upper[k] = -a * p;
    const double lower = -a * q;
    rhs[k] = k == 0 ? a * q : 0.0;
    if (k > 0) {
      // eliminate the sub-diagonal entry of row k
      const double w = lower / diag[k - 1];
      diag[k] -= w * upper[k - 1];
      rhs[k] -= w * rhs[k - 1];
    }
    if (!(std::abs(diag[k]) > 0.0) || !std::isfinite(diag[k]))
      fail("first-passage system is numerically singular");
  }
  std::vector<double> u(n);
  u[n - 1] = rhs[n - 1] / diag[n - 1];
  for (std::size_t k = n - 1; k-- > 0;) u[k] = (rhs[k] - upper[k] * u[k + 1]) / diag[k];
  return u[0];
}

}  // namespace gapdiff
