#include "gapdiff/refinement.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gapdiff/detail/parallel.hpp"
#include "gapdiff/error.hpp"
#include "gapdiff/jfraction.hpp"

namespace gapdiff {

namespace {

[[noreturn]] void fail(const std::string& what) { throw Error("refinement", what); }

void check_positive_grid(std::span<const double> grid, const char* name) {
  if (grid.empty()) fail(std::string(name) + " is empty");
  for (double v : grid) {
    if (!(v > 0.0) || !std::isfinite(v)) fail(std::string(name) + " must contain positive values");
  }
}

}  // namespace

void RefinementPlan::validate() const {
  target.validate();
  if (sizes.size() < 2) fail("plan needs at least two sizes");
  if (sizes.front() < 1) fail("sizes must be positive");
  for (std::size_t i = 1; i < sizes.size(); ++i) {
    if (sizes[i] <= sizes[i - 1]) fail("sizes must be strictly increasing");
  }
  if (!(domain_cutoff > 0.0) || !std::isfinite(domain_cutoff)) fail("domain cutoff must be positive");
  if (target.endpoint && domain_cutoff > *target.endpoint * (1.0 + 1e-12))
    fail("domain cutoff exceeds the endpoint of the target");
  if (target.absorbing_endpoint() && domain_cutoff >= *target.endpoint)
    fail("cutoff reaches the absorbing endpoint; the refined chains would not be persistent");
}

double default_domain_cutoff(std::span<const double> y_grid) {
  check_positive_grid(y_grid, "y grid");
  return 5.0 * std::sqrt(*std::max_element(y_grid.begin(), y_grid.end()));
}

std::vector<RefinedChain> refine_detailed(const RefinementPlan& plan) {
  plan.validate();
  std::vector<RefinedChain> out;
  out.reserve(plan.sizes.size());
  for (std::size_t n : plan.sizes) {
    std::vector<double> grid(n + 1);
    for (std::size_t i = 0; i <= n; ++i) grid[i] = plan.domain_cutoff * static_cast<double>(i) / static_cast<double>(n);
    grid.back() = plan.domain_cutoff;
    std::vector<double> masses = grid_masses(plan.target, grid);

    if (!plan.target.is_density()) {
      std::vector<double> support, support_masses;
      for (std::size_t i = 0; i < grid.size(); ++i) {
        if (masses[i] > 0.0) {
          support.push_back(grid[i]);
          support_masses.push_back(masses[i]);
        }
      }
      if (support.size() < 2 || support.front() != 0.0)
        fail("atom target charges fewer than two points of the N = " + std::to_string(n) + " grid");
      grid = std::move(support);
      masses = std::move(support_masses);
    }

    RefinedChain rc;
    rc.cells = n;
    rc.chain = chain_from_masses(grid, masses);
    rc.speed_mass_at_zero = masses.front();
    for (double m : masses) rc.total_mass += m;
    out.push_back(std::move(rc));
  }
  return out;
}

std::vector<ChainSpec> refine(const RefinementPlan& plan) {
  std::vector<ChainSpec> chains;
  for (auto& rc : refine_detailed(plan)) chains.push_back(std::move(rc.chain));
  return chains;
}

double central_loglog_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) fail("slope fit needs paired samples");
  const std::size_t n = x.size();
  std::size_t lo = n / 4;
  std::size_t hi = n - n / 4;
  if (hi - lo < 2) {
    lo = 0;
    hi = n;
  }
  if (hi - lo < 2) fail("slope fit needs at least two samples");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double m = static_cast<double>(hi - lo);
  for (std::size_t i = lo; i < hi; ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0)) fail("log-log fit needs positive samples");
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

std::vector<double> ConvergenceReport::gaps() const {
  std::vector<double> g;
  for (std::size_t i = 1; i < rows.size(); ++i) g.push_back(rows[i].gap_to_previous);
  return g;
}

bool ConvergenceReport::gaps_strictly_decreasing() const {
  const auto g = gaps();
  for (std::size_t i = 1; i < g.size(); ++i) {
    if (!(g[i] < g[i - 1])) return false;
  }
  return true;
}

bool ConvergenceReport::psi_monotone_tail(double tol) const {
  if (rows.size() < 3) return true;
  const auto& a = rows[rows.size() - 3].psi;
  const auto& b = rows[rows.size() - 2].psi;
  const auto& c = rows[rows.size() - 1].psi;
  auto sign = [tol](double from, double to) {
    const double d = to - from;
    if (std::abs(d) <= tol * std::abs(to)) return 0;
    return d > 0 ? 1 : -1;
  };
  for (std::size_t i = 0; i < a.size(); ++i) {
    const int s1 = sign(a[i], b[i]);
    const int s2 = sign(b[i], c[i]);
    if (s1 != 0 && s2 != 0 && s1 != s2) return false;
  }
  return true;
}

ConvergenceReport convergence_experiment(const RefinementPlan& plan, std::span<const double> z_grid,
                                         std::span<const double> y_grid, unsigned threads) {
  check_positive_grid(z_grid, "z grid");
  check_positive_grid(y_grid, "y grid");
  const auto chains = refine_detailed(plan);

  ConvergenceReport report;
  report.z_grid.assign(z_grid.begin(), z_grid.end());
  report.y_grid.assign(y_grid.begin(), y_grid.end());
  report.domain_cutoff = plan.domain_cutoff;
  {
    std::ostringstream rule;
    if (plan.target.endpoint && plan.domain_cutoff >= *plan.target.endpoint * (1.0 - 1e-12))
      rule << "full domain [0, " << *plan.target.endpoint << "]";
    else
      rule << "truncated at L = " << plan.domain_cutoff << " (rule of thumb L >= 5 sqrt(max y) = "
           << 5.0 * std::sqrt(*std::max_element(y_grid.begin(), y_grid.end())) << ")";
    report.cutoff_rule = rule.str();
  }
  report.rows.resize(chains.size());

  detail::parallel_for(chains.size(), threads, [&](std::size_t idx) {
    const RefinedChain& rc = chains[idx];
    const JFraction jf = jfraction_from_chain(rc.chain);
    const SpectrumDiagnostics diag = spectrum_with_diagnostics(jf);
    ConvergenceRow& row = report.rows[idx];
    row.cells = rc.cells;
    row.total_mass = rc.total_mass;
    row.representation = levy_representation(rc.chain, diag.measure, plan.convention, rc.speed_mass_at_zero);
    row.weight_discrepancy = diag.weight_discrepancy;
    const LevyRepresentation& rep = row.representation;
    row.drift = rep.drift;
    row.excursion_rate = rep.excursion_rate;
    for (double z : z_grid) {
      const double psi = laplace_exponent(rep, z);
      const double via_oracle = rep.drift * z + rep.excursion_rate * (1.0 - first_passage_transform(rc.chain, z));
      row.oracle_discrepancy = std::max(row.oracle_discrepancy, std::abs(psi - via_oracle) / std::abs(via_oracle));
      row.psi.push_back(psi);
    }
    for (double y : y_grid) {
      row.density.push_back(levy_density(rep, y));
      row.tail.push_back(tail_mass(rep, y));
    }
    row.knight = knight_functional(rep);
    row.psi_slope = central_loglog_slope(z_grid, row.psi);
    row.density_slope = central_loglog_slope(y_grid, row.density);
  });

  for (std::size_t i = 1; i < report.rows.size(); ++i) {
    report.rows[i].gap_to_previous =
        tail_convergence_gap(report.rows[i].representation, report.rows[i - 1].representation, y_grid);
  }
  return report;
}

}  // namespace gapdiff
