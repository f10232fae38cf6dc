#include <doctest.h>

#include <cmath>
#include <random>

#include "gapdiff/error.hpp"
#include "gapdiff/spectral_measure.hpp"
#include "gapdiff/tridiagonal.hpp"
#include "support/oracles.hpp"

using namespace gapdiff;
using namespace gapdiff::testing;

namespace {

const double kHalfRoot2 = std::sqrt(2.0) / 2.0;

}  // namespace

TEST_CASE("jacobi_matrix examples") {
  const auto one = jacobi_matrix({{2}, {2}});
  CHECK(one.diagonal == std::vector<double>{2});
  CHECK(one.off_diagonal.empty());

  const auto sym = jacobi_matrix({{0.5, 0.5}, {1, 1}});
  CHECK(sym.diagonal == std::vector<double>{1, 1});
  CHECK(sym.off_diagonal[0] == doctest::Approx(0.7071068));

  const auto biased = jacobi_matrix({{0.7, 0.6}, {1, 2}});
  CHECK(biased.diagonal == std::vector<double>{1, 2});
  CHECK(biased.off_diagonal[0] == doctest::Approx(0.7745967));
}

TEST_CASE("tridiagonal_eigen against a known spectrum") {
  // tridiag(-1, 2, -1) of order n: eigenvalues 2 - 2 cos(k pi / (n + 1))
  const std::size_t n = 30;
  std::vector<double> d(n, 2.0), e(n - 1, -1.0);
  const auto eig = tridiagonal_eigen(d, e);
  double norm = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double exact = 2.0 - 2.0 * std::cos(static_cast<double>(k + 1) * M_PI / static_cast<double>(n + 1));
    CHECK(eig.values[k] == doctest::Approx(exact).epsilon(1e-13));
    // first eigenvector component: sqrt(2/(n+1)) sin(k pi / (n+1))
    const double v = std::sqrt(2.0 / (n + 1)) * std::sin(static_cast<double>(k + 1) * M_PI / (n + 1));
    CHECK(std::abs(eig.first_components[k]) == doctest::Approx(std::abs(v)).epsilon(1e-12));
    norm += eig.first_components[k] * eig.first_components[k];
  }
  CHECK(norm == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("tridiagonal_eigen handles split matrices") {
  const std::vector<double> d{3, 1, 2}, e{0, 0};
  const auto eig = tridiagonal_eigen(d, e);
  CHECK(eig.values == std::vector<double>{1, 2, 3});
  CHECK(eig.first_components[2] == doctest::Approx(1.0));
}

TEST_CASE("spectrum: two states") {
  const SpectralMeasure sm = spectrum({{2}, {2}});
  REQUIRE(sm.atoms.size() == 1);
  CHECK(sm.atoms[0].location == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(sm.atoms[0].weight == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("spectrum: symmetric three states") {
  const SpectralMeasure sm = spectrum(jfraction_from_chain(three_state(1, 1, 1, 0.5)));
  REQUIRE(sm.atoms.size() == 2);
  CHECK(std::abs(sm.atoms[0].location - (1 - kHalfRoot2)) < 1e-12);
  CHECK(std::abs(sm.atoms[1].location - (1 + kHalfRoot2)) < 1e-12);
  CHECK(std::abs(sm.atoms[0].weight - 0.25) < 1e-12);
  CHECK(std::abs(sm.atoms[1].weight - 0.25) < 1e-12);
  CHECK(sm.normalization_defect() < 1e-12);
}

TEST_CASE("spectrum diagnostics on random chains") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    const JFraction jf = jfraction_from_chain(random_chain(rng));
    const auto diag = spectrum_with_diagnostics(jf);
    CHECK_NOTHROW(diag.measure.validate());
    CHECK(diag.measure.normalization_defect() <= 1e-10);
    CHECK(diag.weight_discrepancy <= 1e-8);
    CHECK(diag.measure.total_weight() == doctest::Approx(jf.partial_numerators[0]).epsilon(1e-12));
    for (double z : {0.0, 0.1, 1.0, 10.0, 100.0})
      CHECK(rel_err(stieltjes_eval(diag.measure, z), approximant_eval(jf, z)) <= 1e-10);
  }
}

TEST_CASE("zeros of consecutive denominators interlace") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    ChainSpec c = random_chain(rng, 8);
    if (c.size() < 2) continue;
    const JFraction full = jfraction_from_chain(c);
    JFraction trunc = full;
    trunc.partial_numerators.pop_back();
    trunc.partial_denominators.pop_back();
    const auto outer = spectrum_with_diagnostics(full).measure.atoms;
    const auto inner = tridiagonal_eigen(jacobi_matrix(trunc).diagonal, jacobi_matrix(trunc).off_diagonal).values;
    REQUIRE(inner.size() + 1 == outer.size());
    for (std::size_t k = 0; k < inner.size(); ++k) {
      CHECK(outer[k].location < inner[k]);
      CHECK(inner[k] < outer[k + 1].location);
    }
  }
}

TEST_CASE("stieltjes_eval examples") {
  CHECK(stieltjes_eval({{{2, 2}}}, 2.0) == doctest::Approx(0.5));
  const SpectralMeasure sm{{{1 - kHalfRoot2, 0.25}, {1 + kHalfRoot2, 0.25}}};
  CHECK(stieltjes_eval(sm, 1.0) == doctest::Approx(2.0 / 7.0).epsilon(1e-14));
  CHECK(stieltjes_eval(sm, 0.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS(stieltjes_eval(sm, -1.0), Error);
}

TEST_CASE("step_function examples") {
  const SpectralMeasure sm{{{1 - kHalfRoot2, 0.25}, {1 + kHalfRoot2, 0.25}}};
  CHECK(step_function(sm, 1.0) == 0.25);
  CHECK(step_function(sm, 1 - kHalfRoot2) == 0.0);  // jump sits on the half-open side
  CHECK(step_function(sm, -5.0) == 0.0);
  CHECK(step_function(sm, 10.0) == 0.5);
}

TEST_CASE("jacobi_from_atoms examples") {
  const JFraction one = jacobi_from_atoms({{{2, 2}}});
  CHECK(one.partial_numerators == std::vector<double>{2});
  CHECK(one.partial_denominators == std::vector<double>{2});

  const SpectralMeasure sm{{{1 - kHalfRoot2, 0.25}, {1 + kHalfRoot2, 0.25}}};
  const JFraction jf = jacobi_from_atoms(sm);
  CHECK(std::abs(jf.partial_numerators[0] - 0.5) < 1e-10);
  CHECK(std::abs(jf.partial_numerators[1] - 0.5) < 1e-10);
  CHECK(std::abs(jf.partial_denominators[0] - 1.0) < 1e-10);
  CHECK(std::abs(jf.partial_denominators[1] - 1.0) < 1e-10);
}

TEST_CASE("jacobi_from_atoms round trip on random measures") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + trial % 8;
    const SpectralMeasure sm = random_measure(rng, n);
    const SpectralMeasure back = spectrum(jacobi_from_atoms(sm));
    REQUIRE(back.atoms.size() == n);
    for (std::size_t k = 0; k < n; ++k) {
      CHECK(rel_err(back.atoms[k].location, sm.atoms[k].location) <= 1e-8);
      CHECK(rel_err(back.atoms[k].weight, sm.atoms[k].weight) <= 1e-8);
    }
  }
}

TEST_CASE("jacobi_from_atoms round trip from a chain") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    const JFraction jf = jfraction_from_chain(random_chain(rng));
    const JFraction back = jacobi_from_atoms(spectrum(jf));
    for (std::size_t n = 0; n < jf.size(); ++n) {
      CHECK(rel_err(back.partial_numerators[n], jf.partial_numerators[n]) <= 1e-7);
      CHECK(rel_err(back.partial_denominators[n], jf.partial_denominators[n]) <= 1e-7);
    }
  }
}

TEST_CASE("measure validation") {
  CHECK_THROWS_AS((SpectralMeasure{{{-1, 1}}}.validate()), Error);
  CHECK_THROWS_AS((SpectralMeasure{{{1, 0}}}.validate()), Error);
  CHECK_THROWS_AS((SpectralMeasure{{{2, 1}, {1, 1}}}.validate()), Error);
  CHECK_THROWS_AS(jacobi_from_atoms(SpectralMeasure{}), Error);
}
