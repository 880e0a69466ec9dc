#include <cmath>

#include "doctest.h"
#include "vdw/errors.hpp"
#include "vdw/profile.hpp"

using namespace vdw;

TEST_CASE("chain from a sech^2 profile") {
  const auto p = SusceptibilityProfile::sech2(1.0, 0.15);
  const auto c = chain_from_profile(p, 101, -0.5, 0.5);
  CHECK(c.size() == 101);
  CHECK(c.spacing() == doctest::Approx(0.01).epsilon(1e-14));
  CHECK(c.alpha(50) == doctest::Approx(0.01).epsilon(1e-14));
  for (std::size_t i = 0; i < c.size(); ++i) CHECK(c.chi(i) == doctest::Approx(p.chi(c.position(i))));
}

TEST_CASE("chain from piecewise profiles") {
  const auto zero = chain_from_profile(SusceptibilityProfile::vacuum(), 5, 0.0, 1.0);
  for (std::size_t i = 0; i < 5; ++i) CHECK(zero.alpha(i) == 0.0);
  const auto block = chain_from_profile(SusceptibilityProfile::homogeneous_block(0.0, 1.0, 2.0), 51,
                                        0.0, 1.0);
  CHECK(block.spacing() == doctest::Approx(0.02).epsilon(1e-14));
  for (std::size_t i = 0; i < 51; ++i) CHECK(block.alpha(i) == doctest::Approx(0.04).epsilon(1e-13));
  const auto one = chain_from_profile(SusceptibilityProfile::sech2(1.0, 1.0), 1, 0.0, 2.0);
  CHECK(one.spacing() == 2.0);
}

TEST_CASE("chain invariants") {
  CHECK_THROWS_AS(ScattererChain({0.0, 1.0, 2.5}, {0.1, 0.1, 0.1}, 1.0), EvaluationError);
  CHECK_THROWS_AS(ScattererChain({0.0, 1.0}, {0.1, -0.1}, 1.0), EvaluationError);
  CHECK_THROWS_AS(ScattererChain({0.0, 1.0}, {0.1}, 1.0), EvaluationError);
  CHECK_THROWS_AS(chain_from_profile(SusceptibilityProfile::vacuum(), 0, 0.0, 1.0), Error);
  const auto c = ScattererChain::uniform(1.0, 0.5, {0.1, 0.2, 0.1});
  CHECK(c.position(2) == 2.0);
  CHECK(c.mirror_symmetric());
  CHECK(c.hash() == ScattererChain::uniform(1.0, 0.5, {0.1, 0.2, 0.1}).hash());
  CHECK(c.hash() != ScattererChain::uniform(1.0, 0.5, {0.1, 0.2, 0.2}).hash());
}

TEST_CASE("index and susceptibility stay consistent") {
  const SusceptibilityProfile profiles[] = {
      SusceptibilityProfile::sech2(1.0, 0.15), SusceptibilityProfile::three_layer(1.0, 2.0, 1.5, 1.0),
      SusceptibilityProfile(Tabulated{{0.0, 0.3, 0.7, 1.0}, {0.0, 0.5, 0.2, 0.0}, 3})};
  for (const auto& p : profiles) {
    for (double x = -1.0; x <= 2.0; x += 0.0137) {
      const double n = p.n(x);
      CHECK(std::abs(n * n - 1.0 - p.chi(x)) < 1e-12);
      CHECK(n >= 1.0);
    }
  }
}

TEST_CASE("derivatives of homogeneous regions and the sech^2 peak") {
  const auto layers = SusceptibilityProfile::three_layer(1.0, 2.0, 1.5, 1.0);
  const auto d = layers.derivatives(0.5);
  CHECK(d.n == 2.0);
  CHECK(d.dn == 0.0);
  CHECK(d.d2n == 0.0);
  CHECK_THROWS_AS(layers.derivatives(0.0), InterfaceError);
  CHECK(layers.is_interface(1.0));
  const auto s = SusceptibilityProfile::sech2(1.0, 0.15);
  const auto d0 = s.derivatives(0.0);
  CHECK(d0.n == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(std::abs(d0.dn) < 1e-15);
}

TEST_CASE("sech^2 derivatives converge under central differences at second order") {
  const auto s = SusceptibilityProfile::sech2(1.0, 0.15);
  const double x = 0.1;
  const auto d = s.derivatives(x);
  double prev_err = 0.0;
  for (double h : {1e-3, 1e-4}) {
    const double fd1 = (s.n(x + h) - s.n(x - h)) / (2 * h);
    const double fd2 = (s.n(x + h) - 2 * s.n(x) + s.n(x - h)) / (h * h);
    const double err = std::abs(fd1 - d.dn);
    CHECK(std::abs(fd2 - d.d2n) < 1e-3 * std::abs(d.d2n) + 1e-4);
    if (prev_err > 0.0) {
      const double order = std::log10(prev_err / err);
      CHECK(order == doctest::Approx(2.0).epsilon(0.1));
    }
    prev_err = err;
  }
  // Third derivative against differences of the analytic second derivative.
  const double h = 1e-5;
  const double fd3 = (s.derivatives(x + h).d2n - s.derivatives(x - h).d2n) / (2 * h);
  CHECK(fd3 == doctest::Approx(d.d3n).epsilon(1e-6));
}

TEST_CASE("tabulated profile and reconstruction from a chain") {
  const auto c = chain_from_profile(SusceptibilityProfile::sech2(1.0, 0.15), 41, -0.4, 0.4);
  const auto t = profile_from_chain(c);
  for (std::size_t i = 0; i + 1 < c.size(); ++i) CHECK(t.chi(c.position(i)) == c.chi(i));
  // The grid ends are discontinuities; chi() takes the right-hand limit.
  CHECK(t.chi_side(c.position(c.size() - 1), Side::left) == c.chi(c.size() - 1));
  CHECK(t.chi(c.position(c.size() - 1)) == 0.0);
  CHECK(t.kind_name() == "tabulated");
  CHECK(t.fd_step() >= 1e-6);
}
