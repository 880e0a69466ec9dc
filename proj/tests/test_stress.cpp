#include <cmath>
#include <numbers>

#include "doctest.h"
#include "vdw/errors.hpp"
#include "vdw/stress.hpp"

using namespace vdw;

namespace {

const SusceptibilityProfile& sech2() {
  static const auto p = SusceptibilityProfile::sech2(1.0, 1.0);
  return p;
}

// Least-squares slope of log|y| against log kappa.
template <class F>
double log_slope(F f, double k0, double k1, int n) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < n; ++i) {
    const double k = k0 * std::pow(k1 / k0, double(i) / (n - 1));
    const double lx = std::log(k), ly = std::log(std::abs(f(k)));
    sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

TEST_CASE("vacuum stresses") {
  const auto ws = solve_waves(SusceptibilityProfile::vacuum(), 3.0);
  const auto b = spectral_stresses(*ws, 0.4);
  CHECK(b.sigma_E == doctest::Approx(1.5).epsilon(1e-13));
  CHECK(b.sigma_M == doctest::Approx(1.5).epsilon(1e-13));
  CHECK(b.p_Ab == 0.0);
  CHECK(b.total() == doctest::Approx(3.0).epsilon(1e-13));
}

TEST_CASE("uniform medium stresses") {
  const auto p = SusceptibilityProfile(PiecewiseConstant{{}, {1.25}});
  const auto ws = solve_waves(p, 2.0, {.x_lo = -1.0, .x_hi = 1.0});
  const auto b = spectral_stresses(*ws, 0.0);
  CHECK(b.total() == doctest::Approx(2.0 * 1.5).epsilon(1e-13));
  CHECK(b.p_Ab == doctest::Approx(-1.25 * 4.0 / (2.0 * 1.5 * 2.0)).epsilon(1e-13));
  const auto e = effective_stresses(*ws, p, 0.0, 2.0);
  CHECK(std::abs(e.total_eff()) < 1e-13);
}

TEST_CASE("Madelung forms reproduce the stresses") {
  for (double kappa : {1.0, 8.0, 50.0}) {
    const auto ws = solve_waves(sech2(), kappa);
    for (double x : {-0.7, 0.1, 1.3}) {
      const auto b = spectral_stresses(*ws, x), m = spectral_stresses_madelung(*ws, x);
      CHECK(m.sigma_E == doctest::Approx(b.sigma_E).epsilon(1e-8));
      CHECK(m.sigma_M == doctest::Approx(b.sigma_M).epsilon(1e-8));
    }
  }
}

TEST_CASE("stress divergence equals the Abraham force") {
  for (double kappa : {1.0, 8.0}) {
    const auto ws = solve_waves(sech2(), kappa);
    auto S = [&](double y) { return spectral_stresses(*ws, y).total(); };
    for (double x : {-1.1, -0.3, 0.25, 0.9}) {
      const double h = 1e-3;
      const double d = (-S(x + 2 * h) + 8 * S(x + h) - 8 * S(x - h) + S(x - 2 * h)) / (12 * h);
      const auto b = spectral_stresses(*ws, x);
      const auto dd = sech2().derivatives(x);
      CHECK(std::abs(d - 2.0 * dd.dn / dd.n * b.sigma_E) < 1e-9 * kappa * dd.n);
    }
  }
}

TEST_CASE("effective stresses keep the momentum balance") {
  const auto& p = sech2();
  const double x = 0.3;
  for (double kappa : {2.0, 15.0}) {
    const auto ws = solve_waves(p, kappa);
    auto eff = [&](double y) { return effective_stresses(*ws, p, y, kappa); };
    auto local_total = [&](double y) {
      const auto l = local_stresses(p, y, kappa);
      return l.sigma_E0 + l.sigma_M0;
    };
    const double h = 1e-3;
    const double d = (-eff(x + 2 * h).total_eff() + 8 * eff(x + h).total_eff() -
                      8 * eff(x - h).total_eff() + eff(x - 2 * h).total_eff()) / (12 * h);
    const auto dd = p.derivatives(x);
    CHECK(d == doctest::Approx(2.0 * dd.dn / dd.n * eff(x).sigma_E_eff).epsilon(1e-6).scale(1e-9));
    // Without the anomaly the local parts alone break the balance.
    const double dl = (-local_total(x + 2 * h) + 8 * local_total(x + h) - 8 * local_total(x - h) +
                       local_total(x - 2 * h)) / (12 * h);
    const double local_abraham = 2.0 * dd.dn / dd.n * local_stresses(p, x, kappa).sigma_E0;
    CHECK(std::abs(dl - local_abraham) > 1e-3 * std::abs(local_abraham));
  }
}

TEST_CASE("local stresses at the symmetry point") {
  const auto& p = sech2();
  const auto l0 = local_stresses(p, 0.0, 4.0);
  const double n0 = std::sqrt(2.0);
  CHECK(l0.sigma_E0 == doctest::Approx(2.0 * n0).epsilon(1e-14));
  CHECK(l0.sigma_M0 == doctest::Approx(2.0 * n0 + p.derivatives(0.0).d2n / (4.0 * 4.0 * n0 * n0)).epsilon(1e-13));
}

TEST_CASE("local Green function") {
  const auto& p = sech2();
  for (double kappa : {1.0, 8.0}) {
    const auto ws = solve_waves(p, kappa);
    const double x0 = 0.1;
    const auto lg = local_green_coefficients(*ws, x0);
    CHECK(local_green_value(*ws, lg, x0, Side::left) ==
          doctest::Approx(local_green_value(*ws, lg, x0, Side::right)).epsilon(1e-12));
    const double jump = local_green_dx(*ws, lg, x0, Side::right) - local_green_dx(*ws, lg, x0, Side::left);
    CHECK(jump == doctest::Approx(1.0).epsilon(1e-12));
    const auto from_g = local_stresses_from_green(*ws, x0);
    const auto closed = local_stresses(p, x0, kappa);
    CHECK(from_g.sigma_E0 == doctest::Approx(closed.sigma_E0).epsilon(1e-9));
    CHECK(from_g.sigma_M0 == doctest::Approx(closed.sigma_M0).epsilon(1e-7));
  }
  const auto v = SusceptibilityProfile(PiecewiseConstant{{}, {0.44}});
  const auto ws = solve_waves(v, 3.0, {.x_lo = -1.0, .x_hi = 1.0});
  const auto lg = local_green_coefficients(*ws, 0.2);
  for (double x : {-0.3, 0.1, 0.5})
    CHECK(local_green_value(*ws, lg, x) == doctest::Approx(green(*ws, x, 0.2).g).epsilon(1e-12));
}

TEST_CASE("legacy renormalizer") {
  const auto& p = sech2();
  const auto hom = SusceptibilityProfile(PiecewiseConstant{{}, {0.69}});
  const double n = std::sqrt(1.69);
  CHECK(legacy_renormalizer(hom, 0.0, 0.01, 5.0) ==
        doctest::Approx(-std::exp(-n * 5.0 * 0.01) / (2 * n * 5.0)).epsilon(1e-13));
  const double kappa = 6.0, x0 = 0.2;
  const double g00 = legacy_renormalizer(p, x0, x0, kappa);
  CHECK(g00 == doctest::Approx(-1.0 / (2.0 * p.n(x0) * kappa)).epsilon(1e-13));
  CHECK_THROWS_AS(legacy_renormalizer(p, x0, x0 + 1.0, kappa), DomainError);
  const auto lit = legacy_stresses(p, x0, kappa, {.literal_s = true});
  CHECK(std::isfinite(lit.sigma_M0));
  const double slope = log_slope(
      [&](double k) { return legacy_stresses(p, x0, k).sigma_M0 - local_stresses(p, x0, k).sigma_M0; },
      20.0, 200.0, 6);
  CHECK(slope < -1.5);
}

TEST_CASE("effective stresses vanish fast at high frequency") {
  const auto& p = sech2();
  const double x = 0.3;
  const double slope = log_slope(
      [&](double k) {
        const auto ws = solve_waves(p, k);
        return effective_stresses(*ws, p, x, k).total_eff();
      },
      20.0, 200.0, 6);
  CHECK(slope == doctest::Approx(-3.0).epsilon(0.07));
}

TEST_CASE("locality cutoff") {
  const auto& p = sech2();
  const double x = 0.5;
  const double kmin = kappa_min_cutoff(p, x);
  const auto d = p.derivatives(x);
  CHECK(kmin == doctest::Approx(10.0 * std::abs(d.dn / d.n) / (2.0 * std::numbers::pi * d.n)));
  const auto ws = solve_waves(p, 0.5 * kmin);
  CHECK_THROWS_AS(effective_stresses(*ws, p, x, 0.5 * kmin), LocalityError);
  CHECK_NOTHROW(effective_stresses(*ws, p, x, 0.5 * kmin, {.margin = 10.0, .kappa_min = 0.1 * kmin}));
  CHECK_THROWS_AS(effective_stresses(*ws, p, x, 2.0 * kmin), RangeError);
  CHECK(kappa_min_cutoff(p, 0.0) == 0.0);
}

TEST_CASE("total stress asymptote") {
  const auto& p = sech2();
  const double x = 0.1;
  double prev = 0.0;
  for (double k : {20.0, 40.0, 80.0}) {
    const auto ws = solve_waves(p, k);
    const double r = std::abs(spectral_stresses(*ws, x).total() - total_stress_asymptote(p, x, k));
    if (prev > 0.0) CHECK(r < prev / 6.0);
    prev = r;
  }
}

TEST_CASE("field correlations") {
  const auto v = SusceptibilityProfile::vacuum();
  CHECK(field_correlation(v, 1.0, 0.0) == doctest::Approx(-1.0 / (4.0 * std::numbers::pi)).epsilon(1e-9));
  CHECK(field_correlation(v, 0.5, 0.0) == doctest::Approx(-1.0 / std::numbers::pi).epsilon(1e-9));
  CHECK_THROWS_AS(correlation_k(v, 1.0, 0.0, 1.0, 1e-3), DomainError);
  CHECK_THROWS_AS(correlation_k(v, 1.0, 0.0, 0.5, 0.0), RangeError);
  // Vacuum: K(t) = (E1((d - t) kappa_ir) + E1((d + t) kappa_ir)) / (4 pi), d = |x1 - x0|.
  const double kir = 1e-2, d = 1.0, t = 0.3;
  const double expect =
      (-std::expint(-(d - t) * kir) - std::expint(-(d + t) * kir)) / (4.0 * std::numbers::pi);
  CHECK(correlation_k(v, 1.0, 0.0, t, kir) == doctest::Approx(expect).epsilon(1e-8));
  // -K''(0)/2 is the equal-time field correlation.
  const double h = 1e-2;
  const double k2 = (correlation_k(v, d, 0.0, h, kir) - 2 * correlation_k(v, d, 0.0, 0.0, kir) +
                     correlation_k(v, d, 0.0, -h, kir)) / (h * h);
  CHECK(-0.5 * k2 == doctest::Approx(field_correlation(v, d, 0.0)).epsilon(1e-3));
}
