#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "vdw/profile.hpp"
#include "vdw/quadrature.hpp"

namespace vdw {

// Logarithmic data of the two Helmholtz solutions at one point. With
// u+- = psi+-'/psi+-, the deviations v+- = u+- -+ n kappa stay O(1) where
// u+- themselves grow with kappa, so every derived quantity is formed from
// them without cancellation.
struct WaveSample {
  double x = 0.0;
  double kappa = 0.0;
  double n = 1.0;
  double vp = 0.0;
  double vm = 0.0;
  double Lp = 0.0;  // ln psi+
  double Lm = 0.0;  // ln psi-

  double up() const { return n * kappa + vp; }
  double um() const { return -n * kappa + vm; }
  // u+ - u-, positive for kappa > 0.
  double gap() const { return 2.0 * n * kappa + vp - vm; }
};

// psi'' = kappa^2 n^2 psi with psi+- ~ e^{+-n kappa x} in the exterior
// half-space where the solution decays.
class WaveSolution {
 public:
  virtual ~WaveSolution() = default;

  virtual double kappa() const = 0;
  virtual const SusceptibilityProfile& profile() const = 0;
  // At an interface `side` picks the one-sided limit of n and v.
  virtual WaveSample sample(double x, Side side = Side::right) const = 0;

  // ln|W| for W = psi+ psi-' - psi- psi+' (W < 0), from a reference point.
  virtual double log_abs_wronskian() const;
  double wronskian() const;
  // ln|W| evaluated at x; constant in exact arithmetic.
  double log_abs_wronskian_at(double x) const;

  // Plain values; these overflow once kappa |x| is large.
  double psi_plus(double x) const;
  double psi_minus(double x) const;
  double dpsi_plus(double x) const;
  double dpsi_minus(double x) const;

 protected:
  virtual double reference_point() const { return 0.0; }
};

struct WaveOptions {
  double rel_tol = 1e-13;
  double abs_tol = 1e-13;
  // Integration interval; must contain the profile support. Defaults to it.
  std::optional<double> x_lo;
  std::optional<double> x_hi;
};

// Numerical solution of the Riccati form of the Helmholtz equation, segment
// by segment between interfaces. Throws IntegrationError on step failure.
std::shared_ptr<const WaveSolution> solve_waves(const SusceptibilityProfile& profile, double kappa,
                                                const WaveOptions& options = {});

struct GreenEval {
  double g = 0.0;
  double dg_dx = 0.0;  // one-sided; the mean of both sides at x == x0
  double kappa = 0.0;
  double x = 0.0;
  double x0 = 0.0;
};

// g(x, x0) = psi+(x<) psi-(x>) / W.
GreenEval green(const WaveSolution& ws, double x, double x0);
double green_diagonal(const WaveSolution& ws, double x, Side side = Side::right);
// d/dx g(x, x), i.e. -(u+ + u-)/(u+ - u-).
double green_diagonal_derivative(const WaveSolution& ws, double x, Side side = Side::right);

// kappa^2 chi d/dx g(x, x). Throws InterfaceError at an interface.
double force_density_spectral(const WaveSolution& ws, double x);

// Geometric-scattering amplitude and its x-derivative.
double beta0(const IndexDerivatives& d);
double beta0_prime(const IndexDerivatives& d);

// -((n^2 - 1)/2) d/dx (kappa/n + beta0/(kappa n^3)).
double force_density_asymptotics(const SusceptibilityProfile& profile, double x, double kappa);
// Coefficients c, d of the asymptote c kappa + d / kappa.
struct AsymptoteCoefficients {
  double linear = 0.0;
  double inverse = 0.0;
};
AsymptoteCoefficients force_density_asymptote_coefficients(const SusceptibilityProfile& profile,
                                                           double x);

struct MadelungState {
  double k = 0.0;
  double dk = 0.0;
  double beta = 0.0;
  double beta0 = 0.0;
};

// k = -1/(2 g(x,x)); k' from the Riccati equations; beta from the Schwarzian
// form; beta0 from the profile derivatives. Throws StateError if g >= 0.
MadelungState madelung_state(const WaveSolution& ws, double x);

struct DensityConfig {
  QuadratureConfig quad;
  WaveOptions waves;
  // Divergence fit: partial integrals over [k0, k0 r^m] split in `segments`.
  double fit_kappa_start = 20.0;
  double fit_ratio = 2.0;
  int fit_segments = 5;
};

struct IntegratedDensity {
  double value = 0.0;  // full integral, or the partial one up to kappa_max
  double est_error = 0.0;
  bool divergent = false;
  double kappa_max = 0.0;          // cutoff of the partial value when divergent
  double growth_coefficient = 0.0;  // fitted c in f~ ~ c kappa + d / kappa
  double inverse_coefficient = 0.0;
  double expected_growth = 0.0;    // -((n^2-1)/2) d/dx(1/n)
};

// f(x) = (1/2pi) int f~ dkappa. Where the profile gradient makes the integral
// diverge, reports the partial integral and the fitted growth instead of
// failing.
IntegratedDensity integrated_force_density(const SusceptibilityProfile& profile, double x,
                                           const DensityConfig& cfg = {});

}  // namespace vdw
