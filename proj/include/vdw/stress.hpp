#pragma once

#include <optional>

#include "vdw/profile.hpp"
#include "vdw/quadrature.hpp"
#include "vdw/waves.hpp"

namespace vdw {

// Spectral stresses at (x, kappa), units of kappa with hbar c = 1.
struct StressBundle {
  double x = 0.0;
  double kappa = 0.0;
  double sigma_E = 0.0;
  double sigma_M = 0.0;
  double p_Ab = 0.0;
  double sigma_E0 = 0.0;
  double sigma_M0 = 0.0;
  double anomaly = 0.0;  // beta0 / (2 kappa n)
  double sigma_E_eff = 0.0;
  double sigma_M_eff = 0.0;

  double total() const { return sigma_E + sigma_M; }
  double total_eff() const { return sigma_E_eff + sigma_M_eff; }
};

// sigma_E = -n^2 kappa^2 g(x,x), sigma_M = psi+' psi-' / W, p_Ab = chi kappa^2 g(x,x).
// Only those three fields (and x, kappa) are filled. Throws InterfaceError.
StressBundle spectral_stresses(const WaveSolution& ws, double x);

// Same stresses through the Madelung forms n^2 kappa^2/(2k), k/2 - k'^2/(8k^3).
StressBundle spectral_stresses_madelung(const WaveSolution& ws, double x);

// kappa n - n'^2 / (8 kappa n^3).
double total_stress_asymptote(const SusceptibilityProfile& profile, double x, double kappa);

// Coefficients of the local Green function
//   g0 = c_{+-} psi+ + c_{--} psi-  (x < x0),  c_{++} psi+ + c_{-+} psi-  (x > x0).
// `raw` are the coefficients themselves (they over/underflow for large
// kappa |x0|); `scaled` are c_{+a} psi+(x0) and c_{-a} psi-(x0).
struct LocalGreen {
  double x0 = 0.0;
  double kappa = 0.0;
  struct Set {
    double pp = 0.0, pm = 0.0, mp = 0.0, mm = 0.0;
  };
  Set raw;
  Set scaled;
};

LocalGreen local_green_coefficients(const WaveSolution& ws, double x0);

// g0(x, x0) and d/dx g0 from the scaled coefficients. At x == x0 the branch
// is picked by `side` (right means x0 + 0).
double local_green_value(const WaveSolution& ws, const LocalGreen& lg, double x,
                         Side side = Side::right);
double local_green_dx(const WaveSolution& ws, const LocalGreen& lg, double x,
                      Side side = Side::right);

struct LocalStresses {
  double sigma_E0 = 0.0;
  double sigma_M0 = 0.0;
};

// kappa n/2 and kappa n/2 + d/dx(n' / (4 kappa n^2)).
LocalStresses local_stresses(const SusceptibilityProfile& profile, double x, double kappa);

// The same two stresses evaluated from g0 itself, with the mixed derivative
// taken by central differences in x0 (step h).
LocalStresses local_stresses_from_green(const WaveSolution& ws, double x0, double h = 1e-4);

// margin |n'/n| / (2 pi n) at x.
double kappa_min_cutoff(const SusceptibilityProfile& profile, double x, double margin = 10.0);

struct EffectiveOptions {
  double margin = 10.0;
  std::optional<double> kappa_min;  // overrides the margin rule
};

// Full bundle including local parts, anomaly and effective stresses.
// Throws LocalityError below the low-frequency cutoff.
StressBundle effective_stresses(const WaveSolution& ws, const SusceptibilityProfile& profile,
                                double x, double kappa, const EffectiveOptions& opt = {});

struct LegacyOptions {
  // Literal first-scattering term beta1 s / kappa instead of the default
  // beta1 (x - x0) / kappa.
  bool literal_s = false;
  // Validity radius for |x - x0|; default 0.1 min(L, 1/(kappa n0)) with L the
  // profile scale (a for sech^2, n/|n'| otherwise).
  std::optional<double> radius;
};

// Geometrical-optics renormalizer built from the quadratic expansion of n
// about x0. Throws DomainError outside the validity radius.
double legacy_renormalizer(const SusceptibilityProfile& profile, double x0, double x, double kappa,
                           const LegacyOptions& opt = {});

// Stresses generated by the legacy renormalizer (closed form of its
// small-distance expansion).
LocalStresses legacy_stresses(const SusceptibilityProfile& profile, double x0, double kappa,
                              const LegacyOptions& opt = {});

struct CorrelationConfig {
  QuadratureConfig quad;
  WaveOptions waves;
};

// (1/2pi) int kappa^2 g(x1, x0) dkappa, i.e. (eps0/2) <E1 E0> at equal times.
double field_correlation(const SusceptibilityProfile& profile, double x1, double x0,
                         const CorrelationConfig& cfg = {});

// K(t) = -(1/pi) int_{kappa_ir}^inf g(x1, x0) cosh(kappa t) dkappa. The 1D
// integrand behaves like 1/kappa at small kappa, so an infrared cutoff is
// required. Throws DomainError on or inside the light cone.
double correlation_k(const SusceptibilityProfile& profile, double x1, double x0, double t,
                     double kappa_ir, const CorrelationConfig& cfg = {});

}  // namespace vdw
