#pragma once

#include <complex>
#include <memory>
#include <utility>

#include "vdw/profile.hpp"
#include "vdw/quadrature.hpp"
#include "vdw/transfer.hpp"
#include "vdw/waves.hpp"

namespace vdw {

// Layer n1 on x < 0, n2 on 0 < x < a, n3 on x > a.
struct ThreeLayerConfig {
  double n1 = 1.0;
  double n2 = 1.0;
  double n3 = 1.0;
  double a = 1.0;

  double rho_l() const { return (n2 - n1) / (n2 + n1); }
  double rho_r() const { return (n2 - n3) / (n2 + n3); }
  void validate() const;  // throws RangeError
  SusceptibilityProfile profile() const;
};

// g(x, x) in the three regions. Throws InterfaceError at x = 0 or x = a.
double three_layer_green_diag(const ThreeLayerConfig& cfg, double kappa, double x);

// Central-layer g(x, x) with the multiple-reflection factor replaced by its
// geometric series truncated after `terms` terms.
double three_layer_green_diag_series(const ThreeLayerConfig& cfg, double kappa, double x,
                                     int terms);

// Frequency-integrated van der Waals force density for non-dispersive layers
// (hbar c = 1). Throws InterfaceError at the interfaces.
double lerch_force_density(const ThreeLayerConfig& cfg, double x);

struct LayerStresses {
  double kappa = 0.0;
  double sigma1 = 0.0;
  double sigma2 = 0.0;
  double sigma3 = 0.0;
};
LayerStresses layer_stresses(const ThreeLayerConfig& cfg, double kappa);

// sigma2 - n2 kappa - (sigma1 - n1 kappa): the nonlocal stress jump at x = 0.
double nonlocal_stress_jump(const ThreeLayerConfig& cfg, double kappa);

struct LifshitzForce {
  double F_l = 0.0;
  double F_r = 0.0;
  double est_error = 0.0;
  double closed_form = 0.0;  // (n2/pi) Li2(rho_l rho_r) / (2 n2 a)^2
};
LifshitzForce lifshitz_force(const ThreeLayerConfig& cfg, const QuadratureConfig& quad = {});

// Li2(z) for |z| <= 1.
double dilog(double z);

// ---- Interface transfer and reflection coefficients ----
// Amplitudes are ordered (e^{-n kappa x}, e^{+n kappa x}) with the interface
// at the local origin.
Transfer2 interface_transfer(double n_from, double n_to);
Transfer2 layer_propagation(double n, double kappa, double length);
// rho with T (0, 1)^T proportional to (rho, 1)^T.
double reflection_from_transfer(const Transfer2& t);
// Reflection of the whole central layer seen from the left, from the composed
// transfer matrix.
double central_layer_reflection(const ThreeLayerConfig& cfg, double kappa);
// Closed form -(rho_l - rho_r E)/(1 - rho_l rho_r E) with E = e^{-2 n2 kappa a}.
double central_layer_reflection_closed(const ThreeLayerConfig& cfg, double kappa);
// Multiple-reflection expansion truncated after `terms` round trips.
double central_layer_reflection_series(const ThreeLayerConfig& cfg, double kappa, int terms);

// ---- sech^2 profile ----
struct Sech2Config {
  double chi0 = 1.0;
  double a = 1.0;

  void validate() const;  // throws RangeError
  // (nu_+, nu_-); complex conjugates above kappa = 1/(2 a sqrt(chi0)).
  std::pair<std::complex<double>, std::complex<double>> nu(double kappa) const;
  SusceptibilityProfile profile() const;
};

// Closed-form waves psi+ = e^{kappa x} 2F1(nu-, nu+; kappa a + 1; zeta),
// psi-(x) = psi+(-x), zeta = (1 + tanh(x/a))/2.
class Sech2Waves final : public WaveSolution {
 public:
  Sech2Waves(const Sech2Config& cfg, double kappa);

  double kappa() const override { return kappa_; }
  const SusceptibilityProfile& profile() const override { return profile_; }
  WaveSample sample(double x, Side side = Side::right) const override;
  // From the Gamma-function closed form.
  double log_abs_wronskian() const override;

  // ln psi+ and psi+'/psi+ at x.
  std::pair<double, double> plus_log_and_ratio(double x) const;

 private:
  Sech2Config cfg_;
  SusceptibilityProfile profile_;
  double kappa_;
  std::complex<double> nu_p_, nu_m_;
};

std::shared_ptr<const Sech2Waves> sech2_waves(const Sech2Config& cfg, double kappa);

// psi+ ~ decaying e^{-kappa x} + growing e^{kappa x} for x -> +infinity.
struct Sech2Asymptotics {
  double decaying = 0.0;
  double growing = 0.0;
  double wronskian = 0.0;  // -2 kappa * growing
};
// Throws PoleError when kappa a is a positive integer and the decaying
// coefficient is singular (logarithmic connection case).
Sech2Asymptotics sech2_asymptotic_split(const Sech2Config& cfg, double kappa);

}  // namespace vdw
