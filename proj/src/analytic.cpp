#include "vdw/analytic.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "vdw/errors.hpp"
#include "vdw/specfun.hpp"

namespace vdw {

using specfun::cplx;

void ThreeLayerConfig::validate() const {
  if (!(n1 >= 1.0 && n2 >= 1.0 && n3 >= 1.0))
    throw RangeError("three-layer indices must be >= 1");
  if (!(a > 0.0 && std::isfinite(a))) throw RangeError("three-layer thickness must be positive");
}

SusceptibilityProfile ThreeLayerConfig::profile() const {
  validate();
  return SusceptibilityProfile::three_layer(n1, n2, n3, a);
}

namespace {

void check_kappa(double kappa) {
  if (!(kappa > 0.0 && std::isfinite(kappa))) throw RangeError("kappa must be positive and finite");
}

void check_off_interface(const ThreeLayerConfig& cfg, double x) {
  if (x == 0.0 || x == cfg.a) {
    std::ostringstream os;
    os << "three-layer quantity requested at interface x = " << x;
    throw InterfaceError(os.str());
  }
}

}  // namespace

double three_layer_green_diag(const ThreeLayerConfig& cfg, double kappa, double x) {
  return three_layer_green_diag_series(cfg, kappa, x, -1);
}

double three_layer_green_diag_series(const ThreeLayerConfig& cfg, double kappa, double x,
                                     int terms) {
  cfg.validate();
  check_kappa(kappa);
  check_off_interface(cfg, x);
  const double rl = cfg.rho_l(), rr = cfg.rho_r();
  const double E = std::exp(-2.0 * cfg.n2 * kappa * cfg.a);
  const double q = rl * rr * E;
  double resum;  // 1 / (1 - q)
  if (terms < 0) {
    resum = 1.0 / (1.0 - q);
  } else {
    resum = 0.0;
    double t = 1.0;
    for (int m = 0; m < terms; ++m, t *= q) resum += t;
  }
  if (x < 0.0) {
    const double nk = cfg.n1 * kappa;
    return (-1.0 + (rl - rr * E) * resum * std::exp(2.0 * nk * x)) / (2.0 * nk);
  }
  if (x > cfg.a) {
    const double nk = cfg.n3 * kappa;
    return (-1.0 + (rr - rl * E) * resum * std::exp(2.0 * nk * (cfg.a - x))) / (2.0 * nk);
  }
  const double nk = cfg.n2 * kappa;
  const double pos = rl * std::exp(-2.0 * nk * x) + rr * std::exp(2.0 * nk * (x - cfg.a));
  // (1 + q)/(1 - q) = 1 + 2 q/(1 - q)
  return -(1.0 + 2.0 * q * resum + pos * resum) / (2.0 * nk);
}

double lerch_force_density(const ThreeLayerConfig& cfg, double x) {
  cfg.validate();
  check_off_interface(cfg, x);
  const double rl = cfg.rho_l(), rr = cfg.rho_r();
  const double z = rl * rr;
  const double scale = 2.0 * cfg.n2 * cfg.a;
  const double pre = 1.0 / (std::numbers::pi * scale * scale * scale);
  auto psi = [z](double xi) { return specfun::lerch_phi3(z, xi); };
  if (x < 0.0) {
    const double xi = -cfg.n1 * x / (cfg.n2 * cfg.a);
    const double left = rl == 0.0 ? 0.0 : rl * psi(xi);
    const double right = rr == 0.0 ? 0.0 : rr * psi(1.0 + xi);
    return pre * (cfg.n1 * cfg.n1 - 1.0) * (left - right);
  }
  if (x > cfg.a) {
    const double xi = cfg.n3 * (x - cfg.a) / (cfg.n2 * cfg.a);
    const double left = rl == 0.0 ? 0.0 : rl * psi(1.0 + xi);
    const double right = rr == 0.0 ? 0.0 : rr * psi(xi);
    return pre * (cfg.n3 * cfg.n3 - 1.0) * (left - right);
  }
  const double left = rl == 0.0 ? 0.0 : rl * psi(x / cfg.a);
  const double right = rr == 0.0 ? 0.0 : rr * psi(1.0 - x / cfg.a);
  return pre * (cfg.n2 * cfg.n2 - 1.0) * (left - right);
}

LayerStresses layer_stresses(const ThreeLayerConfig& cfg, double kappa) {
  cfg.validate();
  check_kappa(kappa);
  LayerStresses s;
  s.kappa = kappa;
  s.sigma1 = cfg.n1 * kappa;
  s.sigma3 = cfg.n3 * kappa;
  s.sigma2 = cfg.n2 * kappa + nonlocal_stress_jump(cfg, kappa);
  return s;
}

double nonlocal_stress_jump(const ThreeLayerConfig& cfg, double kappa) {
  const double q = cfg.rho_l() * cfg.rho_r() * std::exp(-2.0 * cfg.n2 * kappa * cfg.a);
  return 2.0 * cfg.n2 * kappa * q / (1.0 - q);
}

double dilog(double z) {
  if (!(std::abs(z) <= 1.0)) throw RangeError("dilog: |z| must not exceed 1");
  if (z == 1.0) return std::numbers::pi * std::numbers::pi / 6.0;
  if (z == -1.0) return -std::numbers::pi * std::numbers::pi / 12.0;
  if (z > 0.5) {
    // Euler reflection keeps the series argument small.
    return std::numbers::pi * std::numbers::pi / 6.0 - std::log(z) * std::log1p(-z) - dilog(1.0 - z);
  }
  if (z < -0.5) {
    // Li2(z) + Li2(-z) = Li2(z^2) / 2 with z^2 in (0.25, 1).
    return 0.5 * dilog(z * z) - dilog(-z);
  }
  double sum = 0.0, p = z;
  for (int m = 1; m < 2000; ++m, p *= z) {
    const double t = p / (double(m) * m);
    sum += t;
    if (std::abs(t) <= 1e-17 * std::abs(sum)) break;
  }
  return sum;
}

LifshitzForce lifshitz_force(const ThreeLayerConfig& cfg, const QuadratureConfig& quad) {
  cfg.validate();
  LifshitzForce out;
  const double z = cfg.rho_l() * cfg.rho_r();
  const double scale = 2.0 * cfg.n2 * cfg.a;
  out.closed_form = cfg.n2 * dilog(z) / (std::numbers::pi * scale * scale);
  if (z == 0.0) return out;
  const std::function<double(double)> f = [&](double kappa) {
    return nonlocal_stress_jump(cfg, kappa);
  };
  const QuadratureResult r = romberg_integrate(f, quad);
  out.F_l = r.value / (2.0 * std::numbers::pi);
  out.F_r = -out.F_l;
  out.est_error = r.est_error / (2.0 * std::numbers::pi);
  return out;
}

Transfer2 interface_transfer(double n_from, double n_to) {
  if (!(n_from >= 1.0 && n_to >= 1.0)) throw RangeError("interface_transfer: indices must be >= 1");
  const double s = 0.5 / n_to;
  const double p = (n_to + n_from) * s, m = (n_to - n_from) * s;
  return {p, m, m, p};
}

Transfer2 layer_propagation(double n, double kappa, double length) {
  const double e = n * kappa * length;
  return {std::exp(-e), 0.0, 0.0, std::exp(e)};
}

double reflection_from_transfer(const Transfer2& t) { return t.m12 / t.m22; }

double central_layer_reflection(const ThreeLayerConfig& cfg, double kappa) {
  cfg.validate();
  check_kappa(kappa);
  const Transfer2 m = interface_transfer(cfg.n2, cfg.n3) *
                      layer_propagation(cfg.n2, kappa, cfg.a) *
                      interface_transfer(cfg.n1, cfg.n2);
  // Outgoing to the right: the e^{+n3 kappa x} amplitude vanishes.
  return -m.m21 / m.m22;
}

double central_layer_reflection_closed(const ThreeLayerConfig& cfg, double kappa) {
  const double rl = cfg.rho_l(), rr = cfg.rho_r();
  const double E = std::exp(-2.0 * cfg.n2 * kappa * cfg.a);
  return -(rl - rr * E) / (1.0 - rl * rr * E);
}

double central_layer_reflection_series(const ThreeLayerConfig& cfg, double kappa, int terms) {
  const double rl = cfg.rho_l(), rr = cfg.rho_r();
  const double E = std::exp(-2.0 * cfg.n2 * kappa * cfg.a);
  const double q = rl * rr * E;
  double sum = 0.0, t = 1.0;
  for (int m = 0; m < terms; ++m, t *= q) sum += t;
  return -rl + (1.0 - rl * rl) * rr * E * sum;
}

// ---------------------------------------------------------------------------

void Sech2Config::validate() const {
  if (!(chi0 > 0.0 && std::isfinite(chi0))) throw RangeError("sech2: chi0 must be positive");
  if (!(a > 0.0 && std::isfinite(a))) throw RangeError("sech2: a must be positive");
}

std::pair<cplx, cplx> Sech2Config::nu(double kappa) const {
  const double disc = 1.0 - 4.0 * chi0 * a * a * kappa * kappa;
  const cplx root = disc >= 0.0 ? cplx(std::sqrt(disc), 0.0) : cplx(0.0, std::sqrt(-disc));
  return {0.5 * (1.0 + root), 0.5 * (1.0 - root)};
}

SusceptibilityProfile Sech2Config::profile() const {
  validate();
  return SusceptibilityProfile::sech2(chi0, a);
}

Sech2Waves::Sech2Waves(const Sech2Config& cfg, double kappa)
    : cfg_(cfg), profile_(cfg.profile()), kappa_(kappa) {
  check_kappa(kappa);
  std::tie(nu_p_, nu_m_) = cfg_.nu(kappa);
}

std::pair<double, double> Sech2Waves::plus_log_and_ratio(double x) const {
  const double mu = kappa_ * cfg_.a;
  const double c = mu + 1.0;
  // zeta = 1/(1 + e^{-2x/a}), w = 1 - zeta, both without cancellation.
  const double t = 2.0 * x / cfg_.a;
  const double zeta = 1.0 / (1.0 + std::exp(-t));
  const double w = 1.0 / (1.0 + std::exp(t));
  if (w < 1e-280) {
    // Deep right tail: only the growing branch survives.
    const auto asy = sech2_asymptotic_split(cfg_, kappa_);
    return {kappa_ * x + std::log(asy.growing), kappa_};
  }
  const double F = specfun::hyp2f1(nu_m_, nu_p_, c, zeta, w);
  if (!(F > 0.0)) {
    std::ostringstream os;
    os << "sech2 wave: non-positive hypergeometric value " << F << " at zeta = " << zeta;
    throw SpecialFunctionError(os.str());
  }
  const double ab = cfg_.chi0 * cfg_.a * cfg_.a * kappa_ * kappa_;  // nu+ nu-
  const double F1 = specfun::hyp2f1(nu_m_ + 1.0, nu_p_ + 1.0, c + 1.0, zeta, w);
  const double u = kappa_ + (ab / c) * (F1 / F) * 2.0 * zeta * w / cfg_.a;
  return {kappa_ * x + std::log(F), u};
}

WaveSample Sech2Waves::sample(double x, Side) const {
  const auto [Lp, up] = plus_log_and_ratio(x);
  const auto [Lm, um_mirror] = plus_log_and_ratio(-x);
  WaveSample s;
  s.x = x;
  s.kappa = kappa_;
  s.n = profile_.n(x);
  const double nk = s.n * kappa_;
  s.Lp = Lp;
  s.Lm = Lm;
  s.vp = up - nk;
  s.vm = -um_mirror + nk;
  return s;
}

double Sech2Waves::log_abs_wronskian() const {
  const double mu = kappa_ * cfg_.a;
  const double lg1 = std::lgamma(mu + 1.0);
  const double den = std::real(specfun::log_gamma(mu + nu_p_) + specfun::log_gamma(mu + nu_m_));
  return std::log(2.0) + 2.0 * lg1 - std::log(cfg_.a) - den;
}

std::shared_ptr<const Sech2Waves> sech2_waves(const Sech2Config& cfg, double kappa) {
  return std::make_shared<const Sech2Waves>(cfg, kappa);
}

Sech2Asymptotics sech2_asymptotic_split(const Sech2Config& cfg, double kappa) {
  cfg.validate();
  check_kappa(kappa);
  const auto [np, nm] = cfg.nu(kappa);
  const double mu = kappa * cfg.a;
  const double den = std::real(specfun::log_gamma(mu + np) + specfun::log_gamma(mu + nm));
  Sech2Asymptotics out;
  out.growing = std::exp(std::lgamma(mu) + std::lgamma(mu + 1.0) - den);
  out.wronskian = -2.0 * kappa * out.growing;
  // Gamma(mu + 1) Gamma(-mu) / (Gamma(nu+) Gamma(nu-)).
  const double inv = std::real(specfun::rgamma(np) * specfun::rgamma(nm));
  if (inv == 0.0) {
    out.decaying = 0.0;
  } else {
    if (mu == std::round(mu)) {
      std::ostringstream os;
      os << "sech2 connection coefficient singular at integer kappa a = " << mu;
      throw PoleError(os.str());
    }
    out.decaying = specfun::gamma(mu + 1.0) * specfun::gamma(-mu) * inv;
  }
  return out;
}

}  // namespace vdw
