#include "vdw/stress.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "vdw/errors.hpp"

namespace vdw {
namespace {

void require_smooth(const SusceptibilityProfile& p, double x, const char* what) {
  if (p.is_interface(x)) {
    std::ostringstream os;
    os << what << " requested at interface x = " << x;
    throw InterfaceError(os.str());
  }
}

// d/dx (n' / (4 kappa n^2)).
double sigma_m0_correction(const IndexDerivatives& d, double kappa) {
  const double n = d.n;
  return d.d2n / (4.0 * kappa * n * n) - d.dn * d.dn / (2.0 * kappa * n * n * n);
}

}  // namespace

StressBundle spectral_stresses(const WaveSolution& ws, double x) {
  require_smooth(ws.profile(), x, "spectral stresses");
  const WaveSample s = ws.sample(x);
  const double kappa = ws.kappa();
  const double nk = s.n * kappa;
  const double gap = s.gap();
  const double diff = s.vp - s.vm;
  StressBundle b;
  b.x = x;
  b.kappa = kappa;
  b.sigma_E = nk * nk / gap;
  // -u+ u- / (u+ - u-) with u+ u- = -n^2 kappa^2 - n kappa (v+ - v-) + v+ v-.
  b.sigma_M = (nk * nk + nk * diff - s.vp * s.vm) / gap;
  b.p_Ab = -(s.n * s.n - 1.0) * kappa * kappa / gap;
  return b;
}

StressBundle spectral_stresses_madelung(const WaveSolution& ws, double x) {
  require_smooth(ws.profile(), x, "spectral stresses");
  const MadelungState m = madelung_state(ws, x);
  const double n = ws.profile().n(x);
  const double kappa = ws.kappa();
  StressBundle b;
  b.x = x;
  b.kappa = kappa;
  b.sigma_E = n * n * kappa * kappa / (2.0 * m.k);
  b.sigma_M = m.k / 2.0 - m.dk * m.dk / (8.0 * m.k * m.k * m.k);
  b.p_Ab = -(n * n - 1.0) / (n * n) * b.sigma_E;
  return b;
}

double total_stress_asymptote(const SusceptibilityProfile& profile, double x, double kappa) {
  require_smooth(profile, x, "stress asymptote");
  const IndexDerivatives d = profile.derivatives(x);
  return kappa * d.n - d.dn * d.dn / (8.0 * kappa * d.n * d.n * d.n);
}

LocalGreen local_green_coefficients(const WaveSolution& ws, double x0) {
  const auto& profile = ws.profile();
  require_smooth(profile, x0, "local Green function");
  const IndexDerivatives d = profile.derivatives(x0);
  const WaveSample s = ws.sample(x0);
  const double kappa = ws.kappa();
  const double nk = d.n * kappa;
  const double amp = d.dn / (2.0 * d.n);
  const double g = -1.0 / s.gap();
  const double k = g / (2.0 * nk);
  LocalGreen lg;
  lg.x0 = x0;
  lg.kappa = kappa;
  lg.scaled.pp = -(s.um() + nk + amp) * k;
  lg.scaled.pm = -(s.um() - nk + amp) * k;
  lg.scaled.mp = (s.up() + nk + amp) * k;
  lg.scaled.mm = (s.up() - nk + amp) * k;
  lg.raw.pp = lg.scaled.pp * std::exp(-s.Lp);
  lg.raw.pm = lg.scaled.pm * std::exp(-s.Lp);
  lg.raw.mp = lg.scaled.mp * std::exp(-s.Lm);
  lg.raw.mm = lg.scaled.mm * std::exp(-s.Lm);
  return lg;
}

namespace {

struct Branch {
  double cp, cm;
};

Branch branch_of(const LocalGreen& lg, double x, Side side) {
  const bool right = x > lg.x0 || (x == lg.x0 && side == Side::right);
  return right ? Branch{lg.scaled.pp, lg.scaled.mp} : Branch{lg.scaled.pm, lg.scaled.mm};
}

}  // namespace

double local_green_value(const WaveSolution& ws, const LocalGreen& lg, double x, Side side) {
  const Branch b = branch_of(lg, x, side);
  const WaveSample s0 = ws.sample(lg.x0);
  const WaveSample s = ws.sample(x);
  return b.cp * std::exp(s.Lp - s0.Lp) + b.cm * std::exp(s.Lm - s0.Lm);
}

double local_green_dx(const WaveSolution& ws, const LocalGreen& lg, double x, Side side) {
  const Branch b = branch_of(lg, x, side);
  const WaveSample s0 = ws.sample(lg.x0);
  const WaveSample s = ws.sample(x);
  return b.cp * s.up() * std::exp(s.Lp - s0.Lp) + b.cm * s.um() * std::exp(s.Lm - s0.Lm);
}

LocalStresses local_stresses(const SusceptibilityProfile& profile, double x, double kappa) {
  require_smooth(profile, x, "local stresses");
  const IndexDerivatives d = profile.derivatives(x);
  return {0.5 * kappa * d.n, 0.5 * kappa * d.n + sigma_m0_correction(d, kappa)};
}

LocalStresses local_stresses_from_green(const WaveSolution& ws, double x0, double h) {
  const LocalGreen lg = local_green_coefficients(ws, x0);
  const double n = ws.profile().n(x0);
  const double kappa = ws.kappa();
  LocalStresses out;
  out.sigma_E0 = -n * n * kappa * kappa * local_green_value(ws, lg, x0, Side::right);
  // d/dx of the x > x0' branch at x = x0, as a function of the source x0'.
  const WaveSample s = ws.sample(x0);
  auto dgdx = [&](double src) {
    const LocalGreen l = local_green_coefficients(ws, src);
    const WaveSample ss = ws.sample(src);
    return l.scaled.pp * s.up() * std::exp(s.Lp - ss.Lp) +
           l.scaled.mp * s.um() * std::exp(s.Lm - ss.Lm);
  };
  out.sigma_M0 = (-dgdx(x0 + 2 * h) + 8 * dgdx(x0 + h) - 8 * dgdx(x0 - h) + dgdx(x0 - 2 * h)) /
                 (12.0 * h);
  return out;
}

double kappa_min_cutoff(const SusceptibilityProfile& profile, double x, double margin) {
  require_smooth(profile, x, "locality cutoff");
  const IndexDerivatives d = profile.derivatives(x);
  return margin * std::abs(d.dn / d.n) / (2.0 * std::numbers::pi * d.n);
}

StressBundle effective_stresses(const WaveSolution& ws, const SusceptibilityProfile& profile,
                                double x, double kappa, const EffectiveOptions& opt) {
  if (std::abs(kappa - ws.kappa()) > 1e-12 * kappa)
    throw RangeError("effective_stresses: kappa differs from the wave solution's kappa");
  require_smooth(profile, x, "effective stresses");
  const double kmin = opt.kappa_min.value_or(kappa_min_cutoff(profile, x, opt.margin));
  if (kappa < kmin) {
    std::ostringstream os;
    os << "kappa = " << kappa << " is below the locality cutoff " << kmin << " at x = " << x
       << ": geometrical optics (|d lambda/dx| << 1, lambda = 2 pi/(kappa n)) does not hold";
    throw LocalityError(os.str());
  }
  StressBundle b = spectral_stresses(ws, x);
  const IndexDerivatives d = profile.derivatives(x);
  const WaveSample s = ws.sample(x);
  const double nk = d.n * kappa;
  const double gap = s.gap();
  const double diff = s.vp - s.vm;
  const LocalStresses loc = local_stresses(profile, x, kappa);
  b.sigma_E0 = loc.sigma_E0;
  b.sigma_M0 = loc.sigma_M0;
  b.anomaly = beta0(d) / (2.0 * nk);
  // Differences formed in deviation variables; the n kappa / 2 parts cancel exactly.
  b.sigma_E_eff = -nk * diff / (2.0 * gap) - b.anomaly;
  b.sigma_M_eff = (0.5 * nk * diff - s.vp * s.vm) / gap - sigma_m0_correction(d, kappa) - b.anomaly;
  return b;
}

namespace {

double legacy_radius(const SusceptibilityProfile& profile, const IndexDerivatives& d, double kappa,
                     const LegacyOptions& opt) {
  if (opt.radius) return *opt.radius;
  double scale = std::numeric_limits<double>::infinity();
  if (auto* s = std::get_if<Sech2>(&profile.kind())) {
    scale = s->a;
  } else if (d.dn != 0.0) {
    scale = std::abs(d.n / d.dn);
  }
  return 0.1 * std::min(scale, 1.0 / (kappa * d.n));
}

}  // namespace

double legacy_renormalizer(const SusceptibilityProfile& profile, double x0, double x, double kappa,
                           const LegacyOptions& opt) {
  require_smooth(profile, x0, "legacy renormalizer");
  const IndexDerivatives d = profile.derivatives(x0);
  const double r = legacy_radius(profile, d, kappa, opt);
  const double dx = x - x0;
  if (std::abs(dx) > r) {
    std::ostringstream os;
    os << "legacy renormalizer: |x - x0| = " << std::abs(dx) << " exceeds the expansion radius " << r;
    throw DomainError(os.str());
  }
  const double nq = d.n + d.dn * dx + 0.5 * d.d2n * dx * dx;
  const double s = dx * (d.n + 0.5 * d.dn * dx + d.d2n * dx * dx / 6.0);
  const double amp = -1.0 / (2.0 * kappa * std::sqrt(nq * d.n));
  const double beta1 = beta0(d) / d.n;
  const double w = opt.literal_s ? std::abs(s) : std::abs(dx);
  return std::exp(-kappa * std::abs(s)) * amp * (1.0 + beta1 * w / kappa);
}

LocalStresses legacy_stresses(const SusceptibilityProfile& profile, double x0, double kappa,
                              const LegacyOptions& opt) {
  require_smooth(profile, x0, "legacy stresses");
  const IndexDerivatives d = profile.derivatives(x0);
  const double n = d.n, n1 = d.dn, n2 = d.d2n;
  const double b0 = beta0(d), b0p = beta0_prime(d);
  // Expansion of g0 in powers of (x - x0) for x > x0: G0 + G1 d + G2 d^2.
  const double e1 = -kappa * n;
  const double e2 = 0.5 * kappa * kappa * n * n - 0.5 * kappa * n1;
  const double c1 = -n1 / (2.0 * n);
  const double c2 = b0;
  const double q = opt.literal_s ? n : 1.0;
  const double b1 = (b0 / n) * q / kappa;
  const double b2 = opt.literal_s ? (b0 / n) * n1 / (2.0 * kappa) : 0.0;
  const double g0 = -1.0 / (2.0 * kappa * n);
  const double s1 = e1 + c1 + b1;
  const double g2 = g0 * (e2 + c2 + b2 + e1 * c1 + e1 * b1 + c1 * b1);
  // d/dx0 of G1 = G0 s1.
  const double db1 = opt.literal_s ? b0p / kappa : (b0p / n - b0 * n1 / (n * n)) / kappa;
  const double ds1 = -kappa * n1 - (n2 / (2.0 * n) - n1 * n1 / (2.0 * n * n)) + db1;
  const double g1p = g0 * (-(n1 / n) * s1 + ds1);
  return {0.5 * kappa * n, g1p - 2.0 * g2};
}

double field_correlation(const SusceptibilityProfile& profile, double x1, double x0,
                         const CorrelationConfig& cfg) {
  const std::function<double(double)> f = [&](double kappa) {
    const auto ws = solve_waves(profile, kappa, cfg.waves);
    return kappa * kappa * green(*ws, x1, x0).g;
  };
  return romberg_integrate(f, cfg.quad).value / (2.0 * std::numbers::pi);
}

double correlation_k(const SusceptibilityProfile& profile, double x1, double x0, double t,
                     double kappa_ir, const CorrelationConfig& cfg) {
  if (!(std::abs(x1 - x0) > std::abs(t))) {
    std::ostringstream os;
    os << "K(t) requires |x1 - x0| > |t| (outside the light cone); got |x1 - x0| = "
       << std::abs(x1 - x0) << ", |t| = " << std::abs(t);
    throw DomainError(os.str());
  }
  if (!(kappa_ir > 0.0)) throw RangeError("K(t): the infrared cutoff must be positive");
  QuadratureConfig q = cfg.quad;
  q.kappa_lo = kappa_ir;
  const std::function<double(double)> f = [&](double kappa) {
    const auto ws = solve_waves(profile, kappa, cfg.waves);
    return green(*ws, x1, x0).g * std::cosh(kappa * t);
  };
  return -romberg_integrate(f, q).value / std::numbers::pi;
}

}  // namespace vdw
