#include "vdw/waves.hpp"

#include <algorithm>
#include <array>
#include <boost/numeric/odeint.hpp>
#include <cmath>
#include <numbers>
#include <sstream>

#include "vdw/errors.hpp"

namespace vdw {
namespace {

namespace odeint = boost::numeric::odeint;
using State = std::array<double, 2>;  // (v, L)
using Stepper = odeint::runge_kutta_fehlberg78<State>;

struct Segment {
  double lo, hi;
};

struct Checkpoint {
  double x;
  State s;
};

// Solution of psi'' = kappa^2 n^2 psi in a homogeneous region, continued from
// (v0, L0) at distance s >= 0 in the direction where the solution grows.
// `sign` is +1 for psi+ (moving right) and -1 for psi- (moving left).
State continue_homogeneous(double k, double v0, double L0, double s, int sign) {
  const double e = std::exp(-2.0 * k * s);
  const double q = sign * v0 / (2.0 * k) * -std::expm1(-2.0 * k * s);
  return {v0 * e / (1.0 + q), L0 + k * s + std::log1p(q)};
}

class NumericWaves final : public WaveSolution {
 public:
  NumericWaves(const SusceptibilityProfile& profile, double kappa, const WaveOptions& opt)
      : profile_(profile), kappa_(kappa), opt_(opt) {
    x_lo_ = opt.x_lo.value_or(profile.support_lo());
    x_hi_ = opt.x_hi.value_or(profile.support_hi());
    if (x_lo_ > profile.support_lo() || x_hi_ < profile.support_hi() || !(x_hi_ >= x_lo_))
      throw DomainError("solve_waves: domain must contain the profile support");
    n_left_ = profile.n_left();
    n_right_ = profile.n_right();
    piecewise_constant_ = std::holds_alternative<PiecewiseConstant>(profile.kind());

    double prev = x_lo_;
    for (double b : profile.interfaces()) {
      if (b > x_lo_ && b < x_hi_) {
        segments_.push_back({prev, b});
        prev = b;
      }
    }
    segments_.push_back({prev, x_hi_});
    forward_.resize(segments_.size());
    backward_.resize(segments_.size());
    sweep_forward();
    sweep_backward();
    log_w_ = log_abs_wronskian_at(reference_point());
  }

  double kappa() const override { return kappa_; }
  const SusceptibilityProfile& profile() const override { return profile_; }
  double log_abs_wronskian() const override { return log_w_; }

  WaveSample sample(double x, Side side) const override {
    WaveSample out;
    out.x = x;
    out.kappa = kappa_;
    const bool left_ext = x < x_lo_ || (x == x_lo_ && side == Side::left && has_edge_jump(x_lo_));
    const bool right_ext = x > x_hi_ || (x == x_hi_ && side == Side::right && has_edge_jump(x_hi_));
    if (left_ext) {
      // psi+ is the pure decaying exponential here.
      const double k = n_left_ * kappa_;
      out.n = n_left_;
      out.vp = 0.0;
      out.Lp = k * x;
      const Checkpoint& c = backward_.front().back();  // state at x_lo, inside
      const double v0 = c.s[0] + (n_left_ - n_at(x_lo_, 0).first) * kappa_;
      const State s = continue_homogeneous(k, v0, c.s[1], x_lo_ - x, -1);
      out.vm = s[0];
      out.Lm = s[1];
      return out;
    }
    if (right_ext) {
      const double k = n_right_ * kappa_;
      out.n = n_right_;
      out.vm = 0.0;
      out.Lm = -k * x;
      const Checkpoint& c = forward_.back().back();
      const double v0 = c.s[0] + (n_at(x_hi_, segments_.size() - 1).first - n_right_) * kappa_;
      const State s = continue_homogeneous(k, v0, c.s[1], x - x_hi_, +1);
      out.vp = s[0];
      out.Lp = s[1];
      return out;
    }
    const std::size_t k = segment_of(x, side);
    out.n = n_at(x, k).first;
    const State p = advance(forward_[k], x, k, +1);
    const State m = advance(backward_[k], x, k, -1);
    out.vp = p[0];
    out.Lp = p[1];
    out.vm = m[0];
    out.Lm = m[1];
    return out;
  }

 protected:
  double reference_point() const override { return 0.5 * (x_lo_ + x_hi_); }

 private:
  bool has_edge_jump(double x) const { return profile_.is_interface(x); }

  std::size_t segment_of(double x, Side side) const {
    for (std::size_t k = 0; k < segments_.size(); ++k) {
      const Segment& s = segments_[k];
      if (x < s.hi) return k;
      if (x == s.hi) {
        if (k + 1 == segments_.size() || side == Side::left) return k;
        return k + 1;
      }
    }
    return segments_.size() - 1;
  }

  // n and n' inside segment k, with endpoints resolved towards the inside.
  std::pair<double, double> n_at(double x, std::size_t k) const {
    const Segment& s = segments_[k];
    const double xc = std::clamp(x, s.lo, s.hi);
    if (profile_.is_interface(xc)) {
      const Side side = (xc - s.lo <= s.hi - xc) ? Side::right : Side::left;
      return {std::sqrt(1.0 + profile_.chi_side(xc, side)), 0.0};
    }
    const IndexDerivatives d = profile_.derivatives(xc);
    return {d.n, d.dn};
  }

  auto system(std::size_t k, int sign) const {
    return [this, k, sign](const State& s, State& ds, double x) {
      const auto [n, dn] = n_at(x, k);
      const double nk = n * kappa_;
      const double v = s[0];
      ds[0] = -sign * (2.0 * nk * v + dn * kappa_) - v * v;
      ds[1] = sign * nk + v;
    };
  }

  void integrate(std::size_t k, int sign, State& s, double from, double to,
                 std::vector<Checkpoint>* record) const {
    if (from == to) return;
    if (piecewise_constant_) {
      // Exact propagation inside a homogeneous layer.
      const double nk = n_at(from, k).first * kappa_;
      if (record) record->push_back({from, s});
      s = continue_homogeneous(nk, s[0], s[1], std::abs(to - from), sign);
      if (record) record->push_back({to, s});
      return;
    }
    auto stepper = odeint::make_controlled<Stepper>(opt_.abs_tol, opt_.rel_tol);
    const double n0 = n_at(from, k).first;
    const double span = std::abs(to - from);
    const double dt0 = (to > from ? 1.0 : -1.0) * std::min(span, 0.5 / (n0 * kappa_ + 1.0 / span));
    try {
      if (record) {
        odeint::integrate_adaptive(stepper, system(k, sign), s, from, to, dt0,
                                   [record](const State& st, double x) {
                                     record->push_back({x, st});
                                   });
      } else {
        odeint::integrate_adaptive(stepper, system(k, sign), s, from, to, dt0);
      }
    } catch (const std::exception& e) {
      std::ostringstream os;
      os << "wave integration failed between x = " << from << " and " << to
         << " (kappa = " << kappa_ << "): " << e.what();
      throw IntegrationError(os.str());
    }
    if (!std::isfinite(s[0]) || !std::isfinite(s[1])) {
      std::ostringstream os;
      os << "wave integration produced a non-finite value near x = " << to
         << " (kappa = " << kappa_ << ")";
      throw IntegrationError(os.str());
    }
  }

  void sweep_forward() {
    State s{0.0, n_left_ * kappa_ * x_lo_};
    double n_prev = n_left_;
    for (std::size_t k = 0; k < segments_.size(); ++k) {
      const double n_new = n_at(segments_[k].lo, k).first;
      s[0] += (n_prev - n_new) * kappa_;
      integrate(k, +1, s, segments_[k].lo, segments_[k].hi, &forward_[k]);
      if (forward_[k].empty()) forward_[k].push_back({segments_[k].lo, s});
      n_prev = n_at(segments_[k].hi, k).first;
    }
  }

  void sweep_backward() {
    State s{0.0, -n_right_ * kappa_ * x_hi_};
    double n_prev = n_right_;
    for (std::size_t k = segments_.size(); k-- > 0;) {
      const double n_new = n_at(segments_[k].hi, k).first;
      s[0] += (n_new - n_prev) * kappa_;
      integrate(k, -1, s, segments_[k].hi, segments_[k].lo, &backward_[k]);
      if (backward_[k].empty()) backward_[k].push_back({segments_[k].hi, s});
      n_prev = n_at(segments_[k].lo, k).first;
    }
  }

  // Re-integrates from the nearest checkpoint on the upstream side of x.
  State advance(const std::vector<Checkpoint>& cps, double x, std::size_t k, int sign) const {
    const Checkpoint* best = &cps.front();
    if (sign > 0) {
      auto it = std::upper_bound(cps.begin(), cps.end(), x,
                                 [](double v, const Checkpoint& c) { return v < c.x; });
      if (it != cps.begin()) best = &*std::prev(it);
    } else {
      // Descending x: first checkpoint with c.x <= x, then step back one.
      auto it = std::upper_bound(cps.begin(), cps.end(), x,
                                 [](double v, const Checkpoint& c) { return v > c.x; });
      if (it != cps.begin()) best = &*std::prev(it);
    }
    State s = best->s;
    integrate(k, sign, s, best->x, x, nullptr);
    return s;
  }

  SusceptibilityProfile profile_;
  double kappa_;
  WaveOptions opt_;
  double x_lo_ = 0.0, x_hi_ = 0.0;
  double n_left_ = 1.0, n_right_ = 1.0;
  double log_w_ = 0.0;
  bool piecewise_constant_ = false;
  std::vector<Segment> segments_;
  std::vector<std::vector<Checkpoint>> forward_;
  std::vector<std::vector<Checkpoint>> backward_;
};

}  // namespace

double WaveSolution::log_abs_wronskian() const { return log_abs_wronskian_at(reference_point()); }

double WaveSolution::wronskian() const { return -std::exp(log_abs_wronskian()); }

double WaveSolution::log_abs_wronskian_at(double x) const {
  const WaveSample s = sample(x);
  return s.Lp + s.Lm + std::log(s.gap());
}

double WaveSolution::psi_plus(double x) const { return std::exp(sample(x).Lp); }
double WaveSolution::psi_minus(double x) const { return std::exp(sample(x).Lm); }
double WaveSolution::dpsi_plus(double x) const {
  const WaveSample s = sample(x);
  return s.up() * std::exp(s.Lp);
}
double WaveSolution::dpsi_minus(double x) const {
  const WaveSample s = sample(x);
  return s.um() * std::exp(s.Lm);
}

std::shared_ptr<const WaveSolution> solve_waves(const SusceptibilityProfile& profile, double kappa,
                                                const WaveOptions& options) {
  if (!(kappa > 0.0) || !std::isfinite(kappa))
    throw RangeError("solve_waves: kappa must be positive and finite");
  return std::make_shared<NumericWaves>(profile, kappa, options);
}

GreenEval green(const WaveSolution& ws, double x, double x0) {
  GreenEval out;
  out.kappa = ws.kappa();
  out.x = x;
  out.x0 = x0;
  const double lw = ws.log_abs_wronskian();
  const WaveSample a = ws.sample(std::min(x, x0));
  const WaveSample b = ws.sample(std::max(x, x0));
  out.g = -std::exp(a.Lp + b.Lm - lw);
  if (x < x0) {
    out.dg_dx = out.g * a.up();
  } else if (x > x0) {
    out.dg_dx = out.g * b.um();
  } else {
    out.dg_dx = 0.5 * out.g * (a.up() + a.um());
  }
  return out;
}

double green_diagonal(const WaveSolution& ws, double x, Side side) {
  return -1.0 / ws.sample(x, side).gap();
}

double green_diagonal_derivative(const WaveSolution& ws, double x, Side side) {
  const WaveSample s = ws.sample(x, side);
  return -(s.vp + s.vm) / s.gap();
}

double force_density_spectral(const WaveSolution& ws, double x) {
  if (ws.profile().is_interface(x)) {
    std::ostringstream os;
    os << "force density requested at interface x = " << x;
    throw InterfaceError(os.str());
  }
  const WaveSample s = ws.sample(x);
  const double chi = s.n * s.n - 1.0;
  return ws.kappa() * ws.kappa() * chi * (-(s.vp + s.vm) / s.gap());
}

double beta0(const IndexDerivatives& d) {
  return -d.d2n / (4.0 * d.n) + 3.0 * d.dn * d.dn / (8.0 * d.n * d.n);
}

double beta0_prime(const IndexDerivatives& d) {
  const double n = d.n;
  return -d.d3n / (4.0 * n) + d.dn * d.d2n / (n * n) - 3.0 * d.dn * d.dn * d.dn / (4.0 * n * n * n);
}

AsymptoteCoefficients force_density_asymptote_coefficients(const SusceptibilityProfile& profile,
                                                           double x) {
  const IndexDerivatives d = profile.derivatives(x);
  const double n = d.n;
  const double pre = -(n * n - 1.0) / 2.0;
  const double n3 = n * n * n;
  return {pre * (-d.dn / (n * n)), pre * (beta0_prime(d) / n3 - 3.0 * beta0(d) * d.dn / (n3 * n))};
}

double force_density_asymptotics(const SusceptibilityProfile& profile, double x, double kappa) {
  const AsymptoteCoefficients c = force_density_asymptote_coefficients(profile, x);
  return c.linear * kappa + c.inverse / kappa;
}

MadelungState madelung_state(const WaveSolution& ws, double x) {
  const WaveSample s = ws.sample(x);
  const double g = -1.0 / s.gap();
  if (!(g < 0.0)) {
    std::ostringstream os;
    os << "g(x,x) = " << g << " is not negative at x = " << x;
    throw StateError(os.str());
  }
  MadelungState out;
  out.k = -1.0 / (2.0 * g);
  const double sum = s.vp + s.vm;  // u+ + u-
  out.dk = -out.k * sum;
  const double nk = s.n * ws.kappa();
  const double diff = s.vp - s.vm;  // u+ - u- - 2 n kappa
  // beta = -(1/4)(k'/k)' + (1/8)(k'/k)^2 with k'/k = -(u+ + u-).
  out.beta = 0.25 * (-2.0 * nk * diff - s.vp * s.vp - s.vm * s.vm) + 0.125 * sum * sum;
  out.beta0 = ws.profile().is_interface(x) ? 0.0 : beta0(ws.profile().derivatives(x));
  return out;
}

IntegratedDensity integrated_force_density(const SusceptibilityProfile& profile, double x,
                                           const DensityConfig& cfg) {
  if (profile.is_interface(x)) {
    std::ostringstream os;
    os << "integrated force density requested at interface x = " << x;
    throw InterfaceError(os.str());
  }
  const AsymptoteCoefficients asy = profile.is_interface(x)
                                        ? AsymptoteCoefficients{}
                                        : force_density_asymptote_coefficients(profile, x);
  const double inv2pi = 1.0 / (2.0 * std::numbers::pi);
  auto integrand = [&](double kappa) {
    return force_density_spectral(*solve_waves(profile, kappa, cfg.waves), x);
  };

  IntegratedDensity out;
  out.expected_growth = asy.linear;
  const double n = profile.n(x);
  const double scale = std::max(1.0, n * n - 1.0);
  const bool smooth_tail = std::abs(asy.linear) <= 1e-12 * scale &&
                           std::abs(asy.inverse) <= 1e-12 * scale;
  if (smooth_tail) {
    const QuadratureResult q = romberg_integrate(std::function<double(double)>(integrand), cfg.quad);
    out.value = inv2pi * q.value;
    out.est_error = inv2pi * q.est_error;
    out.kappa_max = std::numeric_limits<double>::infinity();
    return out;
  }

  // Divergent: integrate up to the fit window and fit the tail segments to
  // c kappa + d / kappa + e / kappa^3.
  out.divergent = true;
  QuadratureConfig head = cfg.quad;
  head.kappa_hi = cfg.fit_kappa_start;
  head.kappa_lo.reset();
  QuadratureResult q = romberg_integrate(std::function<double(double)>(integrand), head);
  double value = q.value, err = q.est_error;

  const int m = std::max(cfg.fit_segments, 3);
  std::vector<std::array<double, 3>> rows;
  std::vector<double> rhs;
  double k1 = cfg.fit_kappa_start;
  for (int i = 0; i < m; ++i) {
    const double k2 = k1 * cfg.fit_ratio;
    QuadratureConfig seg = cfg.quad;
    seg.kappa_lo = k1;
    seg.kappa_hi = k2;
    const QuadratureResult r = romberg_integrate(std::function<double(double)>(integrand), seg);
    value += r.value;
    err += r.est_error;
    rows.push_back({0.5 * (k2 * k2 - k1 * k1), std::log(k2 / k1), 0.5 * (1.0 / (k1 * k1) - 1.0 / (k2 * k2))});
    rhs.push_back(r.value);
    k1 = k2;
  }
  // Normal equations of the 3-parameter least-squares fit, columns scaled.
  std::array<double, 3> colscale{};
  for (int c = 0; c < 3; ++c) {
    for (const auto& r : rows) colscale[c] = std::max(colscale[c], std::abs(r[c]));
  }
  double A[3][3] = {}, b[3] = {};
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (int r = 0; r < 3; ++r) {
      b[r] += rows[i][r] / colscale[r] * rhs[i];
      for (int c = 0; c < 3; ++c) A[r][c] += rows[i][r] / colscale[r] * rows[i][c] / colscale[c];
    }
  }
  for (int p = 0; p < 3; ++p) {
    int piv = p;
    for (int r = p + 1; r < 3; ++r)
      if (std::abs(A[r][p]) > std::abs(A[piv][p])) piv = r;
    std::swap(A[p], A[piv]);
    std::swap(b[p], b[piv]);
    for (int r = p + 1; r < 3; ++r) {
      const double f = A[r][p] / A[p][p];
      for (int c = p; c < 3; ++c) A[r][c] -= f * A[p][c];
      b[r] -= f * b[p];
    }
  }
  double sol[3];
  for (int r = 2; r >= 0; --r) {
    double acc = b[r];
    for (int c = r + 1; c < 3; ++c) acc -= A[r][c] * sol[c];
    sol[r] = acc / A[r][r];
  }
  out.growth_coefficient = sol[0] / colscale[0];
  out.inverse_coefficient = sol[1] / colscale[1];
  out.value = inv2pi * value;
  out.est_error = inv2pi * err;
  out.kappa_max = k1;
  return out;
}

}  // namespace vdw
