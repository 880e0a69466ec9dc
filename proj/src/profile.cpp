#include "vdw/profile.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

#include "vdw/errors.hpp"

namespace vdw {
namespace {

// sech^2(y) < 1e-14 beyond this |y|.
constexpr double kSech2Cut = 16.811242831518264;

bool near(double x, double b) { return std::abs(x - b) <= 1e-12 * std::max(1.0, std::abs(b)); }

void check_chi(double chi, double x) {
  if (!std::isfinite(chi) || chi < 0.0) {
    std::ostringstream os;
    os << "susceptibility " << chi << " at x = " << x << " is not a finite non-negative value";
    throw EvaluationError(os.str());
  }
}

// Natural cubic spline second derivatives.
std::vector<double> spline_second_derivatives(const std::vector<double>& x,
                                              const std::vector<double>& y) {
  const std::size_t n = x.size();
  std::vector<double> m(n, 0.0), u(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double sig = (x[i] - x[i - 1]) / (x[i + 1] - x[i - 1]);
    const double p = sig * m[i - 1] + 2.0;
    m[i] = (sig - 1.0) / p;
    u[i] = (y[i + 1] - y[i]) / (x[i + 1] - x[i]) - (y[i] - y[i - 1]) / (x[i] - x[i - 1]);
    u[i] = (6.0 * u[i] / (x[i + 1] - x[i - 1]) - sig * u[i - 1]) / p;
  }
  m[n - 1] = 0.0;
  for (std::size_t k = n - 1; k-- > 0;) m[k] = m[k] * m[k + 1] + u[k];
  return m;
}

std::uint64_t fnv1a(std::uint64_t h, double v) {
  const auto bits = std::bit_cast<std::uint64_t>(v);
  for (int i = 0; i < 8; ++i) {
    h ^= (bits >> (8 * i)) & 0xffu;
    h *= 0x100000001b3ull;
  }
  return h;
}

}  // namespace

SusceptibilityProfile::SusceptibilityProfile(Kind kind) : kind_(std::move(kind)) {
  if (auto* pc = std::get_if<PiecewiseConstant>(&kind_)) {
    if (pc->chi.size() != pc->boundaries.size() + 1)
      throw EvaluationError("piecewise profile needs one more chi value than boundaries");
    if (!std::is_sorted(pc->boundaries.begin(), pc->boundaries.end()) ||
        std::adjacent_find(pc->boundaries.begin(), pc->boundaries.end()) != pc->boundaries.end())
      throw EvaluationError("piecewise profile boundaries must be strictly increasing");
    for (double c : pc->chi) check_chi(c, 0.0);
    for (std::size_t i = 0; i < pc->boundaries.size(); ++i)
      if (pc->chi[i] != pc->chi[i + 1]) interfaces_.push_back(pc->boundaries[i]);
    support_lo_ = pc->boundaries.empty() ? 0.0 : pc->boundaries.front();
    support_hi_ = pc->boundaries.empty() ? 0.0 : pc->boundaries.back();
  } else if (auto* s = std::get_if<Sech2>(&kind_)) {
    if (!(s->a > 0.0) || !(s->chi0 >= 0.0) || !std::isfinite(s->chi0))
      throw EvaluationError("sech2 profile needs a > 0 and chi0 >= 0");
    support_lo_ = -kSech2Cut * s->a;
    support_hi_ = kSech2Cut * s->a;
  } else {
    auto& t = std::get<Tabulated>(kind_);
    if (t.x.size() < 2 || t.x.size() != t.chi.size())
      throw EvaluationError("tabulated profile needs >= 2 points and matching chi");
    if (t.order != 1 && t.order != 3)
      throw EvaluationError("tabulated interpolation order must be 1 or 3");
    double min_gap = t.x.back() - t.x.front();
    for (std::size_t i = 0; i + 1 < t.x.size(); ++i) {
      if (!(t.x[i + 1] > t.x[i])) throw EvaluationError("tabulated grid must be strictly increasing");
      min_gap = std::min(min_gap, t.x[i + 1] - t.x[i]);
    }
    for (std::size_t i = 0; i < t.chi.size(); ++i) check_chi(t.chi[i], t.x[i]);
    if (t.order == 3) spline_m_ = spline_second_derivatives(t.x, t.chi);
    fd_step_ = std::max(1e-6, min_gap);
    if (t.chi.front() != 0.0) interfaces_.push_back(t.x.front());
    if (t.chi.back() != 0.0) interfaces_.push_back(t.x.back());
    support_lo_ = t.x.front();
    support_hi_ = t.x.back();
  }
}

SusceptibilityProfile SusceptibilityProfile::vacuum() {
  return SusceptibilityProfile(PiecewiseConstant{{}, {0.0}});
}

SusceptibilityProfile SusceptibilityProfile::homogeneous_block(double x_left, double x_right,
                                                               double chi) {
  return SusceptibilityProfile(PiecewiseConstant{{x_left, x_right}, {0.0, chi, 0.0}});
}

SusceptibilityProfile SusceptibilityProfile::three_layer(double n1, double n2, double n3,
                                                         double a) {
  return SusceptibilityProfile(
      PiecewiseConstant{{0.0, a}, {n1 * n1 - 1.0, n2 * n2 - 1.0, n3 * n3 - 1.0}});
}

SusceptibilityProfile SusceptibilityProfile::sech2(double chi0, double a) {
  return SusceptibilityProfile(Sech2{chi0, a});
}

std::string SusceptibilityProfile::kind_name() const {
  switch (kind_.index()) {
    case 0: return "piecewise";
    case 1: return "sech2";
    default: return "tabulated";
  }
}

double SusceptibilityProfile::chi_tabulated(double x) const {
  const auto& t = std::get<Tabulated>(kind_);
  if (x < t.x.front() || x > t.x.back()) return 0.0;
  auto it = std::upper_bound(t.x.begin(), t.x.end(), x);
  std::size_t hi = std::min<std::size_t>(std::distance(t.x.begin(), it), t.x.size() - 1);
  std::size_t lo = hi - 1;
  const double h = t.x[hi] - t.x[lo];
  const double A = (t.x[hi] - x) / h;
  const double B = 1.0 - A;
  double v = A * t.chi[lo] + B * t.chi[hi];
  if (t.order == 3)
    v += ((A * A * A - A) * spline_m_[lo] + (B * B * B - B) * spline_m_[hi]) * h * h / 6.0;
  return std::max(v, 0.0);
}

double SusceptibilityProfile::n_tabulated(double x) const { return std::sqrt(1.0 + chi_tabulated(x)); }

double SusceptibilityProfile::chi_side(double x, Side side) const {
  if (auto* pc = std::get_if<PiecewiseConstant>(&kind_)) {
    const auto& b = pc->boundaries;
    std::size_t idx = 0;
    for (; idx < b.size(); ++idx) {
      if (near(x, b[idx])) return side == Side::left ? pc->chi[idx] : pc->chi[idx + 1];
      if (x < b[idx]) break;
    }
    return pc->chi[idx];
  }
  if (auto* s = std::get_if<Sech2>(&kind_)) {
    const double c = 1.0 / std::cosh(x / s->a);
    return s->chi0 * c * c;
  }
  const auto& t = std::get<Tabulated>(kind_);
  if (near(x, t.x.front()) && side == Side::left) return 0.0;
  if (near(x, t.x.back()) && side == Side::right) return 0.0;
  return chi_tabulated(x);
}

double SusceptibilityProfile::chi(double x) const { return chi_side(x, Side::right); }

double SusceptibilityProfile::n(double x) const { return std::sqrt(1.0 + chi(x)); }

bool SusceptibilityProfile::is_interface(double x) const {
  return std::any_of(interfaces_.begin(), interfaces_.end(), [x](double b) { return near(x, b); });
}

double SusceptibilityProfile::n_left() const {
  if (auto* pc = std::get_if<PiecewiseConstant>(&kind_)) return std::sqrt(1.0 + pc->chi.front());
  return 1.0;
}

double SusceptibilityProfile::n_right() const {
  if (auto* pc = std::get_if<PiecewiseConstant>(&kind_)) return std::sqrt(1.0 + pc->chi.back());
  return 1.0;
}

IndexDerivatives SusceptibilityProfile::derivatives(double x) const {
  if (is_interface(x)) {
    std::ostringstream os;
    os << "derivatives requested at interface x = " << x;
    throw InterfaceError(os.str());
  }
  if (std::holds_alternative<PiecewiseConstant>(kind_)) return {n(x), 0.0, 0.0, 0.0};
  if (auto* s = std::get_if<Sech2>(&kind_)) {
    const double y = x / s->a;
    const double t = std::tanh(y);
    const double c = 1.0 / std::cosh(y);
    const double s2 = c * c;
    const double a = s->a;
    const double chi = s->chi0 * s2;
    const double c1 = -2.0 * s->chi0 * s2 * t / a;
    const double c2 = -2.0 * s->chi0 * s2 * (1.0 - 3.0 * t * t) / (a * a);
    const double c3 = 8.0 * s->chi0 * s2 * t * (2.0 - 3.0 * t * t) / (a * a * a);
    const double n = std::sqrt(1.0 + chi);
    const double n3 = n * n * n;
    const double n5 = n3 * n * n;
    return {n, c1 / (2.0 * n), c2 / (2.0 * n) - c1 * c1 / (4.0 * n3),
            c3 / (2.0 * n) - 3.0 * c1 * c2 / (4.0 * n3) + 3.0 * c1 * c1 * c1 / (8.0 * n5)};
  }
  const double h = fd_step_;
  const double f0 = n_tabulated(x);
  const double fp = n_tabulated(x + h), fm = n_tabulated(x - h);
  const double fpp = n_tabulated(x + 2 * h), fmm = n_tabulated(x - 2 * h);
  return {f0, (fp - fm) / (2 * h), (fp - 2 * f0 + fm) / (h * h),
          (fpp - 2 * fp + 2 * fm - fmm) / (2 * h * h * h)};
}

IndexDerivatives profile_derivatives(const SusceptibilityProfile& profile, double x) {
  return profile.derivatives(x);
}

ScattererChain::ScattererChain(std::vector<double> positions, std::vector<double> alphas,
                               double spacing)
    : positions_(std::move(positions)), alphas_(std::move(alphas)), spacing_(spacing) {
  if (positions_.empty()) throw EvaluationError("chain needs at least one scatterer");
  if (!(spacing_ > 0.0) || !std::isfinite(spacing_))
    throw EvaluationError("chain spacing must be positive");
  if (alphas_.size() != positions_.size())
    throw EvaluationError("polarizabilities and positions differ in length");
  for (std::size_t i = 0; i + 1 < positions_.size(); ++i) {
    if (std::abs(positions_[i + 1] - positions_[i] - spacing_) >=
        1e-12 * spacing_ + 4e-16 * std::abs(positions_[i + 1])) {
      std::ostringstream os;
      os << "chain positions not uniformly spaced at index " << i;
      throw EvaluationError(os.str());
    }
  }
  std::uint64_t h = 0xcbf29ce484222325ull;
  h = fnv1a(h, spacing_);
  for (std::size_t i = 0; i < positions_.size(); ++i) {
    if (!std::isfinite(alphas_[i]) || alphas_[i] < 0.0) {
      std::ostringstream os;
      os << "polarizability " << alphas_[i] << " at index " << i << " is invalid";
      throw EvaluationError(os.str());
    }
    h = fnv1a(h, positions_[i]);
    h = fnv1a(h, alphas_[i]);
  }
  hash_ = h;
}

ScattererChain ScattererChain::uniform(double x_start, double spacing, std::vector<double> alphas) {
  std::vector<double> pos(alphas.size());
  for (std::size_t i = 0; i < pos.size(); ++i) pos[i] = x_start + double(i) * spacing;
  return ScattererChain(std::move(pos), std::move(alphas), spacing);
}

bool ScattererChain::mirror_symmetric() const {
  const std::size_t n = alphas_.size();
  for (std::size_t i = 0; i < n / 2; ++i)
    if (alphas_[i] != alphas_[n - 1 - i]) return false;
  return true;
}

ScattererChain chain_from_profile(const SusceptibilityProfile& profile, std::size_t n,
                                  double x_start, double x_end) {
  if (n < 1) throw EvaluationError("chain_from_profile: N must be >= 1");
  if (!(x_end > x_start)) throw EvaluationError("chain_from_profile: x_end must exceed x_start");
  const double delta = n == 1 ? x_end - x_start : (x_end - x_start) / double(n - 1);
  std::vector<double> pos(n), alpha(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = x_start + double(i) * delta;
    double chi;
    if (!profile.is_interface(x)) {
      chi = profile.chi(x);
    } else if (i == 0) {
      chi = profile.chi_side(x, Side::right);
    } else if (i + 1 == n) {
      chi = profile.chi_side(x, Side::left);
    } else {
      chi = 0.5 * (profile.chi_side(x, Side::left) + profile.chi_side(x, Side::right));
    }
    if (!std::isfinite(chi) || chi < 0.0) {
      std::ostringstream os;
      os << "profile not evaluable at x = " << x;
      throw EvaluationError(os.str());
    }
    pos[i] = x;
    alpha[i] = chi * delta;
  }
  return ScattererChain(std::move(pos), std::move(alpha), delta);
}

SusceptibilityProfile profile_from_chain(const ScattererChain& chain) {
  Tabulated t;
  t.x.assign(chain.positions().begin(), chain.positions().end());
  for (std::size_t i = 0; i < chain.size(); ++i) t.chi.push_back(chain.chi(i));
  if (t.x.size() == 1) {
    t.x.push_back(t.x.front() + chain.spacing());
    t.chi.push_back(t.chi.front());
  }
  t.order = 1;
  return SusceptibilityProfile(std::move(t));
}

}  // namespace vdw
