#include "vdw/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "vdw/errors.hpp"

namespace vdw {
namespace {

constexpr double kExpGuard = 700.0;
constexpr double kRenormHigh = 1e150;
constexpr double kRenormLow = 1e-150;

// Keeps v representable; returns the log of the factor divided out.
double renormalize(Vec2& v) {
  const double m = std::max(std::abs(v[0]), std::abs(v[1]));
  if (m == 0.0 || (m < kRenormHigh && m > kRenormLow)) return 0.0;
  v[0] /= m;
  v[1] /= m;
  return std::log(m);
}

void require_finite(const Vec2& v, std::size_t j, double kappa, const char* sweep) {
  if (!std::isfinite(v[0]) || !std::isfinite(v[1])) {
    std::ostringstream os;
    os << "non-finite " << sweep << " vector at particle " << j << ", kappa = " << kappa;
    throw OverflowError(os.str());
  }
}

}  // namespace

Transfer2 propagation_matrix(double kappa, double delta) {
  if (kappa < 0.0 || delta < 0.0) throw RangeError("propagation_matrix: kappa and delta must be >= 0");
  const double x = kappa * delta;
  if (x > kExpGuard) {
    std::ostringstream os;
    os << "propagation_matrix: kappa*delta = " << x
       << " overflows; use the rescaled recurrence instead";
    throw RangeError(os.str());
  }
  return {std::exp(-x), 0.0, 0.0, std::exp(x)};
}

Transfer2 scatterer_matrix(double kappa, double alpha) {
  const double s = 0.5 * kappa * alpha;
  return {1.0 - s, -s, s, 1.0 + s};
}

Complex2x2 scattering_matrix_from_transfer(std::complex<double> alpha, std::complex<double> beta) {
  const double d = std::norm(alpha) - std::norm(beta);
  if (!(d > 0.0))
    throw InvalidTransferError(
        "|alpha|^2 <= |beta|^2: outgoing waves must not exceed the ingoing waves");
  const double r = std::sqrt(d);
  const std::complex<double> inv = 1.0 / std::conj(alpha);
  return {{{r * inv, std::conj(beta) * inv}, {-beta * inv, r * inv}}};
}

double T22Pair::t22() const { return std::exp(log_t22); }

std::size_t ChainSpectralState::bytes() const {
  return sizeof(*this) + a.capacity() * sizeof(Vec2) + b.capacity() * sizeof(Vec2) +
         (log_scale_a.capacity() + log_scale_b.capacity() + chi.capacity() + ratio.capacity() +
          magnitude.capacity() + log_t22.capacity()) *
             sizeof(double);
}

ChainSpectralState run_rescaled_recurrence(const ScattererChain& chain, double kappa,
                                           RecurrenceOptions options) {
  if (!(kappa > 0.0) || !std::isfinite(kappa))
    throw RangeError("run_rescaled_recurrence: kappa must be positive and finite");
  const std::size_t n = chain.size();
  const double delta = chain.spacing();
  const double kd = kappa * delta;
  if (!options.compensate && kd > kExpGuard)
    throw RangeError("uncompensated recurrence: kappa*delta too large");

  ChainSpectralState st;
  st.kappa = kappa;
  st.delta = delta;
  st.a.resize(n);
  st.b.resize(n);
  st.log_scale_a.assign(n, 0.0);
  st.log_scale_b.assign(n, 0.0);
  st.chi.resize(n);
  st.ratio.resize(n);
  st.magnitude.resize(n);
  st.log_t22.resize(n);
  for (std::size_t j = 0; j < n; ++j) st.chi[j] = chain.chi(j);

  // e^{-n kappa delta} P = diag(e^{-(n+1) kd}, e^{-(n-1) kd}); the exponent
  // n*kd is added back to the log scale so T22 stays the same number for all j.
  auto step = [&](const Vec2& v, std::size_t j, bool transpose, double& log_scale) {
    const Transfer2 r = scatterer_matrix(kappa, chain.alpha(j));
    Vec2 w = transpose ? r.transposed() * v : r * v;
    if (options.compensate) {
      const double nj = std::sqrt(1.0 + st.chi[j]);
      w[0] *= std::exp(-(nj + 1.0) * kd);
      w[1] *= std::exp(-(nj - 1.0) * kd);
      log_scale += nj * kd;
    } else {
      w[0] *= std::exp(-kd);
      w[1] *= std::exp(kd);
    }
    log_scale += renormalize(w);
    return w;
  };

  st.a[0] = {0.0, 1.0};
  for (std::size_t j = 0; j + 1 < n; ++j) {
    double ls = st.log_scale_a[j];
    st.a[j + 1] = step(st.a[j], j, false, ls);
    st.log_scale_a[j + 1] = ls;
    require_finite(st.a[j + 1], j + 1, kappa, "forward");
  }
  st.b[n - 1] = {0.0, 1.0};
  for (std::size_t j = n - 1; j > 0; --j) {
    double ls = st.log_scale_b[j];
    st.b[j - 1] = step(st.b[j], j, true, ls);
    st.log_scale_b[j - 1] = ls;
    require_finite(st.b[j - 1], j - 1, kappa, "backward");
  }

  for (std::size_t j = 0; j < n; ++j) {
    const Vec2& a = st.a[j];
    const Vec2& b = st.b[j];
    const Vec2 ra = scatterer_matrix(kappa, chain.alpha(j)) * a;
    const double t22 = b[0] * ra[0] + b[1] * ra[1];
    if (!(t22 > 0.0) || !std::isfinite(t22)) {
      std::ostringstream os;
      os << "T22 = " << t22 << " is not positive at particle " << j << ", kappa = " << kappa;
      throw StateError(os.str());
    }
    const double pref = -delta * kappa * kappa * st.chi[j];
    const double x1 = b[0] * a[1], x2 = b[1] * a[0];
    st.ratio[j] = pref * (x1 + x2) / t22;
    st.magnitude[j] = std::abs(pref) * (std::abs(x1) + std::abs(x2)) / t22;
    st.log_t22[j] = std::log(t22) + st.log_scale_a[j] + st.log_scale_b[j];
    if (!std::isfinite(st.ratio[j])) {
      std::ostringstream os;
      os << "non-finite force integrand at particle " << j << ", kappa = " << kappa;
      throw OverflowError(os.str());
    }
  }
  return st;
}

T22Pair t22_and_derivative(const ChainSpectralState& state, std::size_t j) {
  if (j >= state.size()) {
    std::ostringstream os;
    os << "particle index " << j << " out of range [0, " << state.size() << ")";
    throw RangeError(os.str());
  }
  return {state.log_t22[j], state.ratio[j]};
}

}  // namespace vdw
