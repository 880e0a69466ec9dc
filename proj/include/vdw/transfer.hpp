#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <vector>

#include "vdw/profile.hpp"

namespace vdw {

using Vec2 = std::array<double, 2>;

// Real 2x2 matrix on the imaginary-frequency axis.
struct Transfer2 {
  double m11 = 1.0, m12 = 0.0, m21 = 0.0, m22 = 1.0;

  static Transfer2 identity() { return {}; }
  double det() const { return m11 * m22 - m12 * m21; }
  Transfer2 transposed() const { return {m11, m21, m12, m22}; }
  Vec2 operator*(const Vec2& v) const { return {m11 * v[0] + m12 * v[1], m21 * v[0] + m22 * v[1]}; }
  Transfer2 operator*(const Transfer2& o) const {
    return {m11 * o.m11 + m12 * o.m21, m11 * o.m12 + m12 * o.m22,
            m21 * o.m11 + m22 * o.m21, m21 * o.m12 + m22 * o.m22};
  }
};

// diag(e^{-kappa delta}, e^{kappa delta}). Throws RangeError when kappa*delta
// is beyond the exponent range (the rescaled recurrence handles that case).
Transfer2 propagation_matrix(double kappa, double delta);

// 1 - (kappa alpha / 2) [[1, 1], [-1, -1]]; determinant exactly one.
Transfer2 scatterer_matrix(double kappa, double alpha);

using Complex2x2 = std::array<std::array<std::complex<double>, 2>, 2>;

// Scattering matrix of a real-frequency transfer matrix [[alpha, beta*], [beta, alpha*]].
Complex2x2 scattering_matrix_from_transfer(std::complex<double> alpha, std::complex<double> beta);

// T22 of one particle, kept in log form because the unrescaled value
// overflows for large kappa*delta*N.
struct T22Pair {
  double log_t22 = 0.0;  // log of T22 with a_1 = b_N = (0, 1)
  double ratio = 0.0;    // dT22 / T22 (derivative with respect to x_j)
  double t22() const;
  double dt22() const { return ratio * t22(); }
};

struct RecurrenceOptions {
  // Multiply every step by e^{-n kappa delta}. Turning it off requires
  // kappa*delta small enough that the plain products stay representable.
  bool compensate = true;
};

// Forward/backward sweep results at one imaginary wavenumber. The stored a/b
// vectors are the true second column / second row divided by
// exp(log_scale_*); one sweep serves every particle.
struct ChainSpectralState {
  double kappa = 0.0;
  double delta = 0.0;
  std::vector<Vec2> a;
  std::vector<Vec2> b;
  std::vector<double> log_scale_a;
  std::vector<double> log_scale_b;
  std::vector<double> chi;        // alpha_j / delta
  std::vector<double> ratio;      // dT22/T22 per particle
  std::vector<double> magnitude;  // |delta kappa^2 chi_j| (|b0 a1| + |b1 a0|) / T22
  std::vector<double> log_t22;

  std::size_t size() const { return a.size(); }
  std::size_t bytes() const;
};

ChainSpectralState run_rescaled_recurrence(const ScattererChain& chain, double kappa,
                                           RecurrenceOptions options = {});

// T22 and its derivative for particle j (0-based). Throws RangeError for an
// invalid index.
T22Pair t22_and_derivative(const ChainSpectralState& state, std::size_t j);

}  // namespace vdw
