#pragma once

#include <complex>

namespace vdw::specfun {

using cplx = std::complex<double>;

// Lanczos (g = 7, 9 terms) with reflection for Re z < 1/2.
// Throws PoleError at non-positive integers.
cplx log_gamma(cplx z);
cplx gamma(cplx z);
double gamma(double x);

// 1/Gamma(z); zero at the poles of Gamma instead of throwing.
cplx rgamma(cplx z);

// |Gamma(z)|^2 = Gamma(z) Gamma(conj z), always positive.
double gamma_pair_product(cplx z);

// Gauss series sum_n (a)_n (b)_n / ((c)_n n!) z^n with complex parameters.
// Requires |z| < 1. Throws SpecialFunctionError if it fails to converge.
cplx hyp2f1_series(cplx a, cplx b, cplx c, cplx z);

// 2F1(a, b; c; zeta) for zeta in [0, 1) where (a, b) are either both real or
// a complex-conjugate pair, so the result is real. Uses the series for
// zeta <= 1/2 and the zeta -> 1 - zeta connection formula above that. When
// c - a - b sits within `kDegenerateGap` of an integer the connection formula
// loses accuracy (logarithmic case); there the positive-term series is summed
// directly instead.
double hyp2f1(cplx a, cplx b, double c, double zeta);
// Same, with 1 - zeta supplied separately so that it keeps full relative
// precision when zeta is close to 1. zeta == 1 (w == 0) is allowed when
// Re(c - a - b) > 0.
double hyp2f1(cplx a, cplx b, double c, double zeta, double one_minus_zeta);

inline constexpr double kDegenerateGap = 1e-4;

// Lerch transcendent Phi(z, 3, x) = sum_{m>=0} z^m / (m + x)^3.
// Domain |z| < 1 or z == 1, x > 0.
double lerch_phi3(double z, double x);

// Generic-s entry point with the same contract; only s == 3 is supported.
double lerch_phi(double z, int s, double x);

}  // namespace vdw::specfun
