#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace vdw {

// Refractive index n = sqrt(1 + chi) and its first three spatial derivatives.
struct IndexDerivatives {
  double n = 1.0;
  double dn = 0.0;
  double d2n = 0.0;
  double d3n = 0.0;
};

// Layers separated by sorted interfaces; chi has one more entry than
// boundaries (the two outer entries are the half-infinite exterior layers).
struct PiecewiseConstant {
  std::vector<double> boundaries;
  std::vector<double> chi;
};

// chi(x) = chi0 sech^2(x / a).
struct Sech2 {
  double chi0 = 1.0;
  double a = 1.0;
};

// Sampled chi on a strictly increasing grid; linear (order 1) or natural cubic
// spline (order 3) interpolation, vacuum outside the grid.
struct Tabulated {
  std::vector<double> x;
  std::vector<double> chi;
  int order = 1;
};

enum class Side { left, right };

class SusceptibilityProfile {
 public:
  using Kind = std::variant<PiecewiseConstant, Sech2, Tabulated>;

  explicit SusceptibilityProfile(Kind kind);

  static SusceptibilityProfile vacuum();
  static SusceptibilityProfile homogeneous_block(double x_left, double x_right, double chi);
  static SusceptibilityProfile three_layer(double n1, double n2, double n3, double a);
  static SusceptibilityProfile sech2(double chi0, double a);

  const Kind& kind() const { return kind_; }
  std::string kind_name() const;

  // chi at x. At an interface this is the right-hand limit; use chi_side for
  // an explicit choice.
  double chi(double x) const;
  double chi_side(double x, Side side) const;
  double n(double x) const;

  // Throws InterfaceError when x is a flagged discontinuity.
  IndexDerivatives derivatives(double x) const;

  bool is_interface(double x) const;
  // Discontinuities of chi, sorted.
  const std::vector<double>& interfaces() const { return interfaces_; }

  // Interval outside of which chi is constant (to within 1e-14 for sech^2).
  double support_lo() const { return support_lo_; }
  double support_hi() const { return support_hi_; }

  // Refractive index of the exterior half-spaces.
  double n_left() const;
  double n_right() const;

  // Finite-difference step used for tabulated derivatives.
  double fd_step() const { return fd_step_; }

 private:
  double chi_tabulated(double x) const;
  double n_tabulated(double x) const;

  Kind kind_;
  std::vector<double> interfaces_;
  std::vector<double> spline_m_;  // second derivatives for cubic tabulated
  double support_lo_ = 0.0;
  double support_hi_ = 0.0;
  double fd_step_ = 1e-6;
};

// Profile derivatives, the free-function form used throughout the engines.
IndexDerivatives profile_derivatives(const SusceptibilityProfile& profile, double x);

// Finite chain of point scatterers with uniform spacing.
class ScattererChain {
 public:
  // positions must be uniformly spaced by `spacing`; throws EvaluationError on
  // any invariant violation.
  ScattererChain(std::vector<double> positions, std::vector<double> polarizabilities,
                 double spacing);

  static ScattererChain uniform(double x_start, double spacing,
                                std::vector<double> polarizabilities);

  std::size_t size() const { return positions_.size(); }
  double spacing() const { return spacing_; }
  std::span<const double> positions() const { return positions_; }
  std::span<const double> polarizabilities() const { return alphas_; }
  double position(std::size_t i) const { return positions_[i]; }
  double alpha(std::size_t i) const { return alphas_[i]; }
  // Local susceptibility alpha_i / delta.
  double chi(std::size_t i) const { return alphas_[i] / spacing_; }

  // Stable content hash, used as part of the spectral cache key.
  std::uint64_t hash() const { return hash_; }

  // True when alpha_i == alpha_{N-1-i} for all i.
  bool mirror_symmetric() const;

 private:
  std::vector<double> positions_;
  std::vector<double> alphas_;
  double spacing_;
  std::uint64_t hash_ = 0;
};

// Samples the profile at N equally spaced points on [x_start, x_end] and sets
// alpha_i = chi(x_i) * delta. Points on an interface take the limit from
// inside the span at the ends and the two-sided mean elsewhere.
ScattererChain chain_from_profile(const SusceptibilityProfile& profile, std::size_t n,
                                  double x_start, double x_end);

// Tabulated profile (linear interpolation) reconstructed from chi_i = alpha_i / delta.
SusceptibilityProfile profile_from_chain(const ScattererChain& chain);

}  // namespace vdw
