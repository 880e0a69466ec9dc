#pragma once

#include <cstdint>
#include <functional>
#include <optional>

namespace vdw {

// A point of the transformed axis. Keyed nodes sit on the global dyadic
// lattice nu = index * 2^-level with (level, index) in canonical form
// (index odd, or index == level == 0), so equal keys always mean the same nu
// no matter which integration requested them.
struct KappaNode {
  int level = 0;
  std::int64_t index = 0;
  double nu = 0.0;
  double kappa = 0.0;
  bool keyed = true;

  static KappaNode lattice(int level, std::int64_t index);
  static KappaNode unkeyed(double nu);
};

struct MixedRulePoint {
  double kappa;
  double jacobian;
};

// kappa = exp(nu - exp(-nu)), jacobian = dkappa/dnu.
MixedRulePoint mixed_rule_transform(double nu);
// Inverse map, nu(kappa), by Newton iteration.
double mixed_rule_inverse(double kappa);

struct IntegrandSample {
  double value = 0.0;
  // Scale of the terms that cancel into `value` (>= |value|). Used as a
  // noise floor when the integral itself is zero by symmetry.
  double magnitude = 0.0;
};

using KappaIntegrand = std::function<IntegrandSample(const KappaNode&)>;

struct QuadratureConfig {
  double tol = 1e-10;
  int max_levels = 20;
  double probe_step = 1.0;   // must be a power of two so probes stay on the lattice
  int probe_count = 3;       // consecutive negligible probes that end the search
  double nu_limit = 40.0;    // the search gives up beyond |nu| = nu_limit
  double max_step = 0.25;    // convergence is only tested once h <= max_step
  // Explicit kappa limits. When set they replace the search on that side
  // and the nodes are no longer lattice keyed.
  std::optional<double> kappa_lo;
  std::optional<double> kappa_hi;
};

struct QuadratureResult {
  double value = 0.0;
  double est_error = 0.0;
  std::size_t nodes_used = 0;
  double nu_min = 0.0;
  double nu_max = 0.0;
  int levels = 0;
  double magnitude = 0.0;  // integral of the magnitude channel
};

// Integral over kappa in (0, inf) (or the configured sub-range) of the
// integrand, via Romberg on the mixed-rule axis. Throws ConvergenceError.
QuadratureResult romberg_integrate(const KappaIntegrand& f, const QuadratureConfig& cfg = {});

// Convenience for plain functions of kappa.
QuadratureResult romberg_integrate(const std::function<double(double)>& f,
                                   const QuadratureConfig& cfg = {});

}  // namespace vdw
