#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "vdw/node_cache.hpp"
#include "vdw/profile.hpp"
#include "vdw/quadrature.hpp"

namespace vdw {

struct ParticleForce {
  double force = 0.0;
  double error = 0.0;
};

// F_j = -(1/2pi) int_0^inf dT22/T22 dkappa in units hbar c = 1; j is 0-based.
// A positive value points towards +x. Without a cache a private one is used.
ParticleForce force_on_particle(const ScattererChain& chain, std::size_t j,
                                const QuadratureConfig& cfg = {}, SpectralCache* cache = nullptr);

struct ForceResult {
  std::vector<double> forces;
  std::vector<double> errors;
  std::vector<bool> failed;
  std::vector<std::string> failure_messages;
  double wall_seconds = 0.0;
  std::size_t threads = 1;
  CacheStats cache;

  bool ok() const;
  // |sum F| relative to max |F|; zero for an all-zero result.
  double net_force_ratio() const;
};

// All particle forces, particle-parallel over `parallelism` workers sharing
// one spectral cache. Per-particle failures are recorded, not thrown.
ForceResult force_all(const ScattererChain& chain, const QuadratureConfig& cfg = {},
                      std::size_t parallelism = 1, SpectralCache* cache = nullptr);

// The integrand -dT22/T22 of particle j at one kappa.
double spectral_force(const ScattererChain& chain, std::size_t j, double kappa);

}  // namespace vdw
