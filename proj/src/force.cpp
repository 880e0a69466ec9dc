#include "vdw/force.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <numbers>
#include <sstream>
#include <string>
#include <thread>

#include "vdw/errors.hpp"
#include "vdw/transfer.hpp"

namespace vdw {
namespace {

ParticleForce integrate_particle(const ScattererChain& chain, std::size_t j,
                                 const QuadratureConfig& cfg, SpectralCache& cache) {
  const KappaIntegrand f = [&](const KappaNode& node) {
    const auto state = cache.get_or_compute(chain.hash(), node, [&] {
      return run_rescaled_recurrence(chain, node.kappa);
    });
    return IntegrandSample{state->ratio[j], state->magnitude[j]};
  };
  const QuadratureResult q = romberg_integrate(f, cfg);
  const double scale = 1.0 / (2.0 * std::numbers::pi);
  return {-scale * q.value, scale * q.est_error};
}

}  // namespace

ParticleForce force_on_particle(const ScattererChain& chain, std::size_t j,
                                const QuadratureConfig& cfg, SpectralCache* cache) {
  if (j >= chain.size()) {
    std::ostringstream os;
    os << "particle index " << j << " out of range [0, " << chain.size() << ")";
    throw RangeError(os.str());
  }
  SpectralCache local;
  try {
    return integrate_particle(chain, j, cfg, cache ? *cache : local);
  } catch (const Error& e) {
    std::ostringstream os;
    os << "particle " << j << ": " << e.what();
    if (e.kind() == "convergence") throw ConvergenceError(os.str());
    throw;
  }
}

bool ForceResult::ok() const {
  return std::none_of(failed.begin(), failed.end(), [](bool b) { return b; });
}

double ForceResult::net_force_ratio() const {
  double sum = 0.0, peak = 0.0;
  for (double f : forces) {
    sum += f;
    peak = std::max(peak, std::abs(f));
  }
  return peak > 0.0 ? std::abs(sum) / peak : 0.0;
}

ForceResult force_all(const ScattererChain& chain, const QuadratureConfig& cfg,
                      std::size_t parallelism, SpectralCache* cache) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::size_t n = chain.size();
  ForceResult out;
  out.forces.assign(n, 0.0);
  out.errors.assign(n, 0.0);
  out.failed.assign(n, false);
  out.failure_messages.assign(n, {});
  out.threads = std::max<std::size_t>(1, std::min(parallelism, n));

  SpectralCache local;
  SpectralCache& shared = cache ? *cache : local;
  const CacheStats before = shared.stats();

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t j = next++; j < n; j = next++) {
      try {
        const ParticleForce pf = integrate_particle(chain, j, cfg, shared);
        out.forces[j] = pf.force;
        out.errors[j] = pf.error;
      } catch (const std::exception& e) {
        out.failed[j] = true;
        out.forces[j] = std::nan("");
        out.failure_messages[j] = "particle " + std::to_string(j) + ": " + e.what();
      }
    }
  };
  if (out.threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(out.threads);
    for (std::size_t t = 0; t < out.threads; ++t) pool.emplace_back(worker);
  }

  CacheStats after = shared.stats();
  after.hits -= before.hits;
  after.misses -= before.misses;
  after.inflight_waits -= before.inflight_waits;
  after.evictions -= before.evictions;
  out.cache = after;
  out.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

double spectral_force(const ScattererChain& chain, std::size_t j, double kappa) {
  const ChainSpectralState st = run_rescaled_recurrence(chain, kappa);
  return -t22_and_derivative(st, j).ratio;
}

}  // namespace vdw
