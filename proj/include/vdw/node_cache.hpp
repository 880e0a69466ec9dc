#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <future>
#include <list>
#include <memory>
#include <mutex>
#include <unordered_map>

#include "vdw/quadrature.hpp"
#include "vdw/transfer.hpp"

namespace vdw {

struct CacheStats {
  std::uint64_t hits = 0;
  std::uint64_t misses = 0;
  std::uint64_t inflight_waits = 0;  // hits that had to wait for another worker
  std::uint64_t evictions = 0;
  std::size_t bytes = 0;
  std::size_t entries = 0;

  double hit_rate() const {
    const auto total = hits + misses;
    return total ? static_cast<double>(hits) / static_cast<double>(total) : 0.0;
  }
};

// Thread-safe map (chain hash, lattice node) -> spectral state. A lookup of a
// node that another worker is still computing blocks on that computation.
// Least recently used entries are dropped once the byte budget is exceeded.
class SpectralCache {
 public:
  using StatePtr = std::shared_ptr<const ChainSpectralState>;

  explicit SpectralCache(std::size_t budget_bytes = default_budget());

  // CASIMIR_CHAIN_CACHE_BYTES if set, otherwise 4 GiB.
  static std::size_t default_budget();

  StatePtr get_or_compute(std::uint64_t chain_hash, const KappaNode& node,
                          const std::function<ChainSpectralState()>& compute);

  CacheStats stats() const;
  void reset_stats();
  void clear();
  std::size_t budget() const { return budget_; }

 private:
  struct Key {
    std::uint64_t chain;
    int level;
    std::int64_t index;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const;
  };
  struct Entry {
    std::shared_future<StatePtr> future;
    std::list<Key>::iterator lru;
    std::size_t bytes = 0;
    bool ready = false;
  };

  void evict_locked();

  std::size_t budget_;
  mutable std::mutex mutex_;
  std::unordered_map<Key, Entry, KeyHash> map_;
  std::list<Key> lru_;  // front = most recent, ready entries only
  CacheStats stats_;
};

}  // namespace vdw
