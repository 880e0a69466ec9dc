#include "vdw/node_cache.hpp"

#include <cstdlib>
#include <string>

namespace vdw {

std::size_t SpectralCache::KeyHash::operator()(const Key& k) const {
  std::uint64_t h = k.chain;
  h ^= static_cast<std::uint64_t>(k.index) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  h ^= static_cast<std::uint64_t>(static_cast<std::int64_t>(k.level)) + 0x9e3779b97f4a7c15ULL +
       (h << 6) + (h >> 2);
  return static_cast<std::size_t>(h);
}

SpectralCache::SpectralCache(std::size_t budget_bytes) : budget_(budget_bytes) {}

std::size_t SpectralCache::default_budget() {
  if (const char* env = std::getenv("CASIMIR_CHAIN_CACHE_BYTES")) {
    try {
      std::size_t pos = 0;
      const unsigned long long v = std::stoull(env, &pos);
      if (pos == std::string(env).size()) return static_cast<std::size_t>(v);
    } catch (...) {
    }
  }
  return std::size_t{4} << 30;
}

SpectralCache::StatePtr SpectralCache::get_or_compute(
    std::uint64_t chain_hash, const KappaNode& node,
    const std::function<ChainSpectralState()>& compute) {
  if (!node.keyed) {
    {
      std::lock_guard lock(mutex_);
      ++stats_.misses;
    }
    return std::make_shared<const ChainSpectralState>(compute());
  }

  const Key key{chain_hash, node.level, node.index};
  std::promise<StatePtr> promise;
  {
    std::unique_lock lock(mutex_);
    auto it = map_.find(key);
    if (it != map_.end()) {
      ++stats_.hits;
      if (it->second.ready) {
        lru_.splice(lru_.begin(), lru_, it->second.lru);
        return it->second.future.get();
      }
      ++stats_.inflight_waits;
      auto fut = it->second.future;
      lock.unlock();
      return fut.get();
    }
    ++stats_.misses;
    Entry e;
    e.future = promise.get_future().share();
    e.lru = lru_.end();
    map_.emplace(key, std::move(e));
  }

  StatePtr value;
  try {
    value = std::make_shared<const ChainSpectralState>(compute());
  } catch (...) {
    promise.set_exception(std::current_exception());
    std::lock_guard lock(mutex_);
    map_.erase(key);
    throw;
  }
  promise.set_value(value);
  {
    std::lock_guard lock(mutex_);
    auto it = map_.find(key);
    if (it != map_.end()) {
      it->second.ready = true;
      it->second.bytes = value->bytes();
      lru_.push_front(key);
      it->second.lru = lru_.begin();
      stats_.bytes += it->second.bytes;
      evict_locked();
    }
  }
  return value;
}

void SpectralCache::evict_locked() {
  while (stats_.bytes > budget_ && !lru_.empty()) {
    const Key victim = lru_.back();
    lru_.pop_back();
    auto it = map_.find(victim);
    stats_.bytes -= it->second.bytes;
    map_.erase(it);
    ++stats_.evictions;
  }
}

CacheStats SpectralCache::stats() const {
  std::lock_guard lock(mutex_);
  CacheStats s = stats_;
  s.entries = map_.size();
  return s;
}

void SpectralCache::reset_stats() {
  std::lock_guard lock(mutex_);
  const std::size_t bytes = stats_.bytes;
  stats_ = {};
  stats_.bytes = bytes;
}

void SpectralCache::clear() {
  std::lock_guard lock(mutex_);
  map_.clear();
  lru_.clear();
  stats_.bytes = 0;
}

}  // namespace vdw
