#include "vstar/oracle.hpp"

namespace vstar {

CachingOracle::CachingOracle(std::shared_ptr<MembershipOracle> backend) : backend_(std::move(backend)) {}

bool CachingOracle::query(std::string_view s) {
  {
    std::lock_guard lock(mutex_);
    ++stats_.total_raw;
    if (auto it = cache_.find(std::string(s)); it != cache_.end()) {
      ++stats_.cache_hits;
      return it->second;
    }
  }
  bool answer = backend_->query(s);
  std::lock_guard lock(mutex_);
  auto [it, inserted] = cache_.emplace(std::string(s), answer);
  if (inserted) {
    ++stats_.unique;
  } else {
    // Another thread answered the same string first.
    ++stats_.cache_hits;
  }
  return it->second;
}

std::optional<bool> CachingOracle::peek(std::string_view s) const {
  std::lock_guard lock(mutex_);
  if (auto it = cache_.find(std::string(s)); it != cache_.end()) return it->second;
  return std::nullopt;
}

QueryStats CachingOracle::stats() const {
  std::lock_guard lock(mutex_);
  return stats_;
}

}  // namespace vstar
