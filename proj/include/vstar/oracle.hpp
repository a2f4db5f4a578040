#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>

namespace vstar {

/// Black-box membership function χ_L over raw byte strings. Implementations
/// must be deterministic.
class MembershipOracle {
 public:
  virtual ~MembershipOracle() = default;
  virtual bool query(std::string_view s) = 0;
};

class FunctionOracle final : public MembershipOracle {
 public:
  explicit FunctionOracle(std::function<bool(std::string_view)> fn) : fn_(std::move(fn)) {}
  bool query(std::string_view s) override { return fn_(s); }

 private:
  std::function<bool(std::string_view)> fn_;
};

struct QueryStats {
  std::uint64_t total_raw = 0;
  std::uint64_t unique = 0;
  std::uint64_t cache_hits = 0;

  bool operator==(const QueryStats&) const = default;
};

/// Memoizing wrapper: every distinct string reaches the backend at most once.
/// Safe for concurrent use; the backend itself is called outside the lock only
/// for strings not yet cached.
class CachingOracle final : public MembershipOracle {
 public:
  explicit CachingOracle(std::shared_ptr<MembershipOracle> backend);

  bool query(std::string_view s) override;
  /// Cached answer without touching counters or the backend.
  std::optional<bool> peek(std::string_view s) const;
  QueryStats stats() const;

 private:
  std::shared_ptr<MembershipOracle> backend_;
  mutable std::mutex mutex_;
  std::unordered_map<std::string, bool> cache_;
  QueryStats stats_;
};

}  // namespace vstar
