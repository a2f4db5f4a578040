#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "vstar/oracle.hpp"

namespace vstar {

/// Partition seed = u·x·z·y·v where synchronized pumping of x and y stays in
/// the language and unsynchronized pumping leaves it.
struct NestingPattern {
  std::size_t seed_index = 0;
  std::string seed;
  std::size_t u_len = 0, x_len = 0, z_len = 0, y_len = 0;
  std::size_t K = 0;  // bound at which the pattern was validated

  std::size_t x_begin() const noexcept { return u_len; }
  std::size_t x_end() const noexcept { return u_len + x_len; }
  std::size_t y_begin() const noexcept { return x_end() + z_len; }
  std::size_t y_end() const noexcept { return y_begin() + y_len; }

  std::string u() const { return seed.substr(0, u_len); }
  std::string x() const { return seed.substr(x_begin(), x_len); }
  std::string z() const { return seed.substr(x_end(), z_len); }
  std::string y() const { return seed.substr(y_begin(), y_len); }
  std::string v() const { return seed.substr(y_end()); }

  /// u·x^k·z·y^j·v
  std::string pumped(std::size_t k, std::size_t j) const;

  bool operator==(const NestingPattern&) const = default;
};

nlohmann::json to_json(const NestingPattern& p);

struct NestingLimits {
  std::size_t max_fragment = 8;  // bound on |x| and |y|
  std::size_t k_start = 2;
  std::size_t k_cap = 6;
};

/// All partitions (|x|,|y| <= max_fragment) of every seed that pass the
/// pumping tests at bound K. Order: seed, |u|, |x|, |z|, |y|.
std::vector<NestingPattern> candidate_nesting(MembershipOracle& o, const std::vector<std::string>& seeds,
                                              std::size_t K, const NestingLimits& limits = {});

/// Keeps the patterns that still pass at a larger bound K.
std::vector<NestingPattern> refine_nesting(MembershipOracle& o, const std::vector<NestingPattern>& patterns,
                                           std::size_t K);

/// Whether the pattern passes every pumping test at bound K.
bool passes_pumping(MembershipOracle& o, const NestingPattern& p, std::size_t K);

/// Replaces s[i..j] (1-based, inclusive) by k copies and asks the oracle.
bool is_k_repeatable(MembershipOracle& o, std::string_view s, std::size_t i, std::size_t j, std::size_t k);

}  // namespace vstar
