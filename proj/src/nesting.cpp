#include "vstar/nesting.hpp"

#include "vstar/error.hpp"

namespace vstar {

namespace {

std::string repeat(std::string_view s, std::size_t k) {
  std::string out;
  out.reserve(s.size() * k);
  for (std::size_t i = 0; i < k; ++i) out += s;
  return out;
}

}  // namespace

std::string NestingPattern::pumped(std::size_t k, std::size_t j) const {
  return u() + repeat(x(), k) + z() + repeat(y(), j) + v();
}

nlohmann::json to_json(const NestingPattern& p) {
  return {{"seed_index", p.seed_index}, {"u", p.u()}, {"x", p.x()}, {"z", p.z()},
          {"y", p.y()},                 {"v", p.v()}, {"K", p.K}};
}

bool passes_pumping(MembershipOracle& o, const NestingPattern& p, std::size_t K) {
  if (K < 2) throw DomainError("pumping bound must be at least 2");
  // Cheapest rejection first: pumping x alone once.
  if (o.query(p.pumped(2, 1))) return false;
  for (std::size_t k = 1; k <= K; ++k) {
    if (!o.query(p.pumped(k, k))) return false;
  }
  for (std::size_t k = 0; k <= K; ++k) {
    for (std::size_t j = 0; j <= K; ++j) {
      if (k != j && o.query(p.pumped(k, j))) return false;
    }
  }
  return true;
}

std::vector<NestingPattern> candidate_nesting(MembershipOracle& o, const std::vector<std::string>& seeds,
                                              std::size_t K, const NestingLimits& limits) {
  if (K < 2) throw DomainError("pumping bound must be at least 2");
  std::vector<NestingPattern> out;
  for (std::size_t si = 0; si < seeds.size(); ++si) {
    const std::string& s = seeds[si];
    const std::size_t n = s.size();
    for (std::size_t u = 0; u + 2 <= n; ++u) {
      for (std::size_t x = 1; x <= limits.max_fragment && u + x + 1 <= n; ++x) {
        for (std::size_t z = 0; u + x + z + 1 <= n; ++z) {
          for (std::size_t y = 1; y <= limits.max_fragment && u + x + z + y <= n; ++y) {
            NestingPattern p{si, s, u, x, z, y, K};
            if (passes_pumping(o, p, K)) out.push_back(std::move(p));
          }
        }
      }
    }
  }
  return out;
}

std::vector<NestingPattern> refine_nesting(MembershipOracle& o, const std::vector<NestingPattern>& patterns,
                                           std::size_t K) {
  std::vector<NestingPattern> out;
  for (const auto& p : patterns) {
    if (!passes_pumping(o, p, K)) continue;
    out.push_back(p);
    out.back().K = K;
  }
  return out;
}

bool is_k_repeatable(MembershipOracle& o, std::string_view s, std::size_t i, std::size_t j, std::size_t k) {
  if (i < 1 || i > j || j > s.size()) throw DomainError("span out of range");
  std::string probe(s.substr(0, i - 1));
  probe += repeat(s.substr(i - 1, j - i + 1), k);
  probe += s.substr(j);
  return o.query(probe);
}

}  // namespace vstar
