#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <vector>

#include "hypcomm/arith.hpp"

namespace hypcomm {

/// Default ceiling for the auxiliary prime used to widen a support set.
inline constexpr unsigned long kDefaultWidenLimit = 1000;

/// Enumerates signed squarefree integers in a fixed order and returns the
/// first one accepted by `accept`.
///
/// Stage 0 runs over products of subsets of `support`; stage k multiplies
/// each of those by the k-th prime not in `support` (up to `widen_limit`).
/// Within a stage, absolute values ascend and +c precedes -c.
inline std::optional<Integer> find_squarefree(const std::vector<Integer>& support, unsigned long widen_limit,
                                              const std::function<bool(const Integer&)>& accept) {
  std::vector<Integer> products{Integer(1)};
  for (const auto& p : support) {
    const std::size_t n = products.size();
    for (std::size_t i = 0; i < n; ++i) products.push_back(products[i] * p);
  }
  std::sort(products.begin(), products.end());

  auto run_stage = [&](const Integer& extra) -> std::optional<Integer> {
    for (const auto& base : products) {
      const Integer c = base * extra;
      if (accept(c)) return c;
      const Integer neg = -c;
      if (accept(neg)) return neg;
    }
    return std::nullopt;
  };

  if (auto found = run_stage(Integer(1))) return found;
  for (unsigned long ell = 2; ell <= widen_limit; ++ell) {
    const Integer candidate(ell);
    if (!is_prime(candidate)) continue;
    if (std::find(support.begin(), support.end(), candidate) != support.end()) continue;
    if (auto found = run_stage(candidate)) return found;
  }
  return std::nullopt;
}

}  // namespace hypcomm
