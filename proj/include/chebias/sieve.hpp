#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "chebias/error.hpp"

namespace chebias {

inline constexpr std::uint64_t sieve_limit_cap = std::uint64_t{1} << 34;

/// Primes up to `limit` by the plain sieve of Eratosthenes.
inline std::vector<std::uint64_t> small_primes(std::uint64_t limit) {
  std::vector<std::uint64_t> out;
  if (limit < 2) return out;
  std::vector<bool> composite(limit + 1, false);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return out;
}

/// Segmented sieve over [lo, hi]; calls fn(p) for each prime in ascending order.
///
/// Segments are 2^18 bytes so a block of odd candidates stays in L2.
template <class Fn>
void for_each_prime(std::uint64_t lo, std::uint64_t hi, Fn&& fn) {
  if (hi > sieve_limit_cap) throw error("sieve: limit exceeds cap of 2^34");
  if (hi < 2 || lo > hi) return;
  if (lo <= 2) {
    fn(std::uint64_t{2});
    lo = 3;
  }
  if (lo > hi) return;
  if (lo % 2 == 0) ++lo;
  const auto root = static_cast<std::uint64_t>(std::sqrt(static_cast<long double>(hi))) + 1;
  const auto base = small_primes(root);

  constexpr std::uint64_t segment_odds = std::uint64_t{1} << 18;
  std::vector<unsigned char> seg(segment_odds);
  for (std::uint64_t start = lo; start <= hi; start += 2 * segment_odds) {
    const std::uint64_t end = std::min(hi, start + 2 * segment_odds - 1);  // inclusive
    const std::uint64_t count = (end - start) / 2 + 1;
    std::fill(seg.begin(), seg.begin() + static_cast<std::ptrdiff_t>(count), 1);
    for (std::uint64_t p : base) {
      if (p == 2) continue;
      if (p * p > end) break;
      std::uint64_t first = std::max(p * p, (start + p - 1) / p * p);
      if (first % 2 == 0) first += p;
      for (std::uint64_t j = first; j <= end; j += 2 * p) seg[(j - start) / 2] = 0;
    }
    for (std::uint64_t i = 0; i < count; ++i)
      if (seg[i]) {
        const std::uint64_t n = start + 2 * i;
        if (n > 1) fn(n);
      }
  }
}

/// All primes <= limit, ascending.
inline std::vector<std::uint64_t> sieve_primes(std::uint64_t limit) {
  std::vector<std::uint64_t> out;
  for_each_prime(2, limit, [&](std::uint64_t p) { out.push_back(p); });
  return out;
}

}  // namespace chebias
