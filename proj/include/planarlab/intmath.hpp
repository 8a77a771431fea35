#ifndef PLANARLAB_INTMATH_HPP
#define PLANARLAB_INTMATH_HPP

#include <bit>
#include <cstdint>
#include <numeric>

namespace planarlab {

// t = 2^k for some k >= 0 (so 1 counts).
constexpr bool is_power_of_two(std::uint64_t t) noexcept { return std::has_single_bit(t); }

// Largest t with t^4 <= q.
constexpr std::uint64_t fourth_root_floor(std::uint64_t q) noexcept {
  std::uint64_t t = 0;
  while (true) {
    const unsigned __int128 n = static_cast<unsigned __int128>(t + 1);
    if (n * n * n * n > q) return t;
    ++t;
  }
}

// floor(sqrt(n)).
constexpr std::uint64_t isqrt(std::uint64_t n) noexcept {
  if (n < 2) return n;
  std::uint64_t x = static_cast<std::uint64_t>(__builtin_sqrtl(static_cast<long double>(n)));
  while (static_cast<unsigned __int128>(x) * x > n) --x;
  while (static_cast<unsigned __int128>(x + 1) * (x + 1) <= n) ++x;
  return x;
}

// Smallest prime factor of n >= 2.
constexpr std::uint64_t smallest_prime_factor(std::uint64_t n) noexcept {
  for (std::uint64_t p = 2; p * p <= n; ++p)
    if (n % p == 0) return p;
  return n;
}

// Writes t = 2^m * o with o odd. t must be nonzero.
struct TwoAdic {
  unsigned m;
  std::uint64_t o;
};

constexpr TwoAdic two_adic(std::uint64_t t) noexcept {
  const unsigned m = static_cast<unsigned>(std::countr_zero(t));
  return {m, t >> m};
}

}  // namespace planarlab

#endif  // PLANARLAB_INTMATH_HPP
