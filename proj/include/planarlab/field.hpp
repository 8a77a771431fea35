#ifndef PLANARLAB_FIELD_HPP
#define PLANARLAB_FIELD_HPP

#include <array>
#include <bit>
#include <compare>
#include <cstdint>
#include <string>

#include "errors.hpp"

namespace planarlab {

// An element of GF(2^r) in the polynomial basis: bit i is the coefficient of X^i.
struct FieldElem {
  std::uint32_t bits = 0;

  constexpr FieldElem() = default;
  constexpr explicit FieldElem(std::uint32_t b) : bits(b) {}

  constexpr bool is_zero() const noexcept { return bits == 0; }
  friend constexpr auto operator<=>(FieldElem, FieldElem) = default;
};

namespace gf2x {

// Arithmetic in GF(2)[X] with polynomials packed into 64-bit words.

constexpr int degree(std::uint64_t p) noexcept { return p == 0 ? -1 : 63 - std::countl_zero(p); }

constexpr std::uint64_t mod(std::uint64_t a, std::uint64_t m) noexcept {
  const int dm = degree(m);
  for (int da = degree(a); da >= dm; da = degree(a)) a ^= m << (da - dm);
  return a;
}

// Irreducibility over GF(2) by trial division with every polynomial of
// degree 1..deg(p)/2.
constexpr bool is_irreducible(std::uint64_t p) noexcept {
  const int d = degree(p);
  if (d < 1) return false;
  for (int k = 1; 2 * k <= d; ++k)
    for (std::uint64_t f = std::uint64_t{1} << k; f < (std::uint64_t{2} << k); ++f)
      if (mod(p, f) == 0) return false;
  return true;
}

}  // namespace gf2x

// GF(2^r) for 1 <= r <= 24, modulus the lexicographically smallest
// irreducible polynomial of degree r (compared as an integer, bit i = X^i).
// Immutable after construction.
class Field {
 public:
  static constexpr int max_degree = 24;

  static Field make(int r) {
    if (r < 1 || r > max_degree)
      throw range_error("field degree r=" + std::to_string(r) + " outside [1, 24]");
    const std::uint64_t lo = std::uint64_t{1} << r;
    for (std::uint64_t m = lo; m < 2 * lo; ++m)
      if (gf2x::is_irreducible(m)) return Field(r, static_cast<std::uint32_t>(m));
    throw error("no irreducible polynomial found");  // unreachable
  }

  int degree() const noexcept { return r_; }
  std::uint32_t order() const noexcept { return q_; }
  std::uint32_t modulus() const noexcept { return modulus_; }

  // Modulus as a bit string, highest power first ("1011" is X^3+X+1).
  std::string modulus_bits() const {
    std::string s;
    for (int i = r_; i >= 0; --i) s.push_back(((modulus_ >> i) & 1u) ? '1' : '0');
    return s;
  }

  bool contains(FieldElem x) const noexcept { return x.bits < q_; }

  FieldElem elem(std::uint32_t bits) const {
    if (bits >= q_) throw range_error("element bits exceed field order");
    return FieldElem{bits};
  }

  static constexpr FieldElem zero() noexcept { return FieldElem{0}; }
  static constexpr FieldElem one() noexcept { return FieldElem{1}; }

  static constexpr FieldElem add(FieldElem x, FieldElem y) noexcept { return FieldElem{x.bits ^ y.bits}; }

  FieldElem mul(FieldElem x, FieldElem y) const noexcept {
    std::uint32_t a = x.bits;
    std::uint32_t b = y.bits;
    std::uint32_t acc = 0;
    const std::uint32_t top = q_ >> 1;
    while (b != 0) {
      if (b & 1u) acc ^= a;
      b >>= 1;
      a = (a & top) ? ((a << 1) ^ modulus_) : (a << 1);
    }
    return FieldElem{acc};
  }

  FieldElem square(FieldElem x) const noexcept { return mul(x, x); }

  // pow(0, 0) is rejected: no caller ever needs it and it usually signals a bug.
  FieldElem pow(FieldElem x, std::uint64_t e) const {
    if (x.is_zero() && e == 0) throw precondition_error("pow(0, 0) is undefined");
    FieldElem result = one();
    FieldElem base = x;
    while (e != 0) {
      if (e & 1u) result = mul(result, base);
      base = mul(base, base);
      e >>= 1;
    }
    return result;
  }

  FieldElem inv(FieldElem x) const {
    if (x.is_zero()) throw division_by_zero("inverse of zero");
    return pow(x, q_ - 2);
  }

  FieldElem div(FieldElem x, FieldElem y) const { return mul(x, inv(y)); }

  // Inverse Frobenius: the unique s with s^2 = x, namely x^(2^(r-1)).
  FieldElem sqrt(FieldElem x) const noexcept {
    for (int i = 1; i < r_; ++i) x = mul(x, x);
    return x;
  }

  // Multiplicative order of a nonzero element.
  std::uint64_t multiplicative_order(FieldElem x) const {
    if (x.is_zero()) throw precondition_error("zero has no multiplicative order");
    std::uint64_t n = q_ - 1;
    std::uint64_t ord = n;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
      if (n % p != 0) continue;
      while (n % p == 0) n /= p;
      while (ord % p == 0 && pow(x, ord / p) == one()) ord /= p;
    }
    if (n > 1 && ord % n == 0 && pow(x, ord / n) == one()) ord /= n;
    return ord;
  }

  // Smallest-bits generator of the multiplicative group.
  FieldElem primitive_element() const {
    for (std::uint32_t b = 1; b < q_; ++b)
      if (multiplicative_order(FieldElem{b}) == q_ - 1) return FieldElem{b};
    throw error("no primitive element");  // unreachable
  }

  friend bool operator==(const Field& a, const Field& b) noexcept {
    return a.r_ == b.r_ && a.modulus_ == b.modulus_;
  }

 private:
  Field(int r, std::uint32_t modulus) : r_(r), q_(std::uint32_t{1} << r), modulus_(modulus) {}

  int r_;
  std::uint32_t q_;
  std::uint32_t modulus_;
};

// Multiplication by a fixed element as three byte-indexed lookup tables.
// c -> k*c is GF(2)-linear, so the tables cover every c < 2^24.
class MulByConst {
 public:
  MulByConst(const Field& f, FieldElem k) {
    for (std::uint32_t i = 0; i < 256; ++i)
      for (int byte = 0; byte < 3; ++byte) {
        const std::uint32_t c = i << (8 * byte);
        tables_[byte][i] = (c < f.order()) ? f.mul(k, FieldElem{c}).bits : 0;
      }
  }

  std::uint32_t operator()(std::uint32_t c) const noexcept {
    return tables_[0][c & 0xffu] ^ tables_[1][(c >> 8) & 0xffu] ^ tables_[2][c >> 16];
  }

 private:
  std::array<std::array<std::uint32_t, 256>, 3> tables_{};
};

}  // namespace planarlab

#endif  // PLANARLAB_FIELD_HPP
