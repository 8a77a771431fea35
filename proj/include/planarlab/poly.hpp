#ifndef PLANARLAB_POLY_HPP
#define PLANARLAB_POLY_HPP

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "field.hpp"

namespace planarlab {

// Polynomial degree; std::nullopt is the degree of the zero polynomial and
// compares below every finite degree.
using Degree = std::optional<std::size_t>;

// x^e with the polynomial convention x^0 = 1 (including x = 0).
inline FieldElem monomial_power(const Field& f, FieldElem x, std::uint64_t e) {
  return e == 0 ? Field::one() : f.pow(x, e);
}

//
// Dense univariate polynomials. coeffs()[i] is the coefficient of X^i and
// the sequence never ends in a zero.
//
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<FieldElem> coeffs) : c_(std::move(coeffs)) { trim(); }
  UniPoly(std::initializer_list<std::uint32_t> bits) {
    c_.reserve(bits.size());
    for (auto b : bits) c_.emplace_back(b);
    trim();
  }

  static UniPoly constant(FieldElem c) { return UniPoly(std::vector<FieldElem>{c}); }
  static UniPoly monomial(FieldElem c, std::size_t k) {
    std::vector<FieldElem> v(k + 1);
    v[k] = c;
    return UniPoly(std::move(v));
  }
  static UniPoly x() { return monomial(Field::one(), 1); }

  bool is_zero() const noexcept { return c_.empty(); }
  Degree degree() const noexcept {
    if (c_.empty()) return std::nullopt;
    return c_.size() - 1;
  }
  // Zero or a nonzero constant.
  bool is_constant() const noexcept { return c_.size() <= 1; }

  FieldElem coeff(std::size_t i) const noexcept { return i < c_.size() ? c_[i] : FieldElem{}; }
  FieldElem leading() const noexcept { return c_.empty() ? FieldElem{} : c_.back(); }
  const std::vector<FieldElem>& coeffs() const noexcept { return c_; }

  friend bool operator==(const UniPoly&, const UniPoly&) = default;

 private:
  void trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
  }

  std::vector<FieldElem> c_;
};

inline UniPoly add(const UniPoly& a, const UniPoly& b) {
  std::vector<FieldElem> out(std::max(a.coeffs().size(), b.coeffs().size()));
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = Field::add(a.coeff(i), b.coeff(i));
  return UniPoly(std::move(out));
}

inline UniPoly scale(const Field& f, const UniPoly& p, FieldElem c) {
  std::vector<FieldElem> out(p.coeffs());
  for (auto& x : out) x = f.mul(x, c);
  return UniPoly(std::move(out));
}

inline UniPoly mul(const Field& f, const UniPoly& a, const UniPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  const auto& ca = a.coeffs();
  const auto& cb = b.coeffs();
  std::vector<FieldElem> out(ca.size() + cb.size() - 1);
  for (std::size_t i = 0; i < ca.size(); ++i) {
    if (ca[i].is_zero()) continue;
    for (std::size_t j = 0; j < cb.size(); ++j) out[i + j] = Field::add(out[i + j], f.mul(ca[i], cb[j]));
  }
  return UniPoly(std::move(out));
}

inline UniPoly pow(const Field& f, const UniPoly& p, std::uint64_t e) {
  UniPoly result = UniPoly::constant(Field::one());
  UniPoly base = p;
  while (e != 0) {
    if (e & 1u) result = mul(f, result, base);
    e >>= 1;
    if (e != 0) base = mul(f, base, base);
  }
  return result;
}

inline FieldElem eval(const Field& f, const UniPoly& p, FieldElem x) {
  FieldElem acc{};
  const auto& c = p.coeffs();
  for (std::size_t i = c.size(); i-- > 0;) acc = Field::add(f.mul(acc, x), c[i]);
  return acc;
}

struct DivRem {
  UniPoly quotient;
  UniPoly remainder;
};

inline DivRem divrem(const Field& f, const UniPoly& num, const UniPoly& den) {
  if (den.is_zero()) throw division_by_zero("polynomial division by zero");
  const std::size_t dd = *den.degree();
  if (num.degree() < den.degree()) return {UniPoly{}, num};
  const FieldElem lc_inv = f.inv(den.leading());
  std::vector<FieldElem> rem(num.coeffs());
  std::vector<FieldElem> quo(rem.size() - dd);
  const auto& dc = den.coeffs();
  for (std::size_t k = rem.size(); k-- > dd;) {
    if (rem[k].is_zero()) continue;
    const FieldElem c = f.mul(rem[k], lc_inv);
    quo[k - dd] = c;
    for (std::size_t j = 0; j <= dd; ++j) rem[k - dd + j] = Field::add(rem[k - dd + j], f.mul(c, dc[j]));
  }
  rem.resize(dd);
  return {UniPoly(std::move(quo)), UniPoly(std::move(rem))};
}

inline UniPoly mod(const Field& f, const UniPoly& a, const UniPoly& m) { return divrem(f, a, m).remainder; }

// Quotient of a division that must be exact.
inline UniPoly divide_exact(const Field& f, const UniPoly& num, const UniPoly& den) {
  auto [q, r] = divrem(f, num, den);
  if (!r.is_zero()) throw precondition_error("inexact polynomial division");
  return q;
}

inline UniPoly monic(const Field& f, const UniPoly& p) {
  if (p.is_zero()) return p;
  return scale(f, p, f.inv(p.leading()));
}

inline UniPoly gcd(const Field& f, UniPoly a, UniPoly b) {
  if (a.is_zero() && b.is_zero()) throw precondition_error("gcd(0, 0) is undefined");
  while (!b.is_zero()) {
    UniPoly r = mod(f, a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return monic(f, a);
}

// Formal derivative; in characteristic 2 the coefficient i*c_i is c_i for odd
// i and 0 for even i.
inline UniPoly derivative(const UniPoly& p) {
  const auto& c = p.coeffs();
  if (c.size() <= 1) return {};
  std::vector<FieldElem> out(c.size() - 1);
  for (std::size_t i = 1; i < c.size(); i += 2) out[i - 1] = c[i];
  return UniPoly(std::move(out));
}

// base^e mod m by square-and-multiply.
inline UniPoly powmod(const Field& f, const UniPoly& base, std::uint64_t e, const UniPoly& m) {
  UniPoly result = mod(f, UniPoly::constant(Field::one()), m);
  UniPoly b = mod(f, base, m);
  while (e != 0) {
    if (e & 1u) result = mod(f, mul(f, result, b), m);
    e >>= 1;
    if (e != 0) b = mod(f, mul(f, b, b), m);
  }
  return result;
}

// Square root of a polynomial whose derivative vanishes (every exponent even):
// take the Frobenius inverse of each coefficient and halve the exponents.
inline UniPoly sqrt_of_square(const Field& f, const UniPoly& p) {
  const auto& c = p.coeffs();
  std::vector<FieldElem> out((c.size() + 1) / 2);
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i].is_zero()) continue;
    if (i % 2 != 0) throw precondition_error("polynomial is not a square");
    out[i / 2] = f.sqrt(c[i]);
  }
  return UniPoly(std::move(out));
}

struct SquarefreePart {
  UniPoly factor;
  unsigned multiplicity;
  friend bool operator==(const SquarefreePart&, const SquarefreePart&) = default;
};

// p = unit * prod(factor^multiplicity); factors monic, squarefree, pairwise
// coprime and non-constant; parts sorted by multiplicity, each multiplicity
// occurring at most once.
struct SquarefreeDecomposition {
  std::vector<SquarefreePart> parts;
  FieldElem unit;
};

namespace detail {

inline void squarefree_monic(const Field& f, const UniPoly& p, unsigned scale_by,
                             std::vector<SquarefreePart>& out) {
  if (p.is_constant()) return;
  const UniPoly dp = derivative(p);
  if (dp.is_zero()) {
    squarefree_monic(f, sqrt_of_square(f, p), scale_by * 2, out);
    return;
  }
  UniPoly c = gcd(f, p, dp);
  UniPoly w = divide_exact(f, p, c);
  unsigned i = 1;
  while (!w.is_constant()) {
    UniPoly y = gcd(f, w, c);
    UniPoly fac = divide_exact(f, w, y);
    if (!fac.is_constant()) out.push_back({monic(f, fac), i * scale_by});
    w = std::move(y);
    c = divide_exact(f, c, w);
    ++i;
  }
  // What is left has only multiplicities divisible by 2.
  if (!c.is_constant()) squarefree_monic(f, sqrt_of_square(f, c), scale_by * 2, out);
}

}  // namespace detail

inline SquarefreeDecomposition squarefree_decomposition(const Field& f, const UniPoly& p) {
  if (p.is_zero()) throw precondition_error("squarefree decomposition of the zero polynomial");
  SquarefreeDecomposition result;
  result.unit = p.leading();
  detail::squarefree_monic(f, monic(f, p), 1, result.parts);
  std::sort(result.parts.begin(), result.parts.end(),
            [](const SquarefreePart& a, const SquarefreePart& b) { return a.multiplicity < b.multiplicity; });
  return result;
}

inline unsigned root_multiplicity(const Field& f, const UniPoly& p, FieldElem alpha) {
  if (p.is_zero()) throw precondition_error("root multiplicity in the zero polynomial");
  const UniPoly lin({alpha, Field::one()});  // X - alpha
  unsigned k = 0;
  UniPoly cur = p;
  while (true) {
    auto [q, r] = divrem(f, cur, lin);
    if (!r.is_zero()) return k;
    cur = std::move(q);
    ++k;
  }
}

// Number of distinct roots in GF(q): deg gcd(p, X^q - X), with X^q reduced
// modulo p by r successive squarings.
inline std::size_t count_roots_in_field(const Field& f, const UniPoly& p) {
  if (p.is_zero()) throw precondition_error("root count of the zero polynomial");
  if (p.is_constant()) return 0;
  UniPoly xq = mod(f, UniPoly::x(), p);
  for (int i = 0; i < f.degree(); ++i) xq = mod(f, mul(f, xq, xq), p);
  const UniPoly h = add(xq, mod(f, UniPoly::x(), p));
  return *gcd(f, p, h).degree();
}

//
// Sparse bivariate polynomials.
//
struct Exponent2 {
  std::uint32_t x = 0;
  std::uint32_t y = 0;
  std::uint32_t total() const noexcept { return x + y; }
  friend auto operator<=>(const Exponent2&, const Exponent2&) = default;
};

// Graded lex with X > Y: higher total degree first, then higher X exponent.
inline bool graded_lex_less(Exponent2 a, Exponent2 b) noexcept {
  if (a.total() != b.total()) return a.total() < b.total();
  return a.x < b.x;
}

class BiPoly {
 public:
  using TermMap = std::map<Exponent2, FieldElem>;

  BiPoly() = default;

  // Adds c to the coefficient of X^i Y^j.
  void add_term(std::uint32_t i, std::uint32_t j, FieldElem c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(Exponent2{i, j}, c);
    if (!inserted) {
      it->second = Field::add(it->second, c);
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  FieldElem coeff(std::uint32_t i, std::uint32_t j) const {
    auto it = terms_.find(Exponent2{i, j});
    return it == terms_.end() ? FieldElem{} : it->second;
  }

  const TermMap& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t term_count() const noexcept { return terms_.size(); }

  Degree total_degree() const noexcept {
    Degree d;
    for (const auto& [e, c] : terms_) d = std::max<Degree>(d, e.total());
    return d;
  }

  // Leading exponent under graded lex; p must be nonzero.
  Exponent2 leading_exponent() const {
    if (terms_.empty()) throw precondition_error("zero polynomial has no leading term");
    Exponent2 best = terms_.begin()->first;
    for (const auto& [e, c] : terms_)
      if (graded_lex_less(best, e)) best = e;
    return best;
  }

  static BiPoly from_x(const UniPoly& p) {
    BiPoly out;
    for (std::size_t i = 0; i < p.coeffs().size(); ++i) out.add_term(static_cast<std::uint32_t>(i), 0, p.coeffs()[i]);
    return out;
  }
  static BiPoly from_y(const UniPoly& p) {
    BiPoly out;
    for (std::size_t j = 0; j < p.coeffs().size(); ++j) out.add_term(0, static_cast<std::uint32_t>(j), p.coeffs()[j]);
    return out;
  }

  friend bool operator==(const BiPoly&, const BiPoly&) = default;

 private:
  TermMap terms_;
};

inline BiPoly add(const BiPoly& a, const BiPoly& b) {
  BiPoly out = a;
  for (const auto& [e, c] : b.terms()) out.add_term(e.x, e.y, c);
  return out;
}

inline BiPoly scale(const Field& f, const BiPoly& p, FieldElem k) {
  BiPoly out;
  for (const auto& [e, c] : p.terms()) out.add_term(e.x, e.y, f.mul(c, k));
  return out;
}

inline BiPoly mul(const Field& f, const BiPoly& a, const BiPoly& b) {
  BiPoly out;
  for (const auto& [ea, ca] : a.terms())
    for (const auto& [eb, cb] : b.terms()) out.add_term(ea.x + eb.x, ea.y + eb.y, f.mul(ca, cb));
  return out;
}

inline BiPoly swap_xy(const BiPoly& p) {
  BiPoly out;
  for (const auto& [e, c] : p.terms()) out.add_term(e.y, e.x, c);
  return out;
}

inline FieldElem eval(const Field& f, const BiPoly& p, FieldElem x, FieldElem y) {
  FieldElem acc{};
  for (const auto& [e, c] : p.terms())
    acc = Field::add(acc, f.mul(c, f.mul(monomial_power(f, x, e.x), monomial_power(f, y, e.y))));
  return acc;
}

// p(X, y) as a univariate polynomial in X.
inline UniPoly restrict_y(const Field& f, const BiPoly& p, FieldElem y) {
  std::vector<FieldElem> out;
  for (const auto& [e, c] : p.terms()) {
    if (out.size() <= e.x) out.resize(e.x + 1);
    out[e.x] = Field::add(out[e.x], f.mul(c, monomial_power(f, y, e.y)));
  }
  return UniPoly(std::move(out));
}

// p(x, Y) as a univariate polynomial in Y.
inline UniPoly restrict_x(const Field& f, const BiPoly& p, FieldElem x) { return restrict_y(f, swap_xy(p), x); }

struct BiDivRem {
  BiPoly quotient;
  BiPoly remainder;
};

// Multivariate division by a single divisor under graded lex. The remainder
// is zero exactly when den divides num.
inline BiDivRem divrem(const Field& f, const BiPoly& num, const BiPoly& den) {
  if (den.is_zero()) throw division_by_zero("bivariate division by zero");
  const Exponent2 lead = den.leading_exponent();
  const FieldElem lc_inv = f.inv(den.coeff(lead.x, lead.y));
  BiDivRem out;
  BiPoly work = num;
  while (!work.is_zero()) {
    const Exponent2 e = work.leading_exponent();
    const FieldElem c = work.coeff(e.x, e.y);
    if (e.x >= lead.x && e.y >= lead.y) {
      const FieldElem k = f.mul(c, lc_inv);
      const std::uint32_t sx = e.x - lead.x;
      const std::uint32_t sy = e.y - lead.y;
      out.quotient.add_term(sx, sy, k);
      for (const auto& [de, dc] : den.terms()) work.add_term(de.x + sx, de.y + sy, f.mul(k, dc));
    } else {
      out.remainder.add_term(e.x, e.y, c);
      work.add_term(e.x, e.y, c);
    }
  }
  return out;
}

//
// Homogeneous forms in three variables, for projective point counts.
//
using Exponent3 = std::array<std::uint32_t, 3>;

class TernaryForm {
 public:
  using TermMap = std::map<Exponent3, FieldElem>;

  void add_term(Exponent3 e, FieldElem c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second = Field::add(it->second, c);
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  const TermMap& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  bool is_homogeneous() const noexcept {
    if (terms_.empty()) return true;
    const auto d = degree_of(terms_.begin()->first);
    return std::all_of(terms_.begin(), terms_.end(), [d](const auto& kv) { return degree_of(kv.first) == d; });
  }

  Degree degree() const noexcept {
    Degree d;
    for (const auto& [e, c] : terms_) d = std::max<Degree>(d, degree_of(e));
    return d;
  }

  friend bool operator==(const TernaryForm&, const TernaryForm&) = default;

 private:
  static std::size_t degree_of(const Exponent3& e) noexcept { return std::size_t{e[0]} + e[1] + e[2]; }

  TermMap terms_;
};

inline FieldElem eval(const Field& f, const TernaryForm& p, FieldElem x, FieldElem y, FieldElem z) {
  FieldElem acc{};
  for (const auto& [e, c] : p.terms()) {
    FieldElem m = f.mul(monomial_power(f, x, e[0]), monomial_power(f, y, e[1]));
    acc = Field::add(acc, f.mul(c, f.mul(m, monomial_power(f, z, e[2]))));
  }
  return acc;
}

}  // namespace planarlab

#endif  // PLANARLAB_POLY_HPP
