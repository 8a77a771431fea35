#ifndef PLANARLAB_WEIL_HPP
#define PLANARLAB_WEIL_HPP

// Zero counts of plane curves and the Weil-type lower bound
//   #{(x,y) in GF(q)^2 : H(x,y) = 0} >= q + 1 - (d-1)(d-2) sqrt(q) - d
// for absolutely irreducible H of total degree d. Every comparison against
// sqrt(q) is done in exact integer arithmetic.

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "field.hpp"
#include "intmath.hpp"
#include "parallel.hpp"
#include "poly.hpp"

namespace planarlab {

using i128 = __int128;

// sign(a - k*sqrt(q)) for k >= 0, q >= 0.
inline int sign_minus_sqrt(i128 a, i128 k, i128 q) {
  if (k == 0 || q == 0) return a > 0 ? 1 : (a < 0 ? -1 : 0);
  if (a <= 0) return -1;
  const i128 lhs = a * a;
  const i128 rhs = k * k * q;
  return lhs > rhs ? 1 : (lhs < rhs ? -1 : 0);
}

enum class CountStrategy { automatic, exhaustive, per_row };

struct ZeroCount {
  std::uint64_t n = 0;
  // Every zero has a zero coordinate.
  bool axis_only = true;
};

inline constexpr std::uint32_t exhaustive_count_limit = 1u << 12;

namespace detail {

inline ZeroCount count_exhaustive(const Field& f, const BiPoly& p) {
  ZeroCount out;
  const std::uint32_t q = f.order();
  for (std::uint32_t y = 0; y < q; ++y) {
    const UniPoly row = restrict_y(f, p, FieldElem{y});
    for (std::uint32_t x = 0; x < q; ++x) {
      if (!eval(f, row, FieldElem{x}).is_zero()) continue;
      ++out.n;
      if (x != 0 && y != 0) out.axis_only = false;
    }
  }
  return out;
}

inline ZeroCount count_per_row(const Field& f, const BiPoly& p, unsigned workers) {
  const std::uint32_t q = f.order();
  std::vector<std::uint64_t> rows(q);
  std::vector<std::uint8_t> off_axis(q);
  parallel_for(q, workers, [&](std::size_t y) {
    const UniPoly row = restrict_y(f, p, FieldElem{static_cast<std::uint32_t>(y)});
    if (row.is_zero()) {
      rows[y] = q;
      off_axis[y] = y != 0;
      return;
    }
    rows[y] = count_roots_in_field(f, row);
    const std::uint64_t at_zero = eval(f, row, Field::zero()).is_zero() ? 1 : 0;
    off_axis[y] = y != 0 && rows[y] > at_zero;
  });
  ZeroCount out;
  for (std::uint32_t y = 0; y < q; ++y) {
    out.n += rows[y];
    if (off_axis[y]) out.axis_only = false;
  }
  return out;
}

}  // namespace detail

inline ZeroCount count_affine_zeros(const Field& f, const BiPoly& p, CountStrategy strategy = CountStrategy::automatic,
                                    unsigned workers = 1) {
  if (p.is_zero()) throw precondition_error("zero count of the zero polynomial");
  if (strategy == CountStrategy::automatic)
    strategy = f.order() <= (1u << 8) ? CountStrategy::exhaustive : CountStrategy::per_row;
  if (strategy == CountStrategy::exhaustive) {
    if (f.order() > exhaustive_count_limit)
      throw capacity_error("exhaustive zero count limited to q <= 4096");
    return detail::count_exhaustive(f, p);
  }
  return detail::count_per_row(f, p, workers);
}

// Points of the projective plane over GF(q) on a homogeneous form, using the
// representatives (x, y, 1), (x, 1, 0), (1, 0, 0).
inline std::uint64_t count_projective_zeros(const Field& f, const TernaryForm& form) {
  if (!form.is_homogeneous()) throw precondition_error("projective count needs a homogeneous form");
  if (form.is_zero()) throw precondition_error("projective count of the zero form");
  const std::uint32_t q = f.order();
  if (q > exhaustive_count_limit) throw capacity_error("projective count limited to q <= 4096");
  std::uint64_t n = 0;
  const FieldElem one = Field::one();
  for (std::uint32_t y = 0; y < q; ++y)
    for (std::uint32_t x = 0; x < q; ++x)
      if (eval(f, form, FieldElem{x}, FieldElem{y}, one).is_zero()) ++n;
  for (std::uint32_t x = 0; x < q; ++x)
    if (eval(f, form, FieldElem{x}, one, Field::zero()).is_zero()) ++n;
  if (eval(f, form, one, Field::zero(), Field::zero()).is_zero()) ++n;
  return n;
}

// Lower bound q + 1 - d - K sqrt(q) with K = (d-1)(d-2), kept symbolic.
struct WeilBoundReport {
  std::uint64_t q = 0;
  std::uint64_t d = 0;
  std::int64_t constant_part = 0;  // q + 1 - d
  std::uint64_t sqrt_coeff = 0;    // (d-1)(d-2)
  bool sqrt_q_integral = false;
  std::optional<std::int64_t> bound;  // exact value when sqrt(q) is an integer or K = 0
  double bound_approx = 0.0;
  // Filled by weil_consistency_check.
  bool applicable = true;  // the polynomial is absolutely irreducible
  std::optional<std::uint64_t> observed;
  std::optional<bool> satisfied;

  // observed >= bound, decided exactly.
  bool admits(std::uint64_t n) const {
    const i128 a = static_cast<i128>(n) - constant_part;
    return sign_minus_sqrt(-a, sqrt_coeff, q) <= 0;  // -a <= K sqrt(q)
  }
};

inline WeilBoundReport weil_lower_bound(std::uint64_t q, std::uint64_t d) {
  if (!is_power_of_two(q) || q < 2) throw precondition_error("q must be a power of 2");
  if (d < 1) throw precondition_error("degree must be >= 1");
  WeilBoundReport rep;
  rep.q = q;
  rep.d = d;
  rep.constant_part = static_cast<std::int64_t>(q + 1) - static_cast<std::int64_t>(d);
  rep.sqrt_coeff = (d - 1) * (d - 2);
  const std::uint64_t s = isqrt(q);
  rep.sqrt_q_integral = s * s == q;
  if (rep.sqrt_q_integral || rep.sqrt_coeff == 0)
    rep.bound = rep.constant_part - static_cast<std::int64_t>(rep.sqrt_coeff * (rep.sqrt_q_integral ? s : 0));
  rep.bound_approx = static_cast<double>(rep.constant_part) -
                     static_cast<double>(rep.sqrt_coeff) * std::sqrt(static_cast<double>(q));
  return rep;
}

inline WeilBoundReport weil_consistency_check(const Field& f, const BiPoly& p, bool abs_irreducible,
                                              CountStrategy strategy = CountStrategy::automatic, unsigned workers = 1) {
  const Degree d = p.total_degree();
  if (!d || *d == 0) throw precondition_error("Weil check needs a non-constant polynomial");
  WeilBoundReport rep = weil_lower_bound(f.order(), *d);
  rep.observed = count_affine_zeros(f, p, strategy, workers).n;
  rep.applicable = abs_irreducible;
  if (abs_irreducible) rep.satisfied = rep.admits(*rep.observed);
  return rep;
}

//
// The inequality chain that rules out planar non-power-of-2 monomials once
// q >= t^4: if every zero of H sits on an axis then N <= 2(t-2), while the
// lower bound forces N > 2(t-2).
//
struct InequalityChain {
  std::uint64_t t = 0;
  std::uint64_t q = 0;
  std::int64_t upper = 0;              // 2(t-2)
  std::int64_t lower_constant = 0;     // q + 1 - (t-2)
  std::int64_t lower_sqrt_coeff = 0;   // (t-3)(t-4)
  double lower_approx = 0.0;
  std::int64_t at_t4 = 0;              // t^4 + 1 - (t-3)(t-4) t^2 - (t-2)
  std::int64_t identity_rhs = 0;       // 2(t-2) + 7t^3 - 12t^2 - 3t + 7
  std::int64_t tail = 0;               // 7t^3 - 12t^2 - 3t + 7
  bool lower_dominates_t4 = false;     // lower bound at q >= value at q = t^4
  bool identity_holds = false;
  bool tail_positive = false;
  bool contradiction = false;          // lower bound > upper

  bool ok() const noexcept { return lower_dominates_t4 && identity_holds && tail_positive && contradiction; }
};

inline InequalityChain inequality_chain_check(std::uint64_t t, std::uint64_t q) {
  if (t < 3) throw precondition_error("chain needs t >= 3");
  if (t > 40000) throw range_error("chain limited to t <= 40000");
  if (!is_power_of_two(q)) throw precondition_error("q must be a power of 2");
  const i128 T = t;
  const i128 t4 = T * T * T * T;
  if (static_cast<i128>(q) < t4) throw precondition_error("chain needs q >= t^4");
  if (q > (std::uint64_t{1} << 62)) throw range_error("q too large");

  InequalityChain c;
  c.t = t;
  c.q = q;
  const i128 K = (T - 3) * (T - 4);
  c.upper = static_cast<std::int64_t>(2 * (T - 2));
  c.lower_constant = static_cast<std::int64_t>(static_cast<i128>(q) + 1 - (T - 2));
  c.lower_sqrt_coeff = static_cast<std::int64_t>(K);
  c.lower_approx = static_cast<double>(c.lower_constant) - static_cast<double>(K) * std::sqrt(static_cast<double>(q));
  const i128 at_t4 = t4 + 1 - K * T * T - (T - 2);
  const i128 tail = 7 * T * T * T - 12 * T * T - 3 * T + 7;
  c.at_t4 = static_cast<std::int64_t>(at_t4);
  c.tail = static_cast<std::int64_t>(tail);
  c.identity_rhs = static_cast<std::int64_t>(2 * (T - 2) + tail);
  c.identity_holds = at_t4 == 2 * (T - 2) + tail;
  c.tail_positive = tail > 0;
  // lower_constant - K sqrt(q) >= at_t4  <=>  (lower_constant - at_t4) - K sqrt(q) >= 0
  c.lower_dominates_t4 = sign_minus_sqrt(static_cast<i128>(c.lower_constant) - at_t4, K, q) >= 0;
  // lower_constant - K sqrt(q) > upper
  c.contradiction = sign_minus_sqrt(static_cast<i128>(c.lower_constant) - c.upper, K, q) > 0;
  return c;
}

//
// Two singular plane cubics over GF(2) whose point counts have been used as
// counterexamples to smooth-curve point-count bounds.
//
enum class Counterexample { first, second };

// XYZ + Y^3 + Y^2 Z + Z^3
inline TernaryForm first_counterexample() {
  TernaryForm f;
  for (Exponent3 e : {Exponent3{1, 1, 1}, Exponent3{0, 3, 0}, Exponent3{0, 2, 1}, Exponent3{0, 0, 3}})
    f.add_term(e, Field::one());
  return f;
}

// XY^2 + XYZ + XZ^2 + Y^3 + Y^2 Z + Z^3
inline TernaryForm second_counterexample() {
  TernaryForm f;
  for (Exponent3 e : {Exponent3{1, 2, 0}, Exponent3{1, 1, 1}, Exponent3{1, 0, 2}, Exponent3{0, 3, 0},
                      Exponent3{0, 2, 1}, Exponent3{0, 0, 3}})
    f.add_term(e, Field::one());
  return f;
}

inline TernaryForm counterexample_form(Counterexample which) {
  return which == Counterexample::first ? first_counterexample() : second_counterexample();
}

struct CounterexampleRow {
  int r;
  std::uint64_t q;
  std::uint64_t points;
  // Smooth-curve band q + 1 +- (d-1)(d-2) sqrt(q); genus (d-1)(d-2)/2 = 1 here.
  double band_low;
  double band_high;
  bool below_band;
  bool above_band;
};

struct CounterexampleReport {
  Counterexample which;
  TernaryForm form;
  std::vector<CounterexampleRow> rows;
  std::string note;
};

// Point counts over GF(2^r) for r = 1..max_r (default GF(2) and GF(4)).
inline CounterexampleReport counterexample_report(Counterexample which, int max_r = 2) {
  if (max_r < 1 || max_r > 12) throw range_error("counterexample fields limited to r in [1, 12]");
  CounterexampleReport rep{which, counterexample_form(which), {}, {}};
  const std::uint64_t d = *rep.form.degree();
  const std::uint64_t k = (d - 1) * (d - 2);
  for (int r = 1; r <= max_r; ++r) {
    const Field f = Field::make(r);
    const std::uint64_t q = f.order();
    const std::uint64_t n = count_projective_zeros(f, rep.form);
    const double s = std::sqrt(static_cast<double>(q));
    CounterexampleRow row{r, q, n, static_cast<double>(q + 1) - k * s, static_cast<double>(q + 1) + k * s, false, false};
    const i128 diff = static_cast<i128>(n) - static_cast<i128>(q + 1);
    // n < q+1 - k sqrt(q)  <=>  -(diff) > k sqrt(q)
    row.below_band = sign_minus_sqrt(-diff, k, q) > 0;
    row.above_band = sign_minus_sqrt(diff, k, q) > 0;
    rep.rows.push_back(row);
  }
  rep.note = which == Counterexample::first
                 ? "singular cubic; point counts are compared with the smooth-curve band only, no genus is computed"
                 : "singular cubic; the count of degree-one places of its function field is not computed here";
  return rep;
}

}  // namespace planarlab

#endif  // PLANARLAB_WEIL_HPP
