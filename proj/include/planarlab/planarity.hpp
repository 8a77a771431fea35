#ifndef PLANARLAB_PLANARITY_HPP
#define PLANARLAB_PLANARITY_HPP

// Planarity in characteristic 2: f is planar on GF(q) when, for every
// nonzero b, c -> f(c+b) + f(c) + b*c is a bijection of GF(q).

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "errors.hpp"
#include "field.hpp"
#include "intmath.hpp"
#include "parallel.hpp"

namespace planarlab {

// Values of a function GF(q) -> GF(q); index = bits of the argument.
using FunctionTable = std::vector<FieldElem>;

struct MonomialSpec {
  FieldElem a;
  std::uint64_t t = 1;
  friend bool operator==(const MonomialSpec&, const MonomialSpec&) = default;
};

// Two distinct arguments with the same image, c1 < c2.
struct Collision {
  FieldElem c1;
  FieldElem c2;
  friend bool operator==(const Collision&, const Collision&) = default;
};

struct PlanarWitness {
  FieldElem b;
  Collision collision;
  friend bool operator==(const PlanarWitness&, const PlanarWitness&) = default;
};

struct PlanarReport {
  std::optional<MonomialSpec> spec;
  std::string label;
  bool planar = true;
  std::vector<PlanarWitness> failing_b;  // at most the witness cap
};

enum class BOrder { ascending, descending };

namespace detail {

class Bitset {
 public:
  explicit Bitset(std::size_t n) : words_((n + 63) / 64, 0) {}
  void clear() noexcept { std::fill(words_.begin(), words_.end(), 0); }
  // Sets bit i and reports whether it was already set.
  bool test_and_set(std::uint32_t i) noexcept {
    std::uint64_t& w = words_[i >> 6];
    const std::uint64_t m = std::uint64_t{1} << (i & 63);
    const bool was = (w & m) != 0;
    w |= m;
    return was;
  }

 private:
  std::vector<std::uint64_t> words_;
};

// Scans c = 0, 1, ..., q-1 and returns the first collision of image(c), i.e.
// the smallest c2 whose image was already taken, paired with the earlier c1.
template <typename Image>
std::optional<Collision> first_collision(std::uint32_t q, Image&& image, Bitset& seen) {
  seen.clear();
  for (std::uint32_t c = 0; c < q; ++c) {
    if (!seen.test_and_set(image(c))) continue;
    const std::uint32_t v = image(c);
    for (std::uint32_t c1 = 0; c1 < c; ++c1)
      if (image(c1) == v) return Collision{FieldElem{c1}, FieldElem{c}};
  }
  return std::nullopt;
}

inline void require_table(const Field& f, const FunctionTable& table) {
  if (table.size() != f.order())
    throw precondition_error("function table has " + std::to_string(table.size()) + " entries, field has " +
                             std::to_string(f.order()));
}

// c -> c^t for every c, with 0^t = 0 (t >= 1).
inline std::vector<std::uint32_t> power_table(const Field& f, std::uint64_t t) {
  std::vector<std::uint32_t> out(f.order());
  for (std::uint32_t c = 1; c < f.order(); ++c) out[c] = f.pow(FieldElem{c}, t).bits;
  return out;
}

}  // namespace detail

inline FunctionTable monomial_table(const Field& f, const MonomialSpec& spec) {
  if (spec.a.is_zero() || !f.contains(spec.a)) throw precondition_error("monomial coefficient must be a nonzero field element");
  if (spec.t == 0) throw precondition_error("monomial exponent must be positive");
  FunctionTable out(f.order());
  for (std::uint32_t c = 1; c < f.order(); ++c) out[c] = f.mul(spec.a, f.pow(FieldElem{c}, spec.t));
  return out;
}

struct BijectivityResult {
  bool bijective = true;
  std::optional<Collision> collision;
};

// Whether c -> f(c+b) + f(c) + b*c is a bijection; on failure, the first
// collision in ascending order of c.
inline BijectivityResult diff_map_is_bijective(const Field& f, const FunctionTable& table, FieldElem b) {
  detail::require_table(f, table);
  if (b.is_zero() || !f.contains(b)) throw precondition_error("difference map needs a nonzero b");
  const MulByConst times_b(f, b);
  detail::Bitset seen(f.order());
  auto image = [&](std::uint32_t c) { return table[c ^ b.bits].bits ^ table[c].bits ^ times_b(c); };
  auto col = detail::first_collision(f.order(), image, seen);
  return {!col.has_value(), col};
}

inline PlanarReport is_planar(const Field& f, const FunctionTable& table, std::size_t witness_cap = 1,
                              BOrder order = BOrder::ascending) {
  detail::require_table(f, table);
  if (witness_cap == 0) throw precondition_error("witness cap must be positive");
  PlanarReport report;
  detail::Bitset seen(f.order());
  for (std::uint32_t k = 1; k < f.order(); ++k) {
    const std::uint32_t b = order == BOrder::ascending ? k : f.order() - k;
    const MulByConst times_b(f, FieldElem{b});
    auto image = [&](std::uint32_t c) { return table[c ^ b].bits ^ table[c].bits ^ times_b(c); };
    if (auto col = detail::first_collision(f.order(), image, seen)) {
      report.planar = false;
      report.failing_b.push_back({FieldElem{b}, *col});
      if (report.failing_b.size() >= witness_cap) break;
    }
  }
  return report;
}

//
// Monomial scans.
//

enum class ScanMethod {
  // Uses c -> b*c to rewrite the difference map for (a, t, b) as
  // c -> (c+1)^t + c^t + s*c with s = b^(2-t)/a, and memoizes the verdict per s.
  reduced,
  // One full is_planar run per (t, a).
  direct,
};

struct ScanOptions {
  std::optional<std::uint64_t> t_limit;  // nullopt: largest t with t^4 <= q
  std::uint64_t t_min = 1;
  std::optional<std::size_t> sample_count;  // nullopt: every nonzero a
  std::vector<FieldElem> a_list;            // nonempty: exactly these a, overriding sample_count
  std::uint64_t seed = 0;
  unsigned workers = 1;
  ScanMethod method = ScanMethod::reduced;
};

struct MonomialVerdict {
  std::uint64_t t;
  FieldElem a;
  bool planar;
  std::optional<PlanarWitness> witness;  // first failing b, ascending
};

struct ScanVerdict {
  int r;
  std::uint64_t t_max;  // largest t with t^4 <= q
  std::uint64_t t_min;
  std::uint64_t t_limit;
  std::vector<FieldElem> a_values;
  std::vector<MonomialVerdict> verdicts;  // sorted by (t, a)
  // Every tested (t, a) with t^4 <= q is planar exactly when t is a power of 2.
  bool theorem_consistent;

  std::vector<MonomialVerdict> planar_pairs() const {
    std::vector<MonomialVerdict> out;
    for (const auto& v : verdicts)
      if (v.planar) out.push_back(v);
    return out;
  }
};

namespace detail {

// Verdict for one (t, a) through the per-s memo. memo[s]: 0 unknown, 1 bijective, 2 not.
inline MonomialVerdict reduced_verdict(const Field& f, std::uint64_t t, FieldElem a,
                                       const std::vector<std::uint32_t>& pow_t,
                                       const std::vector<std::uint32_t>& shift_diff,
                                       const std::vector<std::uint32_t>& b_factor,
                                       std::vector<std::atomic<std::uint8_t>>& memo) {
  const std::uint32_t q = f.order();
  const MulByConst times_ainv(f, f.inv(a));
  Bitset seen(q);
  for (std::uint32_t b = 1; b < q; ++b) {
    const std::uint32_t s = times_ainv(b_factor[b]);
    std::uint8_t state = memo[s].load(std::memory_order_relaxed);
    if (state == 0) {
      const MulByConst times_s(f, FieldElem{s});
      auto image = [&](std::uint32_t c) { return shift_diff[c] ^ times_s(c); };
      state = first_collision(q, image, seen) ? 2 : 1;
      memo[s].store(state, std::memory_order_relaxed);
    }
    if (state == 2) {
      // Recover the ascending-order collision of the original difference map.
      const MulByConst times_a(f, a);
      const MulByConst times_b(f, FieldElem{b});
      auto image = [&](std::uint32_t c) { return times_a(pow_t[c ^ b] ^ pow_t[c]) ^ times_b(c); };
      auto col = first_collision(q, image, seen);
      if (!col) throw error("reduced and direct difference maps disagree");
      return {t, a, false, PlanarWitness{FieldElem{b}, *col}};
    }
  }
  return {t, a, true, std::nullopt};
}

}  // namespace detail

inline ScanVerdict scan_monomials(const Field& f, const ScanOptions& opt) {
  const std::uint32_t q = f.order();
  ScanVerdict out;
  out.r = f.degree();
  out.t_max = fourth_root_floor(q);
  out.t_min = opt.t_min;
  out.t_limit = opt.t_limit.value_or(out.t_max);
  if (out.t_limit > q - 1)
    throw range_error("t limit " + std::to_string(out.t_limit) + " exceeds q-1 = " + std::to_string(q - 1));
  if (opt.t_min == 0) throw range_error("t must be positive");

  if (!opt.a_list.empty()) {
    for (FieldElem a : opt.a_list)
      if (a.is_zero() || !f.contains(a)) throw precondition_error("scan coefficients must be nonzero field elements");
    out.a_values = opt.a_list;
    std::sort(out.a_values.begin(), out.a_values.end());
    out.a_values.erase(std::unique(out.a_values.begin(), out.a_values.end()), out.a_values.end());
  } else {
    const auto a_bits = opt.sample_count ? sample_nonzero(q, *opt.sample_count, opt.seed) : sample_nonzero(q, q, 0);
    for (auto v : a_bits) out.a_values.push_back(FieldElem{v});
  }

  for (std::uint64_t t = opt.t_min; t <= out.t_limit; ++t) {
    const auto pow_t = detail::power_table(f, t);
    std::vector<MonomialVerdict> row(out.a_values.size());
    if (opt.method == ScanMethod::direct) {
      parallel_for(row.size(), opt.workers, [&](std::size_t i) {
        const FieldElem a = out.a_values[i];
        const MulByConst times_a(f, a);
        FunctionTable table(q);
        for (std::uint32_t c = 0; c < q; ++c) table[c] = FieldElem{times_a(pow_t[c])};
        auto rep = is_planar(f, table, 1);
        row[i] = {t, a, rep.planar, rep.planar ? std::nullopt : std::optional(rep.failing_b.front())};
      });
    } else {
      std::vector<std::uint32_t> shift_diff(q);
      for (std::uint32_t c = 0; c < q; ++c) shift_diff[c] = pow_t[c ^ 1u] ^ pow_t[c];
      // b^(2-t) for every nonzero b.
      std::vector<std::uint32_t> b_factor(q);
      for (std::uint32_t b = 1; b < q; ++b) {
        const FieldElem x{b};
        b_factor[b] = (t <= 2 ? f.pow(x, 2 - t) : f.pow(f.inv(x), t - 2)).bits;
      }
      std::vector<std::atomic<std::uint8_t>> memo(q);
      parallel_for(row.size(), opt.workers, [&](std::size_t i) {
        row[i] = detail::reduced_verdict(f, t, out.a_values[i], pow_t, shift_diff, b_factor, memo);
      });
    }
    out.verdicts.insert(out.verdicts.end(), row.begin(), row.end());
  }

  out.theorem_consistent = true;
  for (const auto& v : out.verdicts) {
    const bool applies = v.t <= out.t_max;
    if (applies && v.planar != is_power_of_two(v.t)) out.theorem_consistent = false;
  }
  return out;
}

//
// Sharper sufficient condition read off the proof: the contradiction already
// follows once 2^(r/2) > bound(t), where
//   bound(t) = P + (6t-14) / ((t-2) sqrt(D) + P),  P = t^2-7t+12,  D = t^2-10t+29.
//

struct RemarkThreshold {
  std::uint64_t t;
  int min_r;       // least r with 2^(r/2) > bound(t)
  int plain_r;     // least r with t^4 <= 2^r
  double bound;    // approximate value of bound(t), for display only
  bool bound_is_rational;  // D is a perfect square
};

inline RemarkThreshold remark_threshold(std::uint64_t t) {
  using boost::multiprecision::cpp_int;
  using boost::multiprecision::cpp_rational;
  if (t < 3) throw range_error("threshold needs t >= 3");
  if (t > (1u << 20)) throw range_error("threshold t too large");
  const cpp_int T = t;
  const cpp_int P = T * T - 7 * T + 12;
  const cpp_int D = T * T - 10 * T + 29;
  const cpp_int N = 6 * T - 14;
  const cpp_int root = boost::multiprecision::sqrt(D);
  const bool square = root * root == D;

  // bound = u + v*sqrt(D) after rationalizing the denominator (or exactly u).
  cpp_rational u;
  cpp_rational v;
  if (square) {
    u = cpp_rational(P) + cpp_rational(N, (T - 2) * root + P);
  } else {
    const cpp_int M = (T - 2) * (T - 2) * D - P * P;
    u = cpp_rational(P) - cpp_rational(N * P, M);
    v = cpp_rational(N * (T - 2), M);
  }
  // bound > 0, so 2^(r/2) > bound  <=>  2^r > bound^2 = (u^2 + v^2 D) + 2uv sqrt(D).
  const cpp_rational sq_rational = u * u + v * v * cpp_rational(D);
  const cpp_rational sq_radical = 2 * u * v;
  auto exceeds = [&](int r) {
    const cpp_rational A = cpp_rational(cpp_int(1) << r) - sq_rational;
    const cpp_rational& V = sq_radical;
    if (V == 0) return A > 0;
    if (V > 0) return A > 0 && A * A > V * V * cpp_rational(D);
    return A >= 0 || A * A < V * V * cpp_rational(D);  // V < 0
  };
  int r = 0;
  while (!exceeds(r)) ++r;

  int plain = 0;
  const unsigned __int128 t4 = static_cast<unsigned __int128>(t) * t * t * t;
  while ((static_cast<unsigned __int128>(1) << plain) < t4) ++plain;

  const long double Pd = static_cast<long double>(P.convert_to<long long>());
  const long double Dd = static_cast<long double>(D.convert_to<long long>());
  const long double Nd = static_cast<long double>(N.convert_to<long long>());
  const long double bound = Pd + Nd / ((static_cast<long double>(t) - 2) * std::sqrt(Dd) + Pd);
  return {t, r, plain, static_cast<double>(bound), square};
}

}  // namespace planarlab

#endif  // PLANARLAB_PLANARITY_HPP
