#ifndef PLANARLAB_IRREDUCIBILITY_HPP
#define PLANARLAB_IRREDUCIBILITY_HPP

// Auxiliary polynomials attached to a monomial c -> a*c^t and the decision
// of their absolute irreducibility.
//
//   g(X)       = ((X+1)^t + X^t + 1) / X
//   H(X,Y)     = a*g(X) + Y^(t-2)
//   Hbar(X,Y)  = ((X+1)^t + X^t + (Y+1)^t + Y^t) / (X+Y)
//
// H is a binomial in Y over GF(q)(X), so Capelli's criterion applies: in
// characteristic 2, Y^n + u is reducible over the algebraic closure iff u is
// an l-th power there for a prime l | n (the -4w^4 branch is empty because
// -4 = 0). For a polynomial u that is the same as l dividing every
// multiplicity of its squarefree decomposition; squarefree parts stay
// squarefree over the closure since GF(q) is perfect.
//
// The brute-force oracle below decides irreducibility over GF(q^e) by trial
// division. A factorization over the closure of a degree-d polynomial p is
// already defined over GF(q^k) for some k <= d: Frobenius permutes the
// absolutely irreducible factors, a factor whose orbit has length k is
// defined over GF(q^k), and there are at most d factors. So irreducibility
// over GF(q^e) for every e in 1..d is equivalent to absolute irreducibility.

#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "field.hpp"
#include "intmath.hpp"
#include "poly.hpp"

namespace planarlab {

namespace detail {

inline void require_non_power_of_two(std::uint64_t t) {
  if (t == 0) throw range_error("t must be positive");
  if (is_power_of_two(t))
    throw degenerate_input("t = " + std::to_string(t) + " is a power of 2, so (X+1)^t + X^t + 1 vanishes");
}

inline UniPoly x_plus_one_pow(const Field& f, std::uint64_t t) { return pow(f, UniPoly{1, 1}, t); }

}  // namespace detail

inline UniPoly build_g(const Field& f, std::uint64_t t) {
  detail::require_non_power_of_two(t);
  const UniPoly num = add(add(detail::x_plus_one_pow(f, t), UniPoly::monomial(Field::one(), t)), UniPoly{1});
  return divide_exact(f, num, UniPoly::x());
}

inline BiPoly build_H(const Field& f, FieldElem a, std::uint64_t t) {
  if (a.is_zero() || !f.contains(a)) throw precondition_error("H needs a nonzero coefficient a");
  const UniPoly g = build_g(f, t);
  BiPoly h = BiPoly::from_x(scale(f, g, a));
  h.add_term(0, static_cast<std::uint32_t>(t - 2), Field::one());
  return h;
}

inline BiPoly build_Hbar(const Field& f, std::uint64_t t) {
  if (t < 3) throw range_error("Hbar needs t >= 3");
  const UniPoly sx = add(detail::x_plus_one_pow(f, t), UniPoly::monomial(Field::one(), t));
  BiPoly num = add(BiPoly::from_x(sx), BiPoly::from_y(sx));
  BiPoly x_plus_y;
  x_plus_y.add_term(1, 0, Field::one());
  x_plus_y.add_term(0, 1, Field::one());
  auto [quo, rem] = divrem(f, num, x_plus_y);
  if (!rem.is_zero()) throw error("X+Y does not divide the Hbar numerator");
  return quo;
}

struct MultiplicityProfile {
  std::uint64_t t;
  unsigned m;        // t = 2^m * o
  std::uint64_t o;   // odd part, >= 3
  unsigned mult_at_0;
  unsigned mult_at_1;
  SquarefreeDecomposition all_parts;  // of g
  // mult_at_0 == 2^m - 1 and mult_at_1 == 2^m.
  bool identity_holds;
};

inline MultiplicityProfile multiplicity_profile(const Field& f, std::uint64_t t) {
  const UniPoly g = build_g(f, t);
  const auto [m, o] = two_adic(t);
  MultiplicityProfile p{t, m, o, root_multiplicity(f, g, Field::zero()), root_multiplicity(f, g, Field::one()),
                        squarefree_decomposition(f, g), false};
  const std::uint64_t pm = std::uint64_t{1} << m;
  p.identity_holds = p.mult_at_0 == pm - 1 && p.mult_at_1 == pm;
  return p;
}

struct CapelliVerdict {
  bool abs_irreducible;
  std::optional<std::uint64_t> witness_prime;  // present iff reducible
  std::uint64_t multiplicity_gcd;              // gcd of all squarefree multiplicities of base
};

// Absolute irreducibility of Y^n + base(X).
inline CapelliVerdict capelli_abs_irreducible(const Field& f, std::uint64_t n, const UniPoly& base) {
  if (n == 0) throw precondition_error("binomial degree n must be positive");
  if (base.is_constant()) throw precondition_error("binomial base must be non-constant");
  const auto sf = squarefree_decomposition(f, base);
  std::uint64_t mg = 0;
  for (const auto& part : sf.parts) mg = std::gcd(mg, std::uint64_t{part.multiplicity});
  const std::uint64_t common = std::gcd(mg, n);
  if (common == 1) return {true, std::nullopt, mg};
  return {false, smallest_prime_factor(common), mg};
}

//
// Brute-force oracle.
//

// Maps GF(2^r) into GF(2^(r*e)) by sending X to the smallest-bits root of
// the small field's modulus.
class FieldEmbedding {
 public:
  FieldEmbedding(const Field& small, int ext_degree)
      : small_(small), big_(Field::make(small.degree() * ext_degree)) {
    const int r = small.degree();
    std::optional<FieldElem> root;
    for (std::uint32_t b = 0; b < big_.order() && !root; ++b) {
      FieldElem acc{};
      for (int i = r; i >= 0; --i) acc = Field::add(big_.mul(acc, FieldElem{b}), FieldElem{(small.modulus() >> i) & 1u});
      if (acc.is_zero()) root = FieldElem{b};
    }
    if (!root) throw error("modulus has no root in the extension");
    FieldElem power = Field::one();
    for (int i = 0; i < r; ++i) {
      basis_.push_back(power);
      power = big_.mul(power, *root);
    }
  }

  const Field& small() const noexcept { return small_; }
  const Field& big() const noexcept { return big_; }

  FieldElem operator()(FieldElem x) const noexcept {
    FieldElem acc{};
    for (std::size_t i = 0; i < basis_.size(); ++i)
      if ((x.bits >> i) & 1u) acc = Field::add(acc, basis_[i]);
    return acc;
  }

  BiPoly lift(const BiPoly& p) const {
    BiPoly out;
    for (const auto& [e, c] : p.terms()) out.add_term(e.x, e.y, (*this)(c));
    return out;
  }

 private:
  Field small_;
  Field big_;
  std::vector<FieldElem> basis_;
};

inline constexpr double bruteforce_budget = 1e8;

// Q^C, where C counts the monomials of total degree <= d/2.
inline double bruteforce_work(std::uint64_t field_order, std::size_t total_degree) {
  const std::size_t k = total_degree / 2;
  const std::size_t coeffs = (k + 1) * (k + 2) / 2;
  return std::pow(static_cast<double>(field_order), static_cast<double>(coeffs));
}

struct FactorSearch {
  bool irreducible;
  std::optional<BiPoly> factor;  // over the extension field
  std::uint64_t candidates_tried;
};

namespace detail {

// Exact division test of a dense polynomial by a candidate whose leading
// coefficient is 1, both with total degree <= d, scanning monomials in
// descending graded lex order. Any remainder term means the candidate is not
// a divisor.
struct DenseDivider {
  const Field& field;
  std::size_t d;
  std::vector<std::uint32_t> log;
  std::vector<std::uint32_t> exp;

  DenseDivider(const Field& f, std::size_t degree) : field(f), d(degree) {
    const std::uint32_t q = f.order();
    if (q == 2) return;
    const FieldElem g = f.primitive_element();
    log.assign(q, 0);
    exp.assign(2 * q, 0);
    FieldElem x = Field::one();
    for (std::uint32_t i = 0; i < q - 1; ++i) {
      exp[i] = exp[i + q - 1] = x.bits;
      log[x.bits] = i;
      x = f.mul(x, g);
    }
  }

  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const noexcept {
    if (a == 0 || b == 0) return 0;
    if (log.empty()) return 1;
    return exp[log[a] + log[b]];
  }

  struct Term {
    std::uint32_t i, j, c;
  };

  bool divides(std::vector<std::uint32_t> rem, const std::vector<Term>& cand, Exponent2 lead) const {
    const std::size_t w = d + 1;
    for (std::size_t deg = d + 1; deg-- > 0;) {
      for (std::size_t i = deg + 1; i-- > 0;) {
        const std::size_t j = deg - i;
        const std::uint32_t c = rem[i * w + j];
        if (c == 0) continue;
        if (i < lead.x || j < lead.y) return false;
        const std::size_t si = i - lead.x;
        const std::size_t sj = j - lead.y;
        for (const auto& t : cand) rem[(si + t.i) * w + (sj + t.j)] ^= mul(c, t.c);
      }
    }
    return true;
  }
};

}  // namespace detail

// Searches GF(q^e) for a non-constant factor of total degree <= d/2,
// normalized so that its first nonzero coefficient in descending graded lex
// order is 1.
inline FactorSearch bruteforce_factor_search(const Field& f, const BiPoly& p, int extension_degree) {
  if (extension_degree < 1) throw range_error("extension degree must be >= 1");
  const Degree deg = p.total_degree();
  if (!deg || *deg == 0) throw precondition_error("irreducibility of a constant polynomial");
  const std::size_t d = *deg;
  const int big_r = f.degree() * extension_degree;
  if (big_r > Field::max_degree) throw capacity_error("extension GF(2^" + std::to_string(big_r) + ") too large");
  const double work = bruteforce_work(std::uint64_t{1} << big_r, d);
  if (work > bruteforce_budget)
    throw capacity_error("trial division over GF(2^" + std::to_string(big_r) + ") at degree " + std::to_string(d) +
                         " needs " + std::to_string(work) + " candidates");
  if (d == 1) return {true, std::nullopt, 0};

  const FieldEmbedding emb(f, extension_degree);
  const Field& big = emb.big();
  const std::uint32_t Q = big.order();
  const detail::DenseDivider divider(big, d);
  const std::size_t w = d + 1;
  std::vector<std::uint32_t> dense(w * w, 0);
  for (const auto& [e, c] : p.terms()) dense[e.x * w + e.y] = emb(c).bits;

  // Monomials of degree <= d/2 in descending graded lex order; the constant is last.
  const std::size_t k = d / 2;
  std::vector<Exponent2> monos;
  for (std::size_t s = k + 1; s-- > 0;)
    for (std::size_t i = s + 1; i-- > 0;) monos.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(s - i)});
  const std::size_t C = monos.size();

  std::uint64_t tried = 0;
  std::vector<std::uint32_t> free_vals;
  std::vector<detail::DenseDivider::Term> cand;
  for (std::size_t lead = 0; lead + 1 < C; ++lead) {
    const std::size_t nfree = C - 1 - lead;
    free_vals.assign(nfree, 0);
    while (true) {
      cand.clear();
      cand.push_back({monos[lead].x, monos[lead].y, 1});
      for (std::size_t i = 0; i < nfree; ++i)
        if (free_vals[i]) cand.push_back({monos[lead + 1 + i].x, monos[lead + 1 + i].y, free_vals[i]});
      ++tried;
      if (divider.divides(dense, cand, monos[lead])) {
        BiPoly factor;
        for (const auto& t : cand) factor.add_term(t.i, t.j, FieldElem{t.c});
        return {false, factor, tried};
      }
      std::size_t pos = 0;
      while (pos < nfree && ++free_vals[pos] == Q) free_vals[pos++] = 0;
      if (pos == nfree) break;
    }
  }
  return {true, std::nullopt, tried};
}

inline bool bruteforce_bivariate_irreducible(const Field& f, const BiPoly& p, int extension_degree) {
  return bruteforce_factor_search(f, p, extension_degree).irreducible;
}

struct TranslateVerdict {
  FieldElem shift;
  bool reducible;
};

// Reducibility of p + shift over GF(q^e) for each shift.
inline std::vector<TranslateVerdict> reducible_translate_census(const Field& f, const BiPoly& p,
                                                                const std::vector<FieldElem>& shifts,
                                                                int extension_degree = 1) {
  std::vector<TranslateVerdict> out;
  for (FieldElem s : shifts) {
    BiPoly ps = p;
    ps.add_term(0, 0, s);
    out.push_back({s, !bruteforce_bivariate_irreducible(f, ps, extension_degree)});
  }
  return out;
}

}  // namespace planarlab

#endif  // PLANARLAB_IRREDUCIBILITY_HPP
