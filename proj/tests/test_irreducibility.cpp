#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "oracles.hpp"
#include "planarlab/irreducibility.hpp"

using namespace planarlab;

namespace {

BiPoly bi(std::initializer_list<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>> terms) {
  BiPoly p;
  for (auto [i, j, c] : terms) p.add_term(i, j, FieldElem{c});
  return p;
}

std::set<std::uint64_t> support(const UniPoly& p) {
  std::set<std::uint64_t> s;
  for (std::size_t i = 0; i < p.coeffs().size(); ++i)
    if (!p.coeffs()[i].is_zero()) s.insert(i);
  return s;
}

}  // namespace

TEST_CASE("build_g examples", "[irreducibility]") {
  const Field gf2 = Field::make(1);
  CHECK(build_g(gf2, 3) == UniPoly{1, 1});
  CHECK(build_g(gf2, 5) == UniPoly{1, 0, 0, 1});
  CHECK(build_g(gf2, 5) == mul(gf2, UniPoly{1, 1}, UniPoly{1, 1, 1}));
  CHECK(build_g(gf2, 6) == UniPoly{0, 1, 0, 1});
  CHECK(build_g(gf2, 6) == mul(gf2, UniPoly::x(), pow(gf2, UniPoly{1, 1}, 2)));
  CHECK_THROWS_AS(build_g(gf2, 4), degenerate_input);
  CHECK_THROWS_AS(build_g(gf2, 1), degenerate_input);
  CHECK_THROWS_AS(build_g(gf2, 4), precondition_error);
}

TEST_CASE("build_g matches binomial parity and re-expands", "[irreducibility][property]") {
  const Field f = Field::make(3);
  for (std::uint64_t t = 3; t <= 64; ++t) {
    if (is_power_of_two(t)) continue;
    const UniPoly g = build_g(f, t);
    INFO("t = " << t);
    REQUIRE(support(g) == oracle::g_support(t));
    REQUIRE(!g.is_zero());
    REQUIRE(*g.degree() <= t - 2);
    const UniPoly back = add(add(mul(f, UniPoly::x(), g), UniPoly{1}), UniPoly::monomial(Field::one(), t));
    REQUIRE(back == pow(f, UniPoly{1, 1}, t));
  }
}

TEST_CASE("build_H examples", "[irreducibility]") {
  const Field gf2 = Field::make(1);
  CHECK(build_H(gf2, Field::one(), 3) == bi({{1, 0, 1}, {0, 0, 1}, {0, 1, 1}}));
  CHECK(build_H(gf2, Field::one(), 6) == bi({{3, 0, 1}, {1, 0, 1}, {0, 4, 1}}));
  CHECK(build_H(gf2, Field::one(), 6).total_degree() == Degree{4});
  CHECK_THROWS_AS(build_H(gf2, Field::zero(), 3), precondition_error);
  CHECK_THROWS_AS(build_H(gf2, Field::one(), 8), degenerate_input);

  const Field f = Field::make(4);
  for (std::uint64_t t : {3u, 5u, 6u, 7u, 9u, 10u, 11u, 12u})
    for (std::uint32_t a = 1; a < 16; ++a) {
      const BiPoly h = build_H(f, FieldElem{a}, t);
      REQUIRE(h.total_degree() == Degree{t - 2});
      const UniPoly h0 = restrict_y(f, h, Field::zero());
      REQUIRE(h0 == scale(f, build_g(f, t), FieldElem{a}));
      REQUIRE(*h0.degree() <= t - 2);
    }
}

TEST_CASE("build_Hbar", "[irreducibility]") {
  const Field gf2 = Field::make(1);
  CHECK(build_Hbar(gf2, 3) == bi({{1, 0, 1}, {0, 1, 1}, {0, 0, 1}}));
  CHECK_THROWS_AS(build_Hbar(gf2, 2), range_error);
  const Field f = Field::make(3);
  BiPoly x_plus_y = bi({{1, 0, 1}, {0, 1, 1}});
  for (std::uint64_t t = 3; t <= 12; ++t) {
    const BiPoly hb = build_Hbar(f, t);
    REQUIRE(swap_xy(hb) == hb);
    const UniPoly sx = add(pow(f, UniPoly{1, 1}, t), UniPoly::monomial(Field::one(), t));
    REQUIRE(mul(f, x_plus_y, hb) == add(BiPoly::from_x(sx), BiPoly::from_y(sx)));
  }
  // Powers of 2 are allowed here and give 0: (X+1)^4 + X^4 = 1.
  CHECK(build_Hbar(f, 4).is_zero());
}

TEST_CASE("multiplicity profile examples", "[irreducibility]") {
  const Field gf2 = Field::make(1);
  const auto p3 = multiplicity_profile(gf2, 3);
  CHECK(p3.m == 0);
  CHECK(p3.o == 3);
  CHECK(p3.mult_at_0 == 0);
  CHECK(p3.mult_at_1 == 1);
  CHECK(p3.identity_holds);
  const auto p6 = multiplicity_profile(gf2, 6);
  CHECK(p6.m == 1);
  CHECK(p6.mult_at_0 == 1);
  CHECK(p6.mult_at_1 == 2);
  const auto p12 = multiplicity_profile(gf2, 12);
  CHECK(p12.m == 2);
  CHECK(p12.o == 3);
  CHECK(p12.mult_at_0 == 3);
  CHECK(p12.mult_at_1 == 4);
  // Cross-check t = 12 by repeated division.
  UniPoly g = build_g(gf2, 12);
  unsigned k = 0;
  while (true) {
    auto [q, r] = divrem(gf2, g, UniPoly{1, 1});
    if (!r.is_zero()) break;
    g = q;
    ++k;
  }
  CHECK(k == 4);
  CHECK_THROWS_AS(multiplicity_profile(gf2, 16), degenerate_input);
}

TEST_CASE("multiplicity identity for t up to 256", "[irreducibility]") {
  const Field gf2 = Field::make(1);
  for (std::uint64_t t = 3; t <= 256; ++t) {
    if (is_power_of_two(t)) continue;
    const auto p = multiplicity_profile(gf2, t);
    INFO("t = " << t);
    REQUIRE(p.identity_holds);
    REQUIRE((std::uint64_t{1} << p.m) * p.o == t);
  }
}

TEST_CASE("Capelli criterion examples", "[irreducibility]") {
  const Field gf2 = Field::make(1);
  const UniPoly x = UniPoly::x();
  CHECK(capelli_abs_irreducible(gf2, 2, x).abs_irreducible);
  const auto sq = capelli_abs_irreducible(gf2, 2, pow(gf2, x, 2));
  CHECK(!sq.abs_irreducible);
  CHECK(sq.witness_prime == 2u);
  const auto cube = capelli_abs_irreducible(gf2, 3, pow(gf2, x, 3));
  CHECK(!cube.abs_irreducible);
  CHECK(cube.witness_prime == 3u);
  CHECK(capelli_abs_irreducible(gf2, 3, pow(gf2, x, 2)).abs_irreducible);
  CHECK(capelli_abs_irreducible(gf2, 6, pow(gf2, x, 4)).witness_prime == 2u);
  // (X^2+X)^3 = X^3 (X+1)^3: multiplicities {3}.
  CHECK(capelli_abs_irreducible(gf2, 9, pow(gf2, UniPoly{0, 1, 1}, 3)).witness_prime == 3u);
  // X (X+1)^2: gcd of multiplicities is 1.
  CHECK(capelli_abs_irreducible(gf2, 4, build_g(gf2, 6)).abs_irreducible);
  CHECK_THROWS_AS(capelli_abs_irreducible(gf2, 0, x), precondition_error);
  CHECK_THROWS_AS(capelli_abs_irreducible(gf2, 2, UniPoly{1}), precondition_error);
}

TEST_CASE("H is absolutely irreducible by Capelli for every a", "[irreducibility][property]") {
  const Field f = Field::make(4);
  for (std::uint64_t t = 3; t <= 64; ++t) {
    if (is_power_of_two(t)) continue;
    for (std::uint32_t a = 1; a < f.order(); ++a) {
      const auto v = capelli_abs_irreducible(f, t - 2, scale(f, build_g(f, t), FieldElem{a}));
      REQUIRE(v.abs_irreducible);
      REQUIRE(!v.witness_prime);
    }
  }
}

TEST_CASE("Capelli witness divides n and every multiplicity", "[irreducibility][property]") {
  std::mt19937_64 rng(19);
  const Field f = Field::make(3);
  for (int i = 0; i < 500; ++i) {
    UniPoly base{1};
    for (int k = 0; k < 3; ++k) {
      const UniPoly lin({FieldElem{static_cast<std::uint32_t>(rng() % 8)}, Field::one()});
      base = mul(f, base, pow(f, lin, 1 + rng() % 6));
    }
    const std::uint64_t n = 1 + rng() % 12;
    const auto v = capelli_abs_irreducible(f, n, base);
    if (v.witness_prime) {
      const std::uint64_t l = *v.witness_prime;
      REQUIRE(n % l == 0);
      for (const auto& part : squarefree_decomposition(f, base).parts) REQUIRE(part.multiplicity % l == 0);
    } else {
      REQUIRE(std::gcd(n, v.multiplicity_gcd) == 1);
    }
  }
}

TEST_CASE("field embedding is a ring homomorphism", "[irreducibility]") {
  for (auto [r, e] : {std::pair{1, 3}, {2, 2}, {2, 3}, {3, 2}}) {
    const Field small = Field::make(r);
    const FieldEmbedding emb(small, e);
    CHECK(emb.big().degree() == r * e);
    CHECK(emb(Field::one()) == Field::one());
    for (std::uint32_t a = 0; a < small.order(); ++a)
      for (std::uint32_t b = 0; b < small.order(); ++b) {
        REQUIRE(emb(Field::add(FieldElem{a}, FieldElem{b})) == Field::add(emb(FieldElem{a}), emb(FieldElem{b})));
        REQUIRE(emb(small.mul(FieldElem{a}, FieldElem{b})) == emb.big().mul(emb(FieldElem{a}), emb(FieldElem{b})));
      }
  }
}

TEST_CASE("brute-force factor search examples", "[irreducibility][bruteforce]") {
  const Field gf2 = Field::make(1);
  CHECK(bruteforce_bivariate_irreducible(gf2, bi({{1, 0, 1}, {0, 1, 1}, {0, 0, 1}}), 1));
  const auto sq = bruteforce_factor_search(gf2, bi({{2, 0, 1}, {0, 2, 1}}), 1);
  CHECK(!sq.irreducible);
  CHECK(sq.factor == bi({{1, 0, 1}, {0, 1, 1}}));
  CHECK(bruteforce_bivariate_irreducible(gf2, bi({{0, 2, 1}, {1, 0, 1}}), 2));
  CHECK(!bruteforce_bivariate_irreducible(gf2, bi({{3, 0, 1}, {0, 3, 1}}), 1));
  // X^2 + XY + Y^2 is irreducible over GF(2) but splits over GF(4).
  const BiPoly q2 = bi({{2, 0, 1}, {1, 1, 1}, {0, 2, 1}});
  CHECK(bruteforce_bivariate_irreducible(gf2, q2, 1));
  CHECK(!bruteforce_bivariate_irreducible(gf2, q2, 2));
  CHECK_THROWS_AS(bruteforce_factor_search(gf2, bi({{0, 0, 1}}), 1), precondition_error);
  CHECK_THROWS_AS(bruteforce_factor_search(gf2, q2, 0), range_error);
}

TEST_CASE("H for t = 6 over extensions of GF(2)", "[irreducibility][bruteforce]") {
  const Field gf2 = Field::make(1);
  const BiPoly h = build_H(gf2, Field::one(), 6);
  for (int e = 1; e <= 4; ++e) {
    INFO("e = " << e);
    CHECK(bruteforce_bivariate_irreducible(gf2, h, e));
  }
  CHECK_THROWS_AS(bruteforce_factor_search(gf2, h, 5), capacity_error);
  CHECK_THROWS_AS(bruteforce_factor_search(Field::make(8), h, 4), capacity_error);
}

TEST_CASE("brute force finds factors of random products", "[irreducibility][bruteforce][property]") {
  std::mt19937_64 rng(29);
  const Field f = Field::make(2);
  auto random_bi = [&](unsigned deg) {
    BiPoly p;
    while (p.total_degree() != Degree{deg}) {
      p = BiPoly{};
      for (unsigned s = 0; s <= deg; ++s)
        for (unsigned i = 0; i <= s; ++i) p.add_term(i, s - i, FieldElem{static_cast<std::uint32_t>(rng() % 4)});
    }
    return p;
  };
  for (int n = 0; n < 40; ++n) {
    const BiPoly a = random_bi(1 + rng() % 2);
    const BiPoly b = random_bi(1 + rng() % 2);
    const BiPoly p = mul(f, a, b);
    const auto res = bruteforce_factor_search(f, p, 1);
    REQUIRE(!res.irreducible);
    REQUIRE(res.factor);
    const auto [q, r] = divrem(f, p, *res.factor);
    REQUIRE(r.is_zero());
    REQUIRE(!q.is_zero());
  }
}

TEST_CASE("reducible translate census", "[irreducibility][bruteforce]") {
  const Field gf2 = Field::make(1);
  const auto census = reducible_translate_census(gf2, bi({{1, 1, 1}}), {Field::zero(), Field::one()});
  REQUIRE(census.size() == 2);
  CHECK(census[0].reducible);   // XY
  CHECK(!census[1].reducible);  // XY + 1
}

TEST_CASE("Capelli and brute force agree on small H", "[irreducibility][bruteforce]") {
  for (int r : {1, 2}) {
    const Field f = Field::make(r);
    for (std::uint64_t t : {3u, 5u, 6u}) {
      const FieldElem a = f.primitive_element();
      const BiPoly h = build_H(f, a, t);
      const bool capelli = capelli_abs_irreducible(f, t - 2, scale(f, build_g(f, t), a)).abs_irreducible;
      for (int e = 1; e <= static_cast<int>(t - 2); ++e) {
        if (bruteforce_work(std::uint64_t{1} << (r * e), t - 2) > bruteforce_budget) break;
        REQUIRE(bruteforce_bivariate_irreducible(f, h, e) == capelli);
      }
    }
  }
}
