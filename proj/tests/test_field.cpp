#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "oracles.hpp"
#include "planarlab/field.hpp"

using namespace planarlab;

TEST_CASE("make_field picks the smallest irreducible modulus", "[field]") {
  CHECK(Field::make(1).modulus() == 0b10);
  CHECK(Field::make(2).modulus() == 0b111);
  CHECK(Field::make(3).modulus() == 0b1011);
  CHECK(Field::make(3).modulus_bits() == "1011");
  for (int r = 1; r <= 24; ++r) {
    const Field f = Field::make(r);
    const auto ref = oracle::make_gf(r);
    INFO("r = " << r);
    CHECK(f.modulus() == ref.modulus);
    CHECK(f.order() == (1u << r));
    CHECK(oracle::irreducible_by_gcd(f.modulus()));
  }
  // Exhaustive scan over the 128 octic candidates with constant term 1.
  std::uint32_t first = 0;
  for (std::uint32_t m = 0x101; m < 0x200 && !first; m += 2)
    if (oracle::irreducible_by_gcd(m)) first = m;
  CHECK(first == 0x11b);
  CHECK(Field::make(8).modulus() == first);
}

TEST_CASE("make_field is deterministic and range checked", "[field]") {
  CHECK(Field::make(12) == Field::make(12));
  CHECK(Field::make(12).modulus_bits() == Field::make(12).modulus_bits());
  CHECK_THROWS_AS(Field::make(0), range_error);
  CHECK_THROWS_AS(Field::make(25), range_error);
}

TEST_CASE("addition is XOR", "[field]") {
  const FieldElem x{0b011}, y{0b101};
  CHECK(Field::add(x, y) == FieldElem{0b110});
  CHECK(Field::add(x, Field::zero()) == x);
  CHECK(Field::add(x, x) == Field::zero());
}

TEST_CASE("multiplication in GF(8)", "[field]") {
  const Field f = Field::make(3);
  CHECK(f.mul(FieldElem{0b010}, FieldElem{0b100}) == FieldElem{0b011});
  for (std::uint32_t x = 0; x < 8; ++x) {
    CHECK(f.mul(FieldElem{x}, Field::one()) == FieldElem{x});
    CHECK(f.mul(FieldElem{x}, Field::zero()) == Field::zero());
  }
}

TEST_CASE("multiplication agrees with the carryless-product oracle", "[field]") {
  std::mt19937_64 rng(7);
  for (int r : {1, 2, 5, 8, 13, 16, 24}) {
    const Field f = Field::make(r);
    const auto ref = oracle::make_gf(r);
    for (int i = 0; i < 20000; ++i) {
      const std::uint32_t a = rng() % f.order(), b = rng() % f.order();
      REQUIRE(f.mul(FieldElem{a}, FieldElem{b}).bits == ref.mul(a, b));
    }
  }
}

TEST_CASE("inverse", "[field]") {
  CHECK(Field::make(4).inv(Field::one()) == Field::one());
  const Field gf4 = Field::make(2);
  const FieldElem w{0b10};
  CHECK(gf4.inv(w) == gf4.mul(w, w));
  const Field gf8 = Field::make(3);
  const auto ref8 = oracle::make_gf(3);
  CHECK(ref8.inv(0b010) == 0b101);
  CHECK(gf8.inv(FieldElem{0b010}) == FieldElem{0b101});
  CHECK(gf8.pow(FieldElem{0b010}, 6) == FieldElem{0b101});
  CHECK_THROWS_AS(gf8.inv(Field::zero()), division_by_zero);
  for (int r : {1, 6, 11}) {
    const Field f = Field::make(r);
    const auto ref = oracle::make_gf(r);
    for (std::uint32_t x = 1; x < f.order(); ++x) {
      REQUIRE(f.mul(FieldElem{x}, f.inv(FieldElem{x})) == Field::one());
      REQUIRE(f.inv(FieldElem{x}).bits == ref.inv(x));
    }
  }
}

TEST_CASE("pow", "[field]") {
  const Field f = Field::make(6);
  CHECK_THROWS_AS(f.pow(Field::zero(), 0), precondition_error);
  CHECK(f.pow(Field::zero(), 5) == Field::zero());
  for (std::uint32_t x = 1; x < f.order(); ++x) {
    CHECK(f.pow(FieldElem{x}, 1) == FieldElem{x});
    CHECK(f.pow(FieldElem{x}, f.order() - 1) == Field::one());
    CHECK(f.pow(FieldElem{x}, 0) == Field::one());
  }
  // Frobenius is additive.
  for (std::uint32_t x = 0; x < f.order(); ++x)
    for (std::uint32_t y = 0; y < f.order(); ++y)
      REQUIRE(f.pow(Field::add(FieldElem{x}, FieldElem{y}), 2) ==
              Field::add(f.pow(FieldElem{x}, 2), f.pow(FieldElem{y}, 2)));
}

TEST_CASE("Frobenius fixes every element: x^q = x", "[field]") {
  for (int r = 1; r <= 12; ++r) {
    const Field f = Field::make(r);
    for (std::uint32_t x = 0; x < f.order(); ++x) REQUIRE(f.pow(FieldElem{x}, f.order()) == FieldElem{x});
  }
}

TEST_CASE("sqrt inverts squaring", "[field]") {
  for (int r : {1, 3, 8}) {
    const Field f = Field::make(r);
    for (std::uint32_t x = 0; x < f.order(); ++x) REQUIRE(f.square(f.sqrt(FieldElem{x})) == FieldElem{x});
  }
}

TEST_CASE("field axioms hold exhaustively for r <= 6", "[field][axioms]") {
  for (int r = 1; r <= 6; ++r) {
    const Field f = Field::make(r);
    const std::uint32_t q = f.order();
    for (std::uint32_t a = 0; a < q; ++a)
      for (std::uint32_t b = 0; b < q; ++b) {
        const FieldElem x{a}, y{b};
        REQUIRE(f.mul(x, y) == f.mul(y, x));
        for (std::uint32_t c = 0; c < q; ++c) {
          const FieldElem z{c};
          REQUIRE(f.mul(f.mul(x, y), z) == f.mul(x, f.mul(y, z)));
          REQUIRE(f.mul(x, Field::add(y, z)) == Field::add(f.mul(x, y), f.mul(x, z)));
        }
      }
  }
}

TEST_CASE("field axioms on random triples for r in {6, 16, 24}", "[field][axioms]") {
  std::mt19937_64 rng(2024);
  for (int r : {6, 16, 24}) {
    const Field f = Field::make(r);
    for (int i = 0; i < 100000; ++i) {
      const FieldElem x{static_cast<std::uint32_t>(rng() % f.order())};
      const FieldElem y{static_cast<std::uint32_t>(rng() % f.order())};
      const FieldElem z{static_cast<std::uint32_t>(rng() % f.order())};
      REQUIRE(f.mul(f.mul(x, y), z) == f.mul(x, f.mul(y, z)));
      REQUIRE(f.mul(x, Field::add(y, z)) == Field::add(f.mul(x, y), f.mul(x, z)));
      REQUIRE(f.mul(x, y) == f.mul(y, x));
    }
  }
}

TEST_CASE("MulByConst matches mul", "[field]") {
  std::mt19937_64 rng(3);
  for (int r : {1, 7, 12, 20, 24}) {
    const Field f = Field::make(r);
    for (int k = 0; k < 20; ++k) {
      const FieldElem c{static_cast<std::uint32_t>(rng() % f.order())};
      const MulByConst times(f, c);
      for (int i = 0; i < 2000; ++i) {
        const std::uint32_t x = rng() % f.order();
        REQUIRE(times(x) == f.mul(c, FieldElem{x}).bits);
      }
    }
  }
}

TEST_CASE("primitive element generates the multiplicative group", "[field]") {
  for (int r : {1, 2, 3, 4, 8}) {
    const Field f = Field::make(r);
    const FieldElem g = f.primitive_element();
    CHECK(f.multiplicative_order(g) == f.order() - 1);
  }
}
