#include "gosszeta/fq.hpp"

#include <set>
#include <vector>

#include "doctest.h"

using namespace gosszeta;

namespace {

// All prime powers q <= 16 as (p, n).
const std::vector<std::pair<std::int64_t, int>> kSmallFields = {
    {2, 1}, {3, 1}, {2, 2}, {5, 1}, {7, 1}, {2, 3}, {3, 2}, {11, 1}, {13, 1}, {2, 4}};

}  // namespace

TEST_CASE("prime field contexts") {
  auto f2 = FqContext::make(2, 1);
  CHECK(f2->q() == 2);
  CHECK(f2->modulus() == std::vector<std::int64_t>{0, 1});  // x

  auto f3 = FqContext::make(3, 1);
  CHECK(f3->q() == 3);
}

TEST_CASE("F_4 default modulus is the unique irreducible quadratic") {
  // Oracle: a monic quadratic over F_2 is reducible iff it is a product of
  // two monic linear factors. Enumerate all such products directly.
  std::set<std::vector<std::int64_t>> reducible;
  for (std::int64_t a = 0; a < 2; ++a)
    for (std::int64_t b = 0; b < 2; ++b)
      reducible.insert({(a * b) % 2, (a + b) % 2, 1});  // (x+a)(x+b)
  std::vector<std::vector<std::int64_t>> irreducible;
  for (std::int64_t c0 = 0; c0 < 2; ++c0)
    for (std::int64_t c1 = 0; c1 < 2; ++c1)
      if (!reducible.count({c0, c1, 1})) irreducible.push_back({c0, c1, 1});
  REQUIRE(irreducible.size() == 1);
  CHECK(irreducible[0] == std::vector<std::int64_t>{1, 1, 1});  // x^2+x+1

  auto f4 = FqContext::make(2, 2);
  CHECK(f4->q() == 4);
  CHECK(f4->modulus() == irreducible[0]);
}

TEST_CASE("construction errors") {
  CHECK_THROWS_WITH_AS(FqContext::make(4, 1), doctest::Contains("NotPrime"), Error);
  CHECK_THROWS_WITH_AS(FqContext::make(6, 2), doctest::Contains("NotPrime"), Error);
  // x^2 + 1 = (x+1)^2 over F_2
  CHECK_THROWS_WITH_AS(FqContext::make(2, 2, std::vector<std::int64_t>{1, 0, 1}),
                       doctest::Contains("ReducibleModulus"), Error);
  CHECK_THROWS_WITH_AS(FqContext::make(2, 2, std::vector<std::int64_t>{1, 1}),
                       doctest::Contains("DegreeMismatch"), Error);
  CHECK_THROWS_WITH_AS(FqContext::make(2, 0), doctest::Contains("DegreeMismatch"), Error);
}

TEST_CASE("basic arithmetic examples") {
  auto f3 = FqContext::make(3, 1);
  CHECK(f3->mul(2, 2) == 1);

  auto f4 = FqContext::make(2, 2);
  Fq g = f4->element(2);  // the modulus root x
  CHECK(f4->pow(g, 3) == f4->one());
  CHECK(f4->pow(g, 1) != f4->one());
  CHECK(f4->pow(g, 2) != f4->one());

  auto f5 = FqContext::make(5, 1);
  CHECK(f5->inv(3) == 2);
  CHECK_THROWS_WITH_AS(f5->inv(0), doctest::Contains("DivisionByZero"), Error);
  CHECK_THROWS_WITH_AS(f5->pow(0, mpz_class(-2)), doctest::Contains("DivisionByZero"), Error);
}

TEST_CASE("coefficient vector round trip and enumeration order") {
  auto f9 = FqContext::make(3, 2);
  std::int64_t prev = -1;
  for (std::int64_t i = 0; i < f9->q(); ++i) {
    Fq e = f9->element(i);
    auto c = f9->coeffs(e);
    REQUIRE(c.size() == 2);
    CHECK(f9->from_coeffs(c) == e);
    // lexicographic, least significant coordinate first
    std::int64_t packed = c[0] + 3 * c[1];
    CHECK(packed == i);
    CHECK(packed > prev);
    prev = packed;
  }
}

TEST_CASE("character sum examples") {
  auto f3 = FqContext::make(3, 1);
  CHECK(f3->power_sum(2, false) == f3->from_int(-1));  // = 2
  CHECK(f3->power_sum(1, false) == f3->zero());

  auto f4 = FqContext::make(2, 2);
  // sum over the 3 units of x^0 = 3 = 1 = -1 in characteristic 2
  CHECK(f4->power_sum(0, true) == f4->one());
  CHECK(f4->power_sum(0, true) == f4->from_int(-1));
}

TEST_CASE("character sums match the closed form for q <= 16") {
  for (auto [p, n] : kSmallFields) {
    auto ctx = FqContext::make(p, n);
    const std::int64_t q1 = ctx->unit_order();
    for (std::int64_t h = 0; h <= 3 * q1; ++h) {
      // all elements: 0 unless h > 0 and (q-1) | h, in which case -1
      Fq expect_all = (h > 0 && h % q1 == 0) ? ctx->from_int(-1) : ctx->zero();
      // units only: -1 iff (q-1) | h (h = 0 included)
      Fq expect_units = (h % q1 == 0) ? ctx->from_int(-1) : ctx->zero();
      CAPTURE(p);
      CAPTURE(n);
      CAPTURE(h);
      CHECK(ctx->power_sum(h, false) == expect_all);
      CHECK(ctx->power_sum(h, true) == expect_units);
    }
  }
}

TEST_CASE("field axioms, Frobenius and unit group order for q <= 16") {
  for (auto [p, n] : kSmallFields) {
    auto ctx = FqContext::make(p, n);
    const std::int64_t q = ctx->q();
    for (std::int64_t ai = 0; ai < q; ++ai) {
      Fq a = ctx->element(ai);
      if (a != 0) {
        CHECK(ctx->pow_u(a, static_cast<std::uint64_t>(q - 1)) == ctx->one());
        CHECK(ctx->mul(a, ctx->inv(a)) == ctx->one());
        // exponent reduction mod q-1
        CHECK(ctx->pow(a, mpz_class(q - 1 + 5)) == ctx->pow(a, mpz_class(5 % (q - 1))));
        CHECK(ctx->pow(a, mpz_class(-1)) == ctx->inv(a));
      }
      for (std::int64_t bi = 0; bi < q; ++bi) {
        Fq b = ctx->element(bi);
        CHECK(ctx->add(a, b) == ctx->add(b, a));
        CHECK(ctx->mul(a, b) == ctx->mul(b, a));
        CHECK(ctx->sub(ctx->add(a, b), b) == a);
        // Frobenius is additive
        CHECK(ctx->pow_u(ctx->add(a, b), static_cast<std::uint64_t>(p)) ==
              ctx->add(ctx->pow_u(a, static_cast<std::uint64_t>(p)),
                       ctx->pow_u(b, static_cast<std::uint64_t>(p))));
      }
    }
    // spot-check associativity/distributivity on a stride of triples
    for (std::int64_t ai = 0; ai < q; ++ai)
      for (std::int64_t bi = 0; bi < q; ++bi)
        for (std::int64_t ci = 0; ci < q; ci += (q > 8 ? 3 : 1)) {
          Fq a = ctx->element(ai), b = ctx->element(bi), c = ctx->element(ci);
          CHECK(ctx->mul(ctx->mul(a, b), c) == ctx->mul(a, ctx->mul(b, c)));
          CHECK(ctx->mul(a, ctx->add(b, c)) == ctx->add(ctx->mul(a, b), ctx->mul(a, c)));
        }
  }
}
