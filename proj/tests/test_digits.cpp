#include "gosszeta/digits.hpp"

#include <cstdint>
#include <vector>

#include "doctest.h"

using namespace gosszeta;

namespace {

std::vector<mpz_class> mpzv(std::initializer_list<long> xs) {
  std::vector<mpz_class> v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

// Exact multinomial coefficient via integer factorials (test oracle).
mpz_class multinomial_exact(const mpz_class& m, const std::vector<mpz_class>& parts) {
  mpz_class num;
  mpz_fac_ui(num.get_mpz_t(), m.get_ui());
  for (const auto& part : parts) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), part.get_ui());
    num /= f;
  }
  return num;
}

}  // namespace

TEST_CASE("digit expansion basics") {
  CHECK(base_digits(8, 3) == std::vector<std::uint32_t>{2, 2});
  CHECK(base_digits(0, 5) == std::vector<std::uint32_t>{});
  CHECK(base_digits(5, 2) == std::vector<std::uint32_t>{1, 0, 1});
  CHECK(from_digits({1, 0, 1}, 2) == 5);

  CHECK(digit_sum(8, 3) == 4);
  CHECK(digit_sum(5, 4) == 2);
  CHECK(digit_sum(5, 2) == 2);
}

TEST_CASE("carry-free sums") {
  CHECK(carry_free(mpzv({4, 4}), 3));       // 11_3 + 11_3 = 22_3
  CHECK_FALSE(carry_free(mpzv({1, 2}), 3)); // digit sum reaches 3
  CHECK_FALSE(carry_free(mpzv({1, 1}), 2));
}

TEST_CASE("multinomials mod p") {
  CHECK(multinomial_mod_p(8, mpzv({4, 4}), 3) == 1);
  CHECK(multinomial_exact(8, mpzv({4, 4})) == 70);  // C(8,4) = 70 = 1 mod 3
  CHECK(multinomial_mod_p(2, mpzv({1, 1}), 2) == 0);
  CHECK(multinomial_mod_p(5, mpzv({0, 5}), 2) == 1);
  CHECK_THROWS_WITH_AS(multinomial_mod_p(5, mpzv({1, 5}), 2),
                       doctest::Contains("PartsSumMismatch"), Error);
}

TEST_CASE("Lucas criterion vs exact factorials, m <= 64, up to 3 parts") {
  for (std::uint32_t p : {2u, 3u, 5u}) {
    for (long m = 0; m <= 64; ++m) {
      for (long a = 0; a <= m; ++a) {
        // two parts
        auto parts2 = mpzv({a, m - a});
        std::uint32_t got2 = multinomial_mod_p(m, parts2, p);
        CHECK(got2 == mpz_class(multinomial_exact(m, parts2) % p).get_ui());
        CHECK((got2 != 0) == carry_free(parts2, p));
        // three parts (stride keeps the grid dense but the test fast)
        for (long b = 0; a + b <= m; b += (m > 32 ? 3 : 1)) {
          auto parts3 = mpzv({a, b, m - a - b});
          std::uint32_t got3 = multinomial_mod_p(m, parts3, p);
          CHECK(got3 == mpz_class(multinomial_exact(m, parts3) % p).get_ui());
          CHECK((got3 != 0) == carry_free(parts3, p));
        }
      }
    }
  }
}

TEST_CASE("greedy decomposition examples") {
  auto f3 = FqContext::make(3, 1);
  auto gd = greedy_decomposition(ExponentY::finite(1, 8), 2, f3);
  REQUIRE(gd.has_value());
  CHECK(gd->parts == mpzv({3, 4, 1}));
  CHECK(gd->weight == 6);

  auto gd2 = greedy_decomposition(ExponentY::finite(0, 8), 1, f3);
  REQUIRE(gd2.has_value());
  CHECK(gd2->parts == mpzv({8, 0}));  // r = 0 allows the empty top part
  CHECK(gd2->weight == 0);

  auto f4 = FqContext::make(2, 2);
  CHECK_FALSE(greedy_decomposition(ExponentY::finite(2, 5), 2, f4).has_value());

  // d = 0: the unique decomposition is m_0 = m with weight 0
  auto g0 = greedy_decomposition(ExponentY::finite(1, 8), 0, f3);
  REQUIRE(g0.has_value());
  CHECK(g0->weight == 0);

  auto gz = greedy_decomposition(ExponentY::finite(0, 8), 2, f3);
  REQUIRE(gz.has_value());
  CHECK(gz->parts == mpzv({6, 2, 0}));
  CHECK(gz->weight == 2);
}

TEST_CASE("exhaustive minimum examples") {
  auto f3 = FqContext::make(3, 1);
  auto ex = exhaustive_min_decomposition(ExponentY::finite(1, 8), 2, f3);
  REQUIRE(ex.has_value());
  CHECK(ex->parts == mpzv({3, 4, 1}));
  CHECK(ex->weight == 6);

  CHECK_FALSE(exhaustive_min_decomposition(ExponentY::finite(1, 1), 2, f3).has_value());

  // q = 2 makes every residue constraint vacuous: nothing forces digit units
  // out of m_0, so the minimal weight at d = 1 is 0.
  auto f2 = FqContext::make(2, 1);
  auto e2 = exhaustive_min_decomposition(ExponentY::finite(0, 1), 1, f2);
  REQUIRE(e2.has_value());
  CHECK(e2->parts == mpzv({1, 0}));
  CHECK(e2->weight == 0);
  auto g2 = greedy_decomposition(ExponentY::finite(0, 1), 1, f2);
  REQUIRE(g2.has_value());
  CHECK(g2->parts == e2->parts);

  CHECK_THROWS_WITH_AS(
      exhaustive_min_decomposition(ExponentY::finite(0, (mpz_class(1) << 20) - 1), 2, f2),
      doctest::Contains("CapExceeded"), Error);
}

TEST_CASE("closed form valuation examples (prime q)") {
  auto f3 = FqContext::make(3, 1);
  auto v = closed_form_valuation(ExponentY::finite(1, 8), 2, f3);
  REQUIRE(v.has_value());
  CHECK(*v == 6);  // 2*3^0 + 1*(3^0 + 3^1)

  CHECK_FALSE(closed_form_valuation(ExponentY::finite(1, 8), 3, f3).has_value());  // l = 4 < 5

  auto v0 = closed_form_valuation(ExponentY::finite(0, 8), 2, f3);
  REQUIRE(v0.has_value());
  CHECK(*v0 == 2);

  auto f4 = FqContext::make(2, 2);
  CHECK_THROWS_WITH_AS(closed_form_valuation(ExponentY::finite(0, 3), 1, f4),
                       doctest::Contains("NotPrimeField"), Error);
}

TEST_CASE("slope prediction examples") {
  auto f3 = FqContext::make(3, 1);
  auto y = ExponentY::finite(1, 8);
  auto l1 = slope_prediction(y, 1, f3);
  auto l2 = slope_prediction(y, 2, f3);
  REQUIRE(l1.has_value());
  REQUIRE(l2.has_value());
  CHECK(*l1 == 1);
  CHECK(*l2 == 5);

  auto yz = ExponentY::finite(0, 8);
  auto lz = slope_prediction(yz, 1, f3);
  REQUIRE(lz.has_value());
  CHECK(*lz == 0);  // first slope zero when z = 0 mod (q-1)
}

TEST_CASE("grid: greedy matches the exhaustive oracle, telescoping and slopes") {
  const std::vector<std::pair<std::int64_t, int>> fields = {{2, 1}, {3, 1}, {2, 2},
                                                            {5, 1}, {2, 3}, {3, 2}};
  long telescoping_breaks = 0;  // composite q only; see the dedicated case below
  for (auto [p, n] : fields) {
    auto ctx = FqContext::make(p, n);
    const std::int64_t q = ctx->q();
    for (long m = 1; m <= 200; ++m) {
      if (digit_sum(m, static_cast<std::uint32_t>(p)) > 12) continue;
      for (std::uint64_t z = 0; z + 1 < static_cast<std::uint64_t>(q); ++z) {
        auto y = ExponentY::finite(z, m);
        std::vector<std::optional<Decomposition>> greedy(8);
        greedy[0] = greedy_decomposition(y, 0, ctx);
        for (int d = 1; d <= 6; ++d) {
          greedy[static_cast<std::size_t>(d)] = greedy_decomposition(y, d, ctx);
          auto oracle = exhaustive_min_decomposition(y, d, ctx);
          const auto& g = greedy[static_cast<std::size_t>(d)];
          CAPTURE(p);
          CAPTURE(n);
          CAPTURE(z);
          CAPTURE(m);
          CAPTURE(d);
          REQUIRE(g.has_value() == oracle.has_value());
          if (g) {
            // the minimum is unique, so the parts agree, not just the weight
            REQUIRE(g->weight == oracle->weight);
            REQUIRE(g->parts == oracle->parts);
            mpz_class part_sum = 0;
            for (const auto& part : g->parts) part_sum += part;
            CHECK(part_sum == m);
            CHECK(carry_free(g->parts, static_cast<std::uint32_t>(p)));
            const auto& prev = greedy[static_cast<std::size_t>(d - 1)];
            if (prev.has_value()) {
              // no-gap: a valid decomposition at d restricts to one at d-1
              bool telescopes = true;
              for (int j = 0; j <= d - 2; ++j)
                telescopes = telescopes && g->parts[static_cast<std::size_t>(d - j)] ==
                                               prev->parts[static_cast<std::size_t>(d - 1 - j)];
              auto lam = slope_prediction(y, d, ctx);
              REQUIRE(lam.has_value());
              if (n == 1) {
                // telescoping and the slope identities hold for prime q
                CHECK(telescopes);
                CHECK(*lam == g->weight - prev->weight);
                if (d > 1) {
                  CHECK(*lam - *slope_prediction(y, d - 1, ctx) == g->parts[1]);
                  CHECK(g->parts[1] > 0);
                }
              } else if (!telescopes) {
                ++telescoping_breaks;  // tracked, not asserted: see below
              }
              // strict convexity of the valuations holds for every q
              if (d > 1 && greedy[static_cast<std::size_t>(d - 2)].has_value()) {
                const auto& prev2 = greedy[static_cast<std::size_t>(d - 2)];
                CHECK(g->weight - prev->weight > prev->weight - prev2->weight);
              }
            } else {
              CHECK(false);  // finite v_d forces finite v_{d-1}
            }
          }
        }
      }
    }
  }
  MESSAGE("telescoping counterexamples on composite q: ", telescoping_breaks);
  CHECK(telescoping_breaks > 0);  // they exist; the pinned case is below
}

TEST_CASE("composite q counterexample to the literal take-the-least greedy") {
  // q = 4, z = 2, m = 109 = {1,4,8,32,64}: the least top part with residue
  // 2 mod 3 is 5 = 1+4, but committing to it forces m_1 = 72 and weight 82.
  // The true minimum (verified by literal power-sum enumeration, which gives
  // valuation 49) takes m_2 = 8 instead. The telescoping identity between
  // consecutive decompositions breaks on the same instance.
  auto f4 = FqContext::make(2, 2);
  auto y = ExponentY::finite(2, 109);
  auto g1 = greedy_decomposition(y, 1, f4);
  auto g2 = greedy_decomposition(y, 2, f4);
  REQUIRE(g1.has_value());
  REQUIRE(g2.has_value());
  CHECK(g1->weight == 5);
  CHECK(g1->parts == mpzv({104, 5}));
  CHECK(g2->weight == 49);
  CHECK(g2->parts == mpzv({68, 33, 8}));
  CHECK(g2->parts[2] != g1->parts[1]);  // telescoping fails here

  auto ex2 = exhaustive_min_decomposition(y, 2, f4);
  REQUIRE(ex2.has_value());
  CHECK(ex2->weight == 49);
}

TEST_CASE("grid: closed form equals greedy weight for prime q") {
  for (std::int64_t p : {2, 3, 5}) {
    auto ctx = FqContext::make(p, 1);
    for (long m = 1; m <= 200; ++m) {
      if (digit_sum(m, static_cast<std::uint32_t>(p)) > 12) continue;
      for (std::uint64_t z = 0; z + 1 < static_cast<std::uint64_t>(p); ++z) {
        auto y = ExponentY::finite(z, m);
        for (int d = 0; d <= 6; ++d) {
          auto cf = closed_form_valuation(y, d, ctx);
          auto g = greedy_decomposition(y, d, ctx);
          CAPTURE(p);
          CAPTURE(z);
          CAPTURE(m);
          CAPTURE(d);
          REQUIRE(cf.has_value() == g.has_value());
          if (cf) CHECK(*cf == g->weight);
        }
      }
    }
  }
}

TEST_CASE("greedy matches the oracle on larger composite fields") {
  for (auto [p, n] : std::vector<std::pair<std::int64_t, int>>{{2, 4}, {5, 2}, {3, 3}}) {
    auto ctx = FqContext::make(p, n);
    for (long m = 1; m <= 300; m += (m % 7) + 1) {
      if (digit_sum(m, static_cast<std::uint32_t>(p)) > 9) continue;
      for (std::uint64_t z = 0; z + 1 < static_cast<std::uint64_t>(ctx->q()); z += 3) {
        auto y = ExponentY::finite(z, m);
        for (int d = 0; d <= 4; ++d) {
          CAPTURE(p);
          CAPTURE(n);
          CAPTURE(z);
          CAPTURE(m);
          CAPTURE(d);
          auto g = greedy_decomposition(y, d, ctx);
          auto e = exhaustive_min_decomposition(y, d, ctx);
          REQUIRE(g.has_value() == e.has_value());
          if (g) {
            REQUIRE(g->weight == e->weight);
            REQUIRE(g->parts == e->parts);
          }
        }
      }
    }
  }
}

TEST_CASE("stream specs") {
  StreamSpec all_twos{{}, {2}};
  CHECK(all_twos.digit(0) == 2);
  CHECK(all_twos.digit(31) == 2);
  CHECK_FALSE(all_twos.eventually_zero());
  CHECK(all_twos.truncation(3, 3) == 26);  // 2 + 6 + 18 = 3^3 - 1
  CHECK(all_twos.to_string() == "repeat:2");

  StreamSpec alt{{}, {1, 0}};
  CHECK(alt.truncation(4, 5) == 26);  // 1 + 25

  StreamSpec fin{{1, 2}, {0}};
  CHECK(fin.eventually_zero());
  CHECK(fin.support_end() == 2);
  CHECK(fin.truncation(10, 3) == 7);
  CHECK(fin.to_string() == "prefix:1,2;repeat:0");

  StreamSpec bad{{}, {7}};
  CHECK_THROWS_WITH_AS(bad.truncation(1, 5), doctest::Contains("BadConfig"), Error);
}
