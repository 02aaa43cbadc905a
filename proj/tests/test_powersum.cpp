#include "gosszeta/powersum.hpp"

#include <vector>

#include "doctest.h"

using namespace gosszeta;

namespace {

bool terms_are(const SparsePoly& poly, const std::vector<std::pair<long, std::uint32_t>>& want) {
  if (poly.terms.size() != want.size()) return false;
  for (std::size_t i = 0; i < want.size(); ++i)
    if (poly.terms[i].first != want[i].first || poly.terms[i].second != want[i].second)
      return false;
  return true;
}

}  // namespace

TEST_CASE("degree one over F_3: both evaluators against the hand expansion") {
  // z = 0, m = 2, and z = m mod (q-1), so a^y is literally a^2:
  // sum over f_0 in {1,2} of (f_0 + t)^2 = (1 + 2t + t^2) + (4 + 4t + t^2)
  //                                      = 2 + 2t^2 mod 3.
  auto f3 = FqContext::make(3, 1);
  auto y = ExponentY::finite(0, 2);
  auto en = power_sum_enumeration(f3, 1, y, 4);
  CHECK(en.series.coeff(0) == 2);
  CHECK(en.series.coeff(1) == 0);
  CHECK(en.series.coeff(2) == 2);
  CHECK(en.series.coeff(3) == 0);
  CHECK(en.series.valuation() == SeriesValuation{true, 0});

  auto comb = power_sum_combinatorial(f3, 1, y);
  CHECK(terms_are(comb, {{0, 2}, {2, 2}}));  // -(C(2,0) t^0 + C(2,2) t^2)
  CHECK(sparse_to_series(f3, comb, 4).same_value_as(en.series));
}

TEST_CASE("degree zero is the constant one") {
  for (auto [p, n] : std::vector<std::pair<std::int64_t, int>>{{2, 1}, {3, 1}, {2, 2}}) {
    auto ctx = FqContext::make(p, n);
    auto y = ExponentY::finite(0, 7);
    auto en = power_sum_enumeration(ctx, 0, y, 6);
    CHECK(en.series.coeff(0) == 1);
    CHECK(en.series.valuation() == SeriesValuation{true, 0});
    auto comb = power_sum_combinatorial(ctx, 0, y);
    CHECK(terms_are(comb, {{0, 1}}));
  }
}

TEST_CASE("F_4 single surviving decomposition") {
  // only m_1 in {0,1,4,5} with m_1 = 2 mod 3 is 5, so S_1 = -t^5 = t^5
  auto f4 = FqContext::make(2, 2);
  auto y = ExponentY::finite(2, 5);
  auto comb = power_sum_combinatorial(f4, 1, y);
  CHECK(terms_are(comb, {{5, 1}}));
  auto en = power_sum_enumeration(f4, 1, y, 8);
  CHECK(en.series.valuation() == SeriesValuation{true, 5});
  CHECK(en.series.same_value_as(sparse_to_series(f4, comb, 8)));
}

TEST_CASE("F_3 exponent (1, 8): valuations and the exact zero at d = 3") {
  auto f3 = FqContext::make(3, 1);
  auto y = ExponentY::finite(1, 8);

  auto s2 = power_sum_combinatorial(f3, 2, y);
  CHECK(terms_are(s2, {{6, 1}, {8, 1}, {10, 1}}));
  CHECK(s2.min_exponent() == 6);
  auto en2 = power_sum_enumeration(f3, 2, y, 16);
  CHECK(en2.series.same_value_as(sparse_to_series(f3, s2, 16)));

  auto s3 = power_sum_combinatorial(f3, 3, y);
  CHECK(s3.zero());  // no valid decomposition: certified exact zero
  auto en3 = power_sum_enumeration(f3, 3, y, 32);
  CHECK(en3.series.is_zero());
  CHECK(en3.series.precision() == 32);  // only a bound, never an exactness claim
}

TEST_CASE("valuation strategies") {
  auto f3 = FqContext::make(3, 1);
  auto y = ExponentY::finite(1, 8);
  CHECK(valuation_of_power_sum(f3, 2, y, ValuationStrategy::Combinatorial) ==
        ValuationResult::finite(6));
  CHECK(valuation_of_power_sum(f3, 2, y, ValuationStrategy::Enumeration) ==
        ValuationResult::finite(6));
  CHECK(valuation_of_power_sum(f3, 3, y, ValuationStrategy::Combinatorial) ==
        ValuationResult::exact_zero());
  CHECK(valuation_of_power_sum(f3, 3, y, ValuationStrategy::Enumeration, 64) ==
        ValuationResult::at_least(64));

  // q = 2: the residue constraint is vacuous, m_1 = 0 survives and v_1 = 0
  auto f2 = FqContext::make(2, 1);
  auto y2 = ExponentY::finite(0, 1);
  CHECK(valuation_of_power_sum(f2, 1, y2, ValuationStrategy::Combinatorial) ==
        ValuationResult::finite(0));
  CHECK(valuation_of_power_sum(f2, 1, y2, ValuationStrategy::Enumeration) ==
        ValuationResult::finite(0));
  auto comb = power_sum_combinatorial(f2, 1, y2);
  CHECK(terms_are(comb, {{0, 1}, {1, 1}}));  // S_1 = 1 + t over F_2
}

TEST_CASE("grid: the two evaluators agree and match the greedy weight") {
  const std::vector<std::pair<std::int64_t, int>> fields = {
      {2, 1}, {3, 1}, {2, 2}, {5, 1}, {3, 2}};
  for (auto [p, n] : fields) {
    auto ctx = FqContext::make(p, n);
    const std::int64_t q = ctx->q();
    for (long m = 1; m <= 100; ++m) {
      if (digit_sum(m, static_cast<std::uint32_t>(p)) > 10) continue;
      for (std::uint64_t z = 0; z + 1 < static_cast<std::uint64_t>(q); ++z) {
        auto y = ExponentY::finite(z, m);
        for (int d = 0; d <= 4; ++d) {
          CAPTURE(p);
          CAPTURE(n);
          CAPTURE(z);
          CAPTURE(m);
          CAPTURE(d);
          auto poly = power_sum_combinatorial(ctx, d, y);
          auto greedy = greedy_decomposition(y, d, ctx);
          // valuation match: min exponent = greedy weight; exact zero = none
          REQUIRE(poly.zero() == !greedy.has_value());
          if (!poly.zero()) REQUIRE(poly.min_exponent() == greedy->weight);

          // literal enumeration cross-check where the work stays small
          mpz_class tuples = enumeration_tuple_count(ctx, d);
          if (tuples > 512) continue;
          std::int64_t N = 24;
          if (greedy && greedy->weight.fits_slong_p())
            N = std::min<std::int64_t>(greedy->weight.get_si() + 4, 72);
          auto en = power_sum_enumeration(ctx, d, y, N);
          CHECK(en.series.same_value_as(sparse_to_series(ctx, poly, N)));
        }
      }
    }
  }
}

TEST_CASE("vanishing bound certified on the grid") {
  for (auto [p, n] : std::vector<std::pair<std::int64_t, int>>{{2, 1}, {3, 1}, {2, 2}, {5, 1}}) {
    auto ctx = FqContext::make(p, n);
    const std::int64_t q = ctx->q();
    for (long m = 1; m <= 60; ++m) {
      auto bound = static_cast<int>(digit_sum(m, static_cast<std::uint32_t>(q)) /
                                    static_cast<std::uint64_t>(q - 1)) +
                   1;
      for (std::uint64_t z = 0; z + 1 < static_cast<std::uint64_t>(q); ++z) {
        auto y = ExponentY::finite(z, m);
        for (int d = bound + 1; d <= bound + 2; ++d) {
          CAPTURE(p);
          CAPTURE(n);
          CAPTURE(z);
          CAPTURE(m);
          CAPTURE(d);
          CHECK(power_sum_combinatorial(ctx, d, y).zero());
        }
      }
    }
  }
}

TEST_CASE("enumeration is independent of the partition of the tuple space") {
  auto f5 = FqContext::make(5, 1);
  auto y = ExponentY::finite(3, 42);
  const int d = 3;
  const std::int64_t N = 40;
  auto whole = power_sum_enumeration(f5, d, y, N).series;
  std::uint64_t total = enumeration_tuple_count(f5, d).get_ui();
  for (std::uint64_t cut : {std::uint64_t{1}, total / 3, total / 2, total - 1}) {
    auto sum = power_sum_enumeration_range(f5, d, y, N, 0, cut) +
               power_sum_enumeration_range(f5, d, y, N, cut, total);
    CHECK(sum.same_value_as(whole));
  }
}
