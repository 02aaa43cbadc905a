#include "gosszeta/powersum.hpp"

#include <algorithm>
#include <map>

namespace gosszeta {

const mpz_class& SparsePoly::min_exponent() const {
  if (terms.empty()) fail(Errc::BadConfig, "min exponent of the zero polynomial");
  return terms.front().first;
}

mpz_class enumeration_tuple_count(const FqContextPtr& ctx, int d) {
  if (d < 0) fail(Errc::BadConfig, "d must be >= 0");
  if (d == 0) return 1;
  mpz_class n = ctx->q() - 1;
  for (int i = 1; i < d; ++i) n *= ctx->q();
  return n;
}

TruncatedSeries power_sum_enumeration_range(const FqContextPtr& ctx, int d, const ExponentY& y,
                                            std::int64_t N, std::uint64_t begin,
                                            std::uint64_t end) {
  const mpz_class& m = y.m();  // PadicStreamNotFinite for streams
  if (N < 1) fail(Errc::BadConfig, "precision must be >= 1");
  auto acc = TruncatedSeries::zero(ctx, N);
  if (d == 0) return begin == 0 && end >= 1 ? TruncatedSeries::one(ctx, N) : acc;

  const auto q = static_cast<std::uint64_t>(ctx->q());
  std::vector<Fq> coeffs(static_cast<std::size_t>(d) + 1);
  for (std::uint64_t idx = begin; idx < end; ++idx) {
    std::uint64_t rest = idx;
    Fq f0 = static_cast<Fq>(1 + rest % (q - 1));
    rest /= q - 1;
    Fq inv0 = ctx->inv(f0);
    coeffs[0] = 1;
    for (int i = 1; i < d; ++i) {
      coeffs[static_cast<std::size_t>(i)] = ctx->mul(static_cast<Fq>(rest % q), inv0);
      rest /= q;
    }
    coeffs[static_cast<std::size_t>(d)] = inv0;
    auto one_unit = TruncatedSeries::from_coeffs(ctx, 0, coeffs, N);
    auto term = pow_one_unit(one_unit, m, N).scaled(ctx->pow(f0, mpz_class(y.z())));
    acc = acc + term;
  }
  return acc;
}

PowerSumResult power_sum_enumeration(const FqContextPtr& ctx, int d, const ExponentY& y,
                                     std::int64_t N) {
  mpz_class count = enumeration_tuple_count(ctx, d);
  if (!count.fits_ulong_p()) fail(Errc::CapExceeded, "enumeration tuple space too large");
  auto series = power_sum_enumeration_range(ctx, d, y, N, 0, count.get_ui());
  return PowerSumResult{std::move(series), std::nullopt, PowerSumMethod::Enumeration};
}

namespace {

template <class Int>
SparsePoly combinatorial_impl(const std::vector<std::uint32_t>& counts, std::uint64_t p,
                              std::uint32_t Q, std::uint32_t r, int d) {
  std::map<Int, std::uint32_t> acc;
  for_each_carry_free_split<Int>(
      counts, static_cast<std::uint32_t>(p), Q, d,
      [&](const std::vector<Int>& value, const std::vector<std::uint32_t>& residue,
          const Int& weight, std::uint32_t lucas) {
        for (int i = 1; i < d; ++i) {
          const auto ui = static_cast<std::size_t>(i);
          if (residue[ui] != 0 || value[ui] == 0) return;
        }
        if (residue[static_cast<std::size_t>(d)] != r) return;
        auto& slot = acc[weight];
        slot = static_cast<std::uint32_t>((slot + lucas) % p);
      });
  SparsePoly out;
  const bool negate = d % 2 == 1;  // one -1 per character sum: (-1)^d overall
  for (auto& [exp, c] : acc) {
    std::uint32_t coeff = negate ? static_cast<std::uint32_t>((p - c) % p) : c;
    if (coeff != 0) out.terms.emplace_back(mpz_class(exp), coeff);
  }
  return out;
}

}  // namespace

SparsePoly power_sum_combinatorial(const FqContextPtr& ctx, int d, const ExponentY& y,
                                   int unit_cap) {
  if (d < 0) fail(Errc::BadConfig, "d must be >= 0");
  const mpz_class& m = y.m();
  if (d == 0) return SparsePoly{{{mpz_class(0), 1}}};
  const auto p = static_cast<std::uint64_t>(ctx->p());
  const auto Q = static_cast<std::uint32_t>(ctx->unit_order());
  const auto r = static_cast<std::uint32_t>(y.z() % Q);
  auto counts = base_digits(m, static_cast<std::uint32_t>(p));
  std::uint64_t units = 0;
  for (auto c : counts) units += c;
  if (units > static_cast<std::uint64_t>(unit_cap))
    fail(Errc::CapExceeded, "digit-unit count " + std::to_string(units) + " exceeds cap " +
                                std::to_string(unit_cap));
  if (detail::estimate_split_leaves(counts, d) > 4e9)
    fail(Errc::CapExceeded, "split enumeration too large");
  if (mpz_sizeinbase(m.get_mpz_t(), 2) <= 55 && d <= 64)
    return combinatorial_impl<std::int64_t>(counts, p, Q, r, d);
  return combinatorial_impl<mpz_class>(counts, p, Q, r, d);
}

TruncatedSeries sparse_to_series(const FqContextPtr& ctx, const SparsePoly& poly,
                                 std::int64_t N) {
  if (poly.zero()) return TruncatedSeries::zero(ctx, N);
  std::vector<Fq> coeffs;
  std::int64_t lead = 0;
  bool have_lead = false;
  for (const auto& [exp, c] : poly.terms) {
    if (N < TruncatedSeries::kExact && exp >= N) break;
    if (!exp.fits_slong_p()) fail(Errc::CapExceeded, "exponent too large for a dense series");
    std::int64_t e = exp.get_si();
    if (!have_lead) {
      lead = e;
      have_lead = true;
    }
    auto offset = static_cast<std::size_t>(e - lead);
    if (offset >= (INT64_C(1) << 24)) fail(Errc::CapExceeded, "dense series would be huge");
    if (coeffs.size() <= offset) coeffs.resize(offset + 1, 0);
    coeffs[offset] = ctx->from_int(static_cast<std::int64_t>(c));
  }
  if (!have_lead) return TruncatedSeries::zero(ctx, N);
  return TruncatedSeries::from_coeffs(ctx, lead, std::move(coeffs), N);
}

ValuationResult valuation_of_power_sum(const FqContextPtr& ctx, int d, const ExponentY& y,
                                       ValuationStrategy strategy, std::int64_t n_max,
                                       int unit_cap) {
  if (strategy == ValuationStrategy::Combinatorial) {
    auto poly = power_sum_combinatorial(ctx, d, y, unit_cap);
    if (poly.zero()) return ValuationResult::exact_zero();
    return ValuationResult::finite(poly.min_exponent());
  }
  // enumeration: start just past the predicted valuation, then double
  std::int64_t N = 16;
  if (auto g = greedy_decomposition(y, d, ctx)) {
    mpz_class start = g->weight + 1;
    N = start.fits_slong_p() ? std::min<std::int64_t>(start.get_si(), n_max) : n_max;
    N = std::max<std::int64_t>(N, 1);
  }
  N = std::min(N, n_max);
  for (;;) {
    auto res = power_sum_enumeration(ctx, d, y, N);
    if (!res.series.is_zero()) return ValuationResult::finite(res.series.lead_val());
    if (N >= n_max) return ValuationResult::at_least(N);
    N = std::min(N * 2, n_max);
  }
}

}  // namespace gosszeta
