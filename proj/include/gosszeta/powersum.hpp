#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gosszeta/digits.hpp"
#include "gosszeta/series.hpp"

namespace gosszeta {

/// Exact polynomial in t with coefficients in the prime subfield of F_q.
struct SparsePoly {
  /// (exponent, coefficient mod p), ascending exponents, coefficients nonzero.
  std::vector<std::pair<mpz_class, std::uint32_t>> terms;

  bool zero() const { return terms.empty(); }
  const mpz_class& min_exponent() const;
};

enum class PowerSumMethod { Enumeration, Combinatorial };

struct PowerSumResult {
  TruncatedSeries series;
  std::optional<SparsePoly> exact;  // combinatorial route only
  PowerSumMethod method;
};

/// (q-1) q^(d-1) for d >= 1, and 1 for d = 0.
mpz_class enumeration_tuple_count(const FqContextPtr& ctx, int d);

/// S_{d,t}(y) by literal summation over the monic polynomials of degree d
/// coprime to t: a = f_0 + f_1 t + ... + f_{d-1} t^{d-1} + t^d with f_0 != 0,
/// each contributing f_0^z (a/f_0)^m computed in F_q[[t]] mod t^N.
PowerSumResult power_sum_enumeration(const FqContextPtr& ctx, int d, const ExponentY& y,
                                     std::int64_t N);

/// Partial enumeration over tuple indices [begin, end); the full sum is the
/// (order-independent) total of any partition of the index space.
TruncatedSeries power_sum_enumeration_range(const FqContextPtr& ctx, int d, const ExponentY& y,
                                            std::int64_t N, std::uint64_t begin,
                                            std::uint64_t end);

/// S_{d,t}(y) as an exact polynomial: (-1)^d times the sum of Lucas
/// multinomials t^(weight) over the carry-free decompositions of m with
/// interior parts positive and divisible by q-1 and (q-1) | (z - m_d).
/// Raises CapExceeded when m has more than unit_cap digit units.
SparsePoly power_sum_combinatorial(const FqContextPtr& ctx, int d, const ExponentY& y,
                                   int unit_cap = kDefaultUnitCap);

/// Dense view of an exact polynomial. With the default precision the result
/// is exact; pass N to truncate. Exponents must fit the dense representation.
TruncatedSeries sparse_to_series(const FqContextPtr& ctx, const SparsePoly& poly,
                                 std::int64_t N = TruncatedSeries::kExact);

struct ValuationResult {
  enum class Kind { Finite, ExactZero, AtLeast } kind;
  mpz_class value;  // Finite: the valuation; AtLeast: the precision bound

  static ValuationResult finite(mpz_class v) { return {Kind::Finite, std::move(v)}; }
  static ValuationResult exact_zero() { return {Kind::ExactZero, 0}; }
  static ValuationResult at_least(mpz_class v) { return {Kind::AtLeast, std::move(v)}; }
  friend bool operator==(const ValuationResult&, const ValuationResult&) = default;
};

enum class ValuationStrategy { Enumeration, Combinatorial };

/// val_t(S_{d,t}(y)). The combinatorial strategy returns the exact minimum
/// exponent or an exact-zero certificate; the enumeration strategy starts at
/// the greedy-predicted valuation + 1 and doubles the precision up to n_max,
/// reporting "at least n_max" if the sum stays zero (never a zero claim).
ValuationResult valuation_of_power_sum(const FqContextPtr& ctx, int d, const ExponentY& y,
                                       ValuationStrategy strategy, std::int64_t n_max = 256,
                                       int unit_cap = kDefaultUnitCap);

}  // namespace gosszeta
