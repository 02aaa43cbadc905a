#pragma once

#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "gosszeta/fq.hpp"

namespace gosszeta {

/// Valuation of a truncated series: either the exact t-adic valuation, or the
/// statement "at least `value`" when the series is zero modulo t^value.
struct SeriesValuation {
  bool exact;
  std::int64_t value;

  friend bool operator==(const SeriesValuation&, const SeriesValuation&) = default;
};

/// Element of F_q((t)) known modulo t^precision.
///
/// A nonzero value stores coefficients from its true leading exponent
/// (lead_val, possibly negative) up to the precision bound; the leading
/// coefficient is nonzero. A value that is zero modulo t^precision stores no
/// coefficients. Precision propagates pessimistically through arithmetic and
/// is never extended. Exact polynomials use precision() == kExact.
class TruncatedSeries {
 public:
  static constexpr std::int64_t kExact = INT64_C(1) << 60;

  static TruncatedSeries zero(FqContextPtr ctx, std::int64_t precision);
  static TruncatedSeries one(FqContextPtr ctx, std::int64_t precision = kExact);
  static TruncatedSeries monomial(FqContextPtr ctx, Fq c, std::int64_t exponent,
                                  std::int64_t precision = kExact);
  /// Normalizes: strips leading zeros, detects zero-mod-t^N.
  static TruncatedSeries from_coeffs(FqContextPtr ctx, std::int64_t lead,
                                     std::vector<Fq> coeffs, std::int64_t precision);

  const FqContextPtr& ctx() const { return ctx_; }
  bool is_zero() const { return zero_; }
  std::int64_t lead_val() const;
  std::int64_t precision() const { return prec_; }
  bool is_exact() const { return prec_ == kExact; }
  /// lead_val if nonzero, otherwise the precision bound.
  std::int64_t val_lower_bound() const { return zero_ ? prec_ : lead_; }
  SeriesValuation valuation() const;

  /// Coefficient of t^e; zero below the lead, rejects e at or past precision.
  Fq coeff(std::int64_t e) const;
  const std::vector<Fq>& raw_coeffs() const { return coeffs_; }

  TruncatedSeries truncated(std::int64_t precision) const;
  TruncatedSeries shifted(std::int64_t k) const;  // multiply by t^k

  friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b);
  friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b);
  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);
  TruncatedSeries operator-() const;
  TruncatedSeries scaled(Fq c) const;

  bool same_value_as(const TruncatedSeries& other) const;  // identical value and precision

 private:
  TruncatedSeries(FqContextPtr ctx, bool zero, std::int64_t lead, std::int64_t prec,
                  std::vector<Fq> coeffs)
      : ctx_(std::move(ctx)), zero_(zero), lead_(lead), prec_(prec), coeffs_(std::move(coeffs)) {}

  FqContextPtr ctx_;
  bool zero_;
  std::int64_t lead_;  // meaningful only when !zero_
  std::int64_t prec_;
  std::vector<Fq> coeffs_;  // coeffs_[i] is the coefficient of t^(lead_+i)
};

/// Multiplicative inverse. `rel_digits` bounds the relative precision of the
/// result and is required for exact inputs (the inverse of a polynomial is
/// not a polynomial). Raises InvertZero on zero-mod-t^N input.
TruncatedSeries inverse(const TruncatedSeries& a, std::int64_t rel_digits = -1);

/// a^e mod t^N for a one-unit a (lead_val 0, constant term 1); e >= 0 of
/// arbitrary size. Binary exponentiation, O(log e) multiplications.
TruncatedSeries pow_one_unit(const TruncatedSeries& a, const mpz_class& e, std::int64_t N);

}  // namespace gosszeta
