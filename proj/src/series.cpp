#include "gosszeta/series.hpp"

#include <algorithm>

namespace gosszeta {

namespace {

// precision + valuation shift, saturating at kExact
std::int64_t add_prec(std::int64_t prec, std::int64_t shift) {
  return prec >= TruncatedSeries::kExact ? TruncatedSeries::kExact : prec + shift;
}

void check_same_ctx(const TruncatedSeries& a, const TruncatedSeries& b) {
  if (a.ctx().get() != b.ctx().get()) fail(Errc::BadConfig, "mixed field contexts");
}

}  // namespace

TruncatedSeries TruncatedSeries::zero(FqContextPtr ctx, std::int64_t precision) {
  return TruncatedSeries(std::move(ctx), true, 0, precision, {});
}

TruncatedSeries TruncatedSeries::one(FqContextPtr ctx, std::int64_t precision) {
  return monomial(std::move(ctx), 1, 0, precision);
}

TruncatedSeries TruncatedSeries::monomial(FqContextPtr ctx, Fq c, std::int64_t exponent,
                                          std::int64_t precision) {
  return from_coeffs(std::move(ctx), exponent, {c}, precision);
}

TruncatedSeries TruncatedSeries::from_coeffs(FqContextPtr ctx, std::int64_t lead,
                                             std::vector<Fq> coeffs, std::int64_t precision) {
  // drop entries at or past the precision bound
  if (precision < kExact && lead + static_cast<std::int64_t>(coeffs.size()) > precision)
    coeffs.resize(precision > lead ? static_cast<std::size_t>(precision - lead) : 0);
  // strip leading zeros
  std::size_t first = 0;
  while (first < coeffs.size() && coeffs[first] == 0) ++first;
  if (first == coeffs.size()) return zero(std::move(ctx), precision);
  lead += static_cast<std::int64_t>(first);
  coeffs.erase(coeffs.begin(), coeffs.begin() + static_cast<std::ptrdiff_t>(first));
  while (!coeffs.empty() && coeffs.back() == 0) coeffs.pop_back();
  return TruncatedSeries(std::move(ctx), false, lead, precision, std::move(coeffs));
}

std::int64_t TruncatedSeries::lead_val() const {
  if (zero_) fail(Errc::BadConfig, "lead_val of a series that is zero mod t^N");
  return lead_;
}

SeriesValuation TruncatedSeries::valuation() const {
  return zero_ ? SeriesValuation{false, prec_} : SeriesValuation{true, lead_};
}

Fq TruncatedSeries::coeff(std::int64_t e) const {
  if (e >= prec_) fail(Errc::BadConfig, "coefficient requested at or beyond precision");
  if (zero_ || e < lead_) return 0;
  std::int64_t i = e - lead_;
  if (i >= static_cast<std::int64_t>(coeffs_.size())) return 0;
  return coeffs_[static_cast<std::size_t>(i)];
}

TruncatedSeries TruncatedSeries::truncated(std::int64_t precision) const {
  std::int64_t np = std::min(prec_, precision);
  if (zero_) return zero(ctx_, np);
  return from_coeffs(ctx_, lead_, coeffs_, np);
}

TruncatedSeries TruncatedSeries::shifted(std::int64_t k) const {
  if (zero_) return zero(ctx_, add_prec(prec_, k));
  return TruncatedSeries(ctx_, false, lead_ + k, add_prec(prec_, k), coeffs_);
}

TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
  check_same_ctx(a, b);
  const auto& ctx = *a.ctx();
  std::int64_t prec = std::min(a.prec_, b.prec_);
  if (a.zero_ && b.zero_) return TruncatedSeries::zero(a.ctx_, prec);
  if (a.zero_) return b.truncated(prec);
  if (b.zero_) return a.truncated(prec);
  std::int64_t lead = std::min(a.lead_, b.lead_);
  std::int64_t hi = std::max(a.lead_ + static_cast<std::int64_t>(a.coeffs_.size()),
                             b.lead_ + static_cast<std::int64_t>(b.coeffs_.size()));
  hi = std::min(hi, prec);
  if (hi <= lead) return TruncatedSeries::zero(a.ctx_, prec);
  std::vector<Fq> out(static_cast<std::size_t>(hi - lead), 0);
  auto accumulate = [&](const TruncatedSeries& s) {
    for (std::size_t i = 0; i < s.coeffs_.size(); ++i) {
      std::int64_t e = s.lead_ + static_cast<std::int64_t>(i);
      if (e >= hi) break;
      auto& slot = out[static_cast<std::size_t>(e - lead)];
      slot = ctx.add(slot, s.coeffs_[i]);
    }
  };
  accumulate(a);
  accumulate(b);
  return TruncatedSeries::from_coeffs(a.ctx_, lead, std::move(out), prec);
}

TruncatedSeries TruncatedSeries::operator-() const {
  if (zero_) return *this;
  std::vector<Fq> out(coeffs_.size());
  for (std::size_t i = 0; i < coeffs_.size(); ++i) out[i] = ctx_->neg(coeffs_[i]);
  return TruncatedSeries(ctx_, false, lead_, prec_, std::move(out));
}

TruncatedSeries TruncatedSeries::scaled(Fq c) const {
  if (zero_) return *this;
  if (c == 0) return zero(ctx_, prec_);
  std::vector<Fq> out(coeffs_.size());
  for (std::size_t i = 0; i < coeffs_.size(); ++i) out[i] = ctx_->mul(coeffs_[i], c);
  return TruncatedSeries(ctx_, false, lead_, prec_, std::move(out));
}

TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) { return a + (-b); }

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
  check_same_ctx(a, b);
  std::int64_t prec = std::min(add_prec(a.prec_, b.val_lower_bound()),
                               add_prec(b.prec_, a.val_lower_bound()));
  if (a.zero_ || b.zero_) return TruncatedSeries::zero(a.ctx_, prec);
  const auto& ctx = *a.ctx();
  std::int64_t lead = a.lead_ + b.lead_;
  std::int64_t len = static_cast<std::int64_t>(a.coeffs_.size() + b.coeffs_.size()) - 1;
  if (prec < TruncatedSeries::kExact) len = std::min(len, prec - lead);
  std::vector<Fq> out(static_cast<std::size_t>(len), 0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (static_cast<std::int64_t>(i) >= len) break;
    Fq ai = a.coeffs_[i];
    if (ai == 0) continue;
    std::size_t jmax = std::min(b.coeffs_.size(), static_cast<std::size_t>(len) - i);
    for (std::size_t j = 0; j < jmax; ++j) {
      if (b.coeffs_[j] == 0) continue;
      auto& slot = out[i + j];
      slot = ctx.add(slot, ctx.mul(ai, b.coeffs_[j]));
    }
  }
  return TruncatedSeries::from_coeffs(a.ctx_, lead, std::move(out), prec);
}

bool TruncatedSeries::same_value_as(const TruncatedSeries& other) const {
  if (zero_ != other.zero_ || prec_ != other.prec_) return false;
  if (zero_) return true;
  return lead_ == other.lead_ && coeffs_ == other.coeffs_;
}

TruncatedSeries inverse(const TruncatedSeries& a, std::int64_t rel_digits) {
  if (a.is_zero()) fail(Errc::InvertZero, "inverse of a series that is zero mod t^N");
  std::int64_t lead = a.lead_val();
  // the inverse of an exact monomial is an exact monomial
  if (a.is_exact() && a.raw_coeffs().size() == 1)
    return TruncatedSeries::monomial(a.ctx(), a.ctx()->inv(a.coeff(lead)), -lead);
  std::int64_t rel = a.is_exact() ? -1 : a.precision() - lead;
  if (rel_digits >= 0) rel = rel < 0 ? rel_digits : std::min(rel, rel_digits);
  if (rel < 0)
    fail(Errc::BadConfig, "inverse of an exact polynomial needs an explicit precision");
  const auto& ctx = *a.ctx();
  std::size_t len = static_cast<std::size_t>(rel);
  std::vector<Fq> out(len, 0);
  if (len > 0) {
    Fq c0inv = ctx.inv(a.coeff(lead));
    out[0] = c0inv;
    for (std::size_t k = 1; k < len; ++k) {
      Fq acc = 0;
      std::size_t jmax = std::min(k, a.raw_coeffs().size() - 1);
      for (std::size_t j = 1; j <= jmax; ++j)
        acc = ctx.add(acc, ctx.mul(a.raw_coeffs()[j], out[k - j]));
      out[k] = ctx.neg(ctx.mul(c0inv, acc));
    }
  }
  return TruncatedSeries::from_coeffs(a.ctx(), -lead, std::move(out), -lead + rel);
}

TruncatedSeries pow_one_unit(const TruncatedSeries& a, const mpz_class& e, std::int64_t N) {
  if (a.is_zero() || a.lead_val() != 0 || a.coeff(0) != 1)
    fail(Errc::NotOneUnit, "base must have valuation 0 and constant term 1");
  if (e < 0) fail(Errc::BadConfig, "negative exponent for one-unit power");
  std::int64_t prec = std::min(a.precision(), N);
  TruncatedSeries base = a.truncated(prec);
  TruncatedSeries result = TruncatedSeries::one(a.ctx(), prec);
  if (e == 0) return result;
  std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = result * result;
    if (mpz_tstbit(e.get_mpz_t(), static_cast<mp_bitcnt_t>(i))) result = result * base;
  }
  return result;
}

}  // namespace gosszeta
