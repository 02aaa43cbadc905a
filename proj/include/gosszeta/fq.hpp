#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "gosszeta/errors.hpp"

namespace gosszeta {

/// Element of F_q in packed form: the index sum c_i p^i of its coordinate
/// vector (c_0, ..., c_{n-1}) in the power basis of the modulus root.
/// Index order is also the canonical enumeration order of the field.
using Fq = std::uint32_t;

class FqContext;
using FqContextPtr = std::shared_ptr<const FqContext>;

/// The field F_q, q = p^n, modeled as F_p[x] / (monic irreducible of degree n).
///
/// Construction validates primality of p and irreducibility of the modulus
/// (trial division by every monic polynomial of degree <= n/2). Instances are
/// immutable after construction and safe to share across threads.
class FqContext {
 public:
  /// When `modulus` is omitted the lexicographically least monic irreducible
  /// of degree n over F_p is selected (least on the coefficient vector
  /// (c_0, ..., c_{n-1}), constant coefficient most significant last).
  static FqContextPtr make(std::int64_t p, int n,
                           std::optional<std::vector<std::int64_t>> modulus = std::nullopt);

  std::int64_t p() const { return p_; }
  int n() const { return n_; }
  std::int64_t q() const { return q_; }
  /// q - 1, the order of the unit group.
  std::int64_t unit_order() const { return q_ - 1; }
  /// Monic modulus, n+1 residues mod p, constant term first.
  const std::vector<std::int64_t>& modulus() const { return modulus_; }

  Fq zero() const { return 0; }
  Fq one() const { return 1; }

  Fq add(Fq a, Fq b) const {
    return tables_ ? add_tab_[static_cast<std::size_t>(a) * q_ + b] : add_slow(a, b);
  }
  Fq sub(Fq a, Fq b) const { return add(a, neg(b)); }
  Fq neg(Fq a) const { return tables_ ? neg_tab_[a] : neg_slow(a); }
  Fq mul(Fq a, Fq b) const {
    return tables_ ? mul_tab_[static_cast<std::size_t>(a) * q_ + b] : mul_slow(a, b);
  }
  Fq inv(Fq a) const;

  /// base^e with e reduced mod q-1 for nonzero base; negative e inverts.
  /// 0^0 = 1, 0^e = 0 for e > 0, 0^e with e < 0 raises DivisionByZero.
  Fq pow(Fq base, const mpz_class& e) const;
  Fq pow_u(Fq base, std::uint64_t e) const;

  /// Embed an integer into the prime subfield.
  Fq from_int(std::int64_t v) const;
  Fq from_coeffs(const std::vector<std::int64_t>& c) const;
  std::vector<std::int64_t> coeffs(Fq a) const;
  /// index-th element in enumeration order; validates the range.
  Fq element(std::int64_t index) const;

  /// Literal sum of x^h over every element (or over the units only).
  /// The closed form (0 / -1 by divisibility of h) lives in the test oracles,
  /// not here.
  Fq power_sum(const mpz_class& h, bool nonzero_only) const;

  FqContext(const FqContext&) = delete;
  FqContext& operator=(const FqContext&) = delete;

 private:
  FqContext(std::int64_t p, int n, std::vector<std::int64_t> modulus);

  Fq add_slow(Fq a, Fq b) const;
  Fq neg_slow(Fq a) const;
  Fq mul_slow(Fq a, Fq b) const;
  void build_tables();

  std::int64_t p_;
  int n_;
  std::int64_t q_;
  std::vector<std::int64_t> modulus_;

  bool tables_ = false;
  std::vector<Fq> add_tab_;
  std::vector<Fq> mul_tab_;
  std::vector<Fq> neg_tab_;
  std::vector<Fq> inv_tab_;
};

}  // namespace gosszeta
