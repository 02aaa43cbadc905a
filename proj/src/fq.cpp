#include "gosszeta/fq.hpp"

#include <algorithm>
#include <string>

namespace gosszeta {

namespace {

constexpr std::int64_t kMaxQ = 1 << 16;   // larger fields are out of scope
constexpr std::int64_t kTableLimit = 256;  // q*q lookup tables below this

bool is_prime(std::int64_t v) {
  if (v < 2) return false;
  for (std::int64_t d = 2; d * d <= v; ++d)
    if (v % d == 0) return false;
  return true;
}

// Dense polynomials over F_p, constant term first.
using Poly = std::vector<std::int64_t>;

// Remainder of a by b (b monic), in place on a copy.
Poly poly_rem(Poly a, const Poly& b, std::int64_t p) {
  const std::size_t db = b.size() - 1;
  while (a.size() > db) {
    std::int64_t c = a.back();
    if (c != 0) {
      std::size_t off = a.size() - 1 - db;
      for (std::size_t j = 0; j < db; ++j) a[off + j] = ((a[off + j] - c * b[j]) % p + p) % p;
    }
    a.pop_back();
  }
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

bool is_irreducible(const Poly& m, std::int64_t p) {
  const int n = static_cast<int>(m.size()) - 1;
  if (n < 1) return false;
  if (m[0] == 0 && n > 1) return false;  // divisible by x
  // Trial division by every monic polynomial of degree 1..n/2.
  for (int k = 1; 2 * k <= n; ++k) {
    std::int64_t count = 1;
    for (int i = 0; i < k; ++i) count *= p;
    for (std::int64_t v = 0; v < count; ++v) {
      Poly div(static_cast<std::size_t>(k) + 1, 0);
      std::int64_t t = v;
      for (int i = 0; i < k; ++i) {
        div[i] = t % p;
        t /= p;
      }
      div[k] = 1;
      if (poly_rem(m, div, p).empty()) return false;
    }
  }
  return true;
}

Poly default_modulus(std::int64_t p, int n) {
  std::int64_t count = 1;
  for (int i = 0; i < n; ++i) count *= p;
  for (std::int64_t v = 0; v < count; ++v) {
    Poly m(static_cast<std::size_t>(n) + 1, 0);
    std::int64_t t = v;
    for (int i = 0; i < n; ++i) {
      m[i] = t % p;
      t /= p;
    }
    m[n] = 1;
    if (is_irreducible(m, p)) return m;
  }
  fail(Errc::ReducibleModulus, "no irreducible polynomial found (unreachable)");
}

}  // namespace

FqContextPtr FqContext::make(std::int64_t p, int n, std::optional<std::vector<std::int64_t>> modulus) {
  if (!is_prime(p)) fail(Errc::NotPrime, "p = " + std::to_string(p) + " is not prime");
  if (n < 1) fail(Errc::DegreeMismatch, "extension degree must be >= 1");
  std::int64_t q = 1;
  for (int i = 0; i < n; ++i) {
    q *= p;
    if (q > kMaxQ) fail(Errc::BadConfig, "q = p^n exceeds the supported bound 2^16");
  }

  Poly m;
  if (modulus) {
    m = *modulus;
    if (static_cast<int>(m.size()) != n + 1)
      fail(Errc::DegreeMismatch, "modulus must have n+1 coefficients");
    for (auto& c : m) c = ((c % p) + p) % p;
    if (m[n] != 1) fail(Errc::DegreeMismatch, "modulus must be monic");
    if (!is_irreducible(m, p))
      fail(Errc::ReducibleModulus, "modulus is reducible over F_p");
  } else {
    m = default_modulus(p, n);
  }
  return FqContextPtr(new FqContext(p, n, std::move(m)));
}

FqContext::FqContext(std::int64_t p, int n, std::vector<std::int64_t> modulus)
    : p_(p), n_(n), modulus_(std::move(modulus)) {
  q_ = 1;
  for (int i = 0; i < n_; ++i) q_ *= p_;
  if (q_ <= kTableLimit) build_tables();
}

Fq FqContext::add_slow(Fq a, Fq b) const {
  Fq r = 0, mult = 1;
  for (int i = 0; i < n_; ++i) {
    std::int64_t da = a % p_, db = b % p_;
    a /= static_cast<Fq>(p_);
    b /= static_cast<Fq>(p_);
    r += static_cast<Fq>((da + db) % p_) * mult;
    mult *= static_cast<Fq>(p_);
  }
  return r;
}

Fq FqContext::neg_slow(Fq a) const {
  Fq r = 0, mult = 1;
  for (int i = 0; i < n_; ++i) {
    std::int64_t da = a % p_;
    a /= static_cast<Fq>(p_);
    r += static_cast<Fq>((p_ - da) % p_) * mult;
    mult *= static_cast<Fq>(p_);
  }
  return r;
}

Fq FqContext::mul_slow(Fq a, Fq b) const {
  std::vector<std::int64_t> da(n_), db(n_), prod(2 * n_ - 1, 0);
  for (int i = 0; i < n_; ++i) {
    da[i] = a % p_;
    a /= static_cast<Fq>(p_);
    db[i] = b % p_;
    b /= static_cast<Fq>(p_);
  }
  for (int i = 0; i < n_; ++i) {
    if (da[i] == 0) continue;
    for (int j = 0; j < n_; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p_;
  }
  for (int i = 2 * n_ - 2; i >= n_; --i) {
    std::int64_t c = prod[i];
    if (c == 0) continue;
    prod[i] = 0;
    for (int j = 0; j < n_; ++j)
      prod[i - n_ + j] = ((prod[i - n_ + j] - c * modulus_[j]) % p_ + p_) % p_;
  }
  Fq r = 0, mult = 1;
  for (int i = 0; i < n_; ++i) {
    r += static_cast<Fq>(prod[i]) * mult;
    mult *= static_cast<Fq>(p_);
  }
  return r;
}

void FqContext::build_tables() {
  const std::size_t q = static_cast<std::size_t>(q_);
  add_tab_.resize(q * q);
  mul_tab_.resize(q * q);
  neg_tab_.resize(q);
  inv_tab_.assign(q, 0);
  for (std::size_t a = 0; a < q; ++a) {
    neg_tab_[a] = neg_slow(static_cast<Fq>(a));
    for (std::size_t b = 0; b < q; ++b) {
      add_tab_[a * q + b] = add_slow(static_cast<Fq>(a), static_cast<Fq>(b));
      Fq m = mul_slow(static_cast<Fq>(a), static_cast<Fq>(b));
      mul_tab_[a * q + b] = m;
      if (m == 1) inv_tab_[a] = static_cast<Fq>(b);
    }
  }
  tables_ = true;
}

Fq FqContext::inv(Fq a) const {
  if (a == 0) fail(Errc::DivisionByZero, "inverse of zero");
  if (tables_) return inv_tab_[a];
  return pow_u(a, static_cast<std::uint64_t>(q_ - 2));
}

Fq FqContext::pow_u(Fq base, std::uint64_t e) const {
  if (base == 0) return e == 0 ? one() : zero();
  e %= static_cast<std::uint64_t>(q_ - 1);
  Fq r = 1, b = base;
  while (e) {
    if (e & 1) r = mul(r, b);
    b = mul(b, b);
    e >>= 1;
  }
  return r;
}

Fq FqContext::pow(Fq base, const mpz_class& e) const {
  if (base == 0) {
    if (e == 0) return one();
    if (e < 0) fail(Errc::DivisionByZero, "negative power of zero");
    return zero();
  }
  mpz_class r = e % (q_ - 1);  // sign of remainder follows e
  if (r < 0) r += q_ - 1;
  return pow_u(base, r.get_ui());
}

Fq FqContext::from_int(std::int64_t v) const {
  return static_cast<Fq>(((v % p_) + p_) % p_);
}

Fq FqContext::from_coeffs(const std::vector<std::int64_t>& c) const {
  if (static_cast<int>(c.size()) != n_)
    fail(Errc::DegreeMismatch, "coefficient vector must have length n");
  Fq r = 0, mult = 1;
  for (int i = 0; i < n_; ++i) {
    r += static_cast<Fq>(((c[i] % p_) + p_) % p_) * mult;
    mult *= static_cast<Fq>(p_);
  }
  return r;
}

std::vector<std::int64_t> FqContext::coeffs(Fq a) const {
  std::vector<std::int64_t> c(n_);
  for (int i = 0; i < n_; ++i) {
    c[i] = a % p_;
    a /= static_cast<Fq>(p_);
  }
  return c;
}

Fq FqContext::element(std::int64_t index) const {
  if (index < 0 || index >= q_) fail(Errc::BadConfig, "element index out of range");
  return static_cast<Fq>(index);
}

Fq FqContext::power_sum(const mpz_class& h, bool nonzero_only) const {
  Fq acc = 0;
  for (std::int64_t i = nonzero_only ? 1 : 0; i < q_; ++i)
    acc = add(acc, pow(static_cast<Fq>(i), h));
  return acc;
}

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::NotPrime: return "NotPrime";
    case Errc::ReducibleModulus: return "ReducibleModulus";
    case Errc::DegreeMismatch: return "DegreeMismatch";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::InvertZero: return "InvertZero";
    case Errc::NotOneUnit: return "NotOneUnit";
    case Errc::PartsSumMismatch: return "PartsSumMismatch";
    case Errc::CapExceeded: return "CapExceeded";
    case Errc::NotPrimeField: return "NotPrimeField";
    case Errc::PadicStreamNotFinite: return "PadicStreamNotFinite";
    case Errc::EmptyInput: return "EmptyInput";
    case Errc::WidthNotOne: return "WidthNotOne";
    case Errc::HenselConditionFailed: return "HenselConditionFailed";
    case Errc::NotStabilized: return "NotStabilized";
    case Errc::BadConfig: return "BadConfig";
  }
  return "Unknown";
}

}  // namespace gosszeta
