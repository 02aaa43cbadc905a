#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "gosszeta/fq.hpp"

namespace gosszeta {

/// Base-b digits of k, least significant first, no trailing zeros.
std::vector<std::uint32_t> base_digits(const mpz_class& k, std::uint32_t base);
mpz_class from_digits(const std::vector<std::uint32_t>& digits, std::uint32_t base);
/// Digit sum of k in base b.
std::uint64_t digit_sum(const mpz_class& k, std::uint32_t base);
/// True iff summing the parts produces no base-p carries.
bool carry_free(const std::vector<mpz_class>& parts, std::uint32_t p);
/// Multinomial coefficient (m choose parts) mod p via digit-wise products;
/// nonzero exactly when the parts sum to m without base-p carries.
/// Raises PartsSumMismatch if the parts do not sum to m.
std::uint32_t multinomial_mod_p(const mpz_class& m, const std::vector<mpz_class>& parts,
                                std::uint32_t p);

/// Infinite base-p digit stream: prefix digits, then a repeating pattern.
struct StreamSpec {
  std::vector<std::uint32_t> prefix;
  std::vector<std::uint32_t> pattern;  // nonempty, repeated forever

  std::uint32_t digit(std::size_t i) const {
    return i < prefix.size() ? prefix[i] : pattern[(i - prefix.size()) % pattern.size()];
  }
  /// True when only finitely many digits are nonzero.
  bool eventually_zero() const;
  /// For eventually-zero streams: index one past the last nonzero digit.
  std::size_t support_end() const;
  /// Partial digit sum m_j = sum of digit(i) p^i over i < depth.
  mpz_class truncation(std::size_t depth, std::int64_t p) const;
  std::string to_string() const;
};

/// Exponent y = (z, m): residue class z mod (q-1) plus a p-adic part that is
/// either a finite non-negative integer or a digit stream.
class ExponentY {
 public:
  static ExponentY finite(std::uint64_t z, mpz_class m);
  static ExponentY stream(std::uint64_t z, StreamSpec spec);

  std::uint64_t z() const { return z_; }
  bool is_finite() const { return finite_; }
  const mpz_class& m() const;
  const StreamSpec& stream_spec() const;

 private:
  ExponentY(std::uint64_t z, bool finite, mpz_class m, StreamSpec spec)
      : z_(z), finite_(finite), m_(std::move(m)), spec_(std::move(spec)) {}

  std::uint64_t z_;
  bool finite_;
  mpz_class m_;
  StreamSpec spec_;
};

/// Carry-free decomposition m = m_0 + ... + m_d with its weight sum i*m_i.
struct Decomposition {
  int d = 0;
  std::vector<mpz_class> parts;  // size d+1, parts[i] = m_i
  mpz_class weight;              // sum_{i=1}^{d} i * parts[i]
};

inline constexpr int kDefaultUnitCap = 14;

/// The weight-minimal carry-free decomposition m = m_0 + ... + m_d with
/// (q-1) | m_i > 0 for 0 < i < d and (q-1) | (z - m_d), computed exactly by
/// a DP over residue classes of digit units: parts are placed top-down
/// (d, d-1, ..., 1), each taking the lowest available units of its chosen
/// classes, which is the rearrangement-optimal assignment. For prime q this
/// reproduces the literal take-the-least-each-step procedure; for composite
/// q the blindly least pick can be strictly suboptimal or dead-end, so the
/// DP explores all class signatures. Returns nullopt when no decomposition
/// exists (the valuation is then infinite).
std::optional<Decomposition> greedy_decomposition(const ExponentY& y, int d,
                                                  const FqContextPtr& ctx);

/// Brute-force oracle: enumerates every split of the digit units of m into
/// d+1 parts, filters the residue/positivity constraints and returns a
/// minimum-weight decomposition (ties broken by lexicographic parts).
/// Raises CapExceeded when m has more than `unit_cap` digit units.
std::optional<Decomposition> exhaustive_min_decomposition(const ExponentY& y, int d,
                                                          const FqContextPtr& ctx,
                                                          int unit_cap = kDefaultUnitCap);

/// Closed-form valuation for prime q: infinite iff the digit-unit count is
/// below (p-1)(d-1)+r, otherwise the explicit double sum over the unit
/// exponent sequence. Raises NotPrimeField when n > 1.
std::optional<mpz_class> closed_form_valuation(const ExponentY& y, int d, const FqContextPtr& ctx);

/// Newton polygon slope lambda(d) = v_d - v_{d-1} predicted from the greedy
/// decompositions at d and d-1 alone. nullopt when either is missing.
std::optional<mpz_class> slope_prediction(const ExponentY& y, int d, const FqContextPtr& ctx);

namespace detail {

struct Composition {
  std::vector<std::uint32_t> parts;  // size d+1, sums to the digit value
  std::uint32_t weight_sum;          // sum i * parts[i]
  std::uint32_t lucas;               // multinomial of the digit row mod p
};

/// All ways to write digit value c as an ordered sum of nparts non-negative
/// integers, with the per-row multinomial mod p attached.
std::vector<Composition> compositions_of(std::uint32_t c, int nparts, std::uint32_t p);

/// Guard for the split enumerators: number of leaves = prod C(c_e + d, d).
double estimate_split_leaves(const std::vector<std::uint32_t>& counts, int d);

}  // namespace detail

/// Visits every carry-free ordered split of the base-p digit units of the
/// multiset `counts` (counts[e] copies of p^e) into parts 0..d. The visitor
/// receives the part values, part residues mod Q, the weight sum i*m_i and
/// the multinomial coefficient mod p of the split.
template <class Int, class Visit>
void for_each_carry_free_split(const std::vector<std::uint32_t>& counts, std::uint32_t p,
                               std::uint32_t Q, int d, Visit&& visit) {
  const int nparts = d + 1;
  std::vector<std::vector<detail::Composition>> comp_cache(p);
  struct Pos {
    const std::vector<detail::Composition>* comps;
    Int pe;
    std::uint32_t pe_mod;
  };
  std::vector<Pos> positions;
  {
    Int pe(1);
    std::uint32_t pe_mod = 1 % Q;
    for (std::size_t e = 0; e < counts.size(); ++e) {
      if (counts[e] != 0) {
        auto& cached = comp_cache[counts[e]];
        if (cached.empty()) cached = detail::compositions_of(counts[e], nparts, p);
        positions.push_back(Pos{&cached, pe, pe_mod});
      }
      pe = pe * Int(static_cast<long>(p));
      pe_mod = static_cast<std::uint32_t>((static_cast<std::uint64_t>(pe_mod) * p) % Q);
    }
  }

  std::vector<Int> value(static_cast<std::size_t>(nparts), Int(0));
  std::vector<std::uint32_t> residue(static_cast<std::size_t>(nparts), 0);
  Int weight(0);

  auto rec = [&](auto&& self, std::size_t idx, std::uint32_t lucas) -> void {
    if (idx == positions.size()) {
      visit(static_cast<const std::vector<Int>&>(value),
            static_cast<const std::vector<std::uint32_t>&>(residue),
            static_cast<const Int&>(weight), lucas);
      return;
    }
    const Pos& pos = positions[idx];
    for (const auto& comp : *pos.comps) {
      for (int i = 0; i < nparts; ++i) {
        std::uint32_t a = comp.parts[static_cast<std::size_t>(i)];
        if (a == 0) continue;
        value[static_cast<std::size_t>(i)] += Int(static_cast<long>(a)) * pos.pe;
        residue[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(
            (residue[static_cast<std::size_t>(i)] + static_cast<std::uint64_t>(a) * pos.pe_mod) % Q);
      }
      if (comp.weight_sum != 0) weight += Int(static_cast<long>(comp.weight_sum)) * pos.pe;
      self(self, idx + 1,
           static_cast<std::uint32_t>((static_cast<std::uint64_t>(lucas) * comp.lucas) % p));
      if (comp.weight_sum != 0) weight -= Int(static_cast<long>(comp.weight_sum)) * pos.pe;
      for (int i = 0; i < nparts; ++i) {
        std::uint32_t a = comp.parts[static_cast<std::size_t>(i)];
        if (a == 0) continue;
        value[static_cast<std::size_t>(i)] -= Int(static_cast<long>(a)) * pos.pe;
        residue[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(
            (residue[static_cast<std::size_t>(i)] +
             static_cast<std::uint64_t>(Q) * a - static_cast<std::uint64_t>(a) * pos.pe_mod) %
            Q);
      }
    }
  };
  rec(rec, 0, 1 % p);
}

}  // namespace gosszeta
