#include "gosszeta/digits.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>

namespace gosszeta {

namespace {

// x^(p-2) mod p
std::uint64_t inv_mod_p(std::uint64_t x, std::uint64_t p) {
  std::uint64_t r = 1, b = x % p, e = p - 2;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

// multinomial (c choose a_0,...,a_k) mod p for c < p
std::uint32_t row_multinomial_mod_p(std::uint32_t c, const std::vector<std::uint32_t>& parts,
                                    std::uint32_t p) {
  std::vector<std::uint64_t> fact(c + 1);
  fact[0] = 1;
  for (std::uint32_t i = 1; i <= c; ++i) fact[i] = fact[i - 1] * i % p;
  std::uint64_t r = fact[c];
  for (std::uint32_t a : parts)
    if (a) r = r * inv_mod_p(fact[a], p) % p;
  return static_cast<std::uint32_t>(r);
}

mpz_class pow_p(std::uint64_t p, std::uint64_t e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), p, e);
  return r;
}

struct DecompositionProblem {
  std::uint64_t p;
  std::uint32_t Q;  // q - 1
  std::uint32_t r;  // z mod Q
};

DecompositionProblem problem_of(const ExponentY& y, const FqContextPtr& ctx) {
  auto Q = static_cast<std::uint32_t>(ctx->unit_order());
  return DecompositionProblem{static_cast<std::uint64_t>(ctx->p()), Q,
                              static_cast<std::uint32_t>(y.z() % Q)};
}

// The residue mod Q of a p-power unit depends only on its exponent mod n
// (p^n = q = 1 mod Q), so unit selections can be organized by residue class:
// a part is described by its "signature", the number of units it takes from
// each class. Two facts drive the minimization:
//   - every part i >= 1 of the weight-minimal decomposition has at most Q
//     units (a longer part contains a proper nonempty zero-sum subsequence
//     by the prefix-sum pigeonhole in Z/Q, and moving that subsequence to
//     m_0 strictly lowers the weight);
//   - for a fixed choice of signatures the cheapest unit assignment pairs
//     larger weight coefficients with smaller units (rearrangement), so
//     processing parts d, d-1, ..., 1 and handing each the lowest remaining
//     units of its classes is optimal.
// The exact minimum is then a DP over (units taken per class, parts placed).
struct ClassView {
  int nclasses;
  std::uint32_t Q;
  std::vector<std::uint32_t> class_residue;               // p^j mod Q
  std::vector<std::vector<std::size_t>> class_exponents;  // ascending, with multiplicity
  std::vector<std::vector<mpz_class>> prefix_value;       // sum of the s lowest units

  ClassView(const std::vector<std::uint32_t>& counts, const DecompositionProblem& pb, int n)
      : nclasses(n), Q(pb.Q) {
    class_residue.resize(static_cast<std::size_t>(n));
    std::uint64_t r = 1 % Q;
    for (int j = 0; j < n; ++j) {
      class_residue[static_cast<std::size_t>(j)] = static_cast<std::uint32_t>(r);
      r = r * (pb.p % Q) % Q;
    }
    class_exponents.assign(static_cast<std::size_t>(n), {});
    for (std::size_t e = 0; e < counts.size(); ++e)
      for (std::uint32_t i = 0; i < counts[e]; ++i)
        class_exponents[e % static_cast<std::size_t>(n)].push_back(e);
    prefix_value.assign(static_cast<std::size_t>(n), {});
    for (int j = 0; j < n; ++j) {
      auto& pv = prefix_value[static_cast<std::size_t>(j)];
      pv.emplace_back(0);
      for (std::size_t e : class_exponents[static_cast<std::size_t>(j)])
        pv.push_back(pv.back() + pow_p(pb.p, e));
    }
  }

  std::uint32_t signature_residue(const std::vector<std::uint32_t>& sig) const {
    std::uint64_t r = 0;
    for (int j = 0; j < nclasses; ++j)
      r += static_cast<std::uint64_t>(sig[static_cast<std::size_t>(j)]) *
           class_residue[static_cast<std::size_t>(j)];
    return static_cast<std::uint32_t>(r % Q);
  }

  /// Signatures with 1..Q units (plus the empty one when allow_empty) whose
  /// residue is `target`.
  std::vector<std::vector<std::uint32_t>> signatures_with_residue(std::uint32_t target,
                                                                  bool allow_empty) const {
    std::vector<std::vector<std::uint32_t>> out;
    std::vector<std::uint32_t> sig(static_cast<std::size_t>(nclasses), 0);
    auto rec = [&](auto&& self, int j, std::uint32_t used) -> void {
      if (j == nclasses) {
        if ((used > 0 || allow_empty) && signature_residue(sig) == target) out.push_back(sig);
        return;
      }
      std::uint32_t cap = std::min(
          static_cast<std::uint32_t>(class_exponents[static_cast<std::size_t>(j)].size()),
          Q - used);
      for (std::uint32_t u = 0; u <= cap; ++u) {
        sig[static_cast<std::size_t>(j)] = u;
        self(self, j + 1, used + u);
      }
      sig[static_cast<std::size_t>(j)] = 0;
    };
    rec(rec, 0, 0);
    return out;
  }
};

struct DecompositionSearch {
  const ClassView& cv;
  const DecompositionProblem& pb;
  int d;

  struct Node {
    mpz_class cost;
    std::vector<std::uint32_t> taken_before;  // state in the previous layer
    std::vector<std::uint32_t> sig;           // signature chosen for this part
  };
  // One layer per part, keyed by cumulative units taken per class.
  std::vector<std::map<std::vector<std::uint32_t>, Node>> layers;

  std::optional<Decomposition> run() {
    layers.assign(static_cast<std::size_t>(d) + 1, {});
    std::vector<std::uint32_t> start(static_cast<std::size_t>(cv.nclasses), 0);
    layers[static_cast<std::size_t>(d)].emplace(
        start, Node{mpz_class(0), {}, {}});
    for (int i = d; i >= 1; --i) {
      auto sigs = cv.signatures_with_residue(i == d ? pb.r : 0,
                                             /*allow_empty=*/i == d && pb.r == 0);
      auto& cur = layers[static_cast<std::size_t>(i)];
      auto& next = layers[static_cast<std::size_t>(i - 1)];
      for (const auto& [taken, node] : cur) {
        for (const auto& sig : sigs) {
          bool fits = true;
          for (int j = 0; j < cv.nclasses && fits; ++j)
            fits = taken[static_cast<std::size_t>(j)] + sig[static_cast<std::size_t>(j)] <=
                   cv.class_exponents[static_cast<std::size_t>(j)].size();
          if (!fits) continue;
          mpz_class cost = node.cost;
          std::vector<std::uint32_t> ntaken = taken;
          for (int j = 0; j < cv.nclasses; ++j) {
            auto uj = static_cast<std::size_t>(j);
            if (sig[uj] == 0) continue;
            cost += i * (cv.prefix_value[uj][taken[uj] + sig[uj]] -
                         cv.prefix_value[uj][taken[uj]]);
            ntaken[uj] += sig[uj];
          }
          auto it = next.find(ntaken);
          if (it == next.end())
            next.emplace(std::move(ntaken), Node{std::move(cost), taken, sig});
          else if (cost < it->second.cost)
            it->second = Node{std::move(cost), taken, sig};
        }
      }
    }
    const auto& last = layers[0];
    if (last.empty()) return std::nullopt;
    auto best = last.begin();
    for (auto it = std::next(last.begin()); it != last.end(); ++it)
      if (it->second.cost < best->second.cost) best = it;

    // walk back, handing each part the lowest remaining units per class
    Decomposition out;
    out.d = d;
    out.parts.assign(static_cast<std::size_t>(d) + 1, 0);
    out.weight = best->second.cost;
    const std::vector<std::uint32_t>* state = &best->first;
    const Node* node = &best->second;
    for (int i = 1; i <= d; ++i) {
      mpz_class value = 0;
      for (int j = 0; j < cv.nclasses; ++j) {
        auto uj = static_cast<std::size_t>(j);
        std::uint32_t before = node->taken_before[uj];
        for (std::uint32_t s = 0; s < node->sig[uj]; ++s)
          value += pow_p(pb.p, cv.class_exponents[uj][before + s]);
      }
      out.parts[static_cast<std::size_t>(i)] = value;
      state = &node->taken_before;
      if (i < d) node = &layers[static_cast<std::size_t>(i)].at(*state);
    }
    // m_0 takes whatever is left
    mpz_class rest = 0;
    for (int j = 0; j < cv.nclasses; ++j) {
      auto uj = static_cast<std::size_t>(j);
      const auto& taken_total = best->first[uj];
      for (std::size_t s = taken_total; s < cv.class_exponents[uj].size(); ++s)
        rest += pow_p(pb.p, cv.class_exponents[uj][s]);
    }
    out.parts[0] = rest;
    return out;
  }
};

template <class Int>
std::optional<Decomposition> exhaustive_impl(const std::vector<std::uint32_t>& counts,
                                             const DecompositionProblem& pb, int d) {
  bool found = false;
  Int best_weight(0);
  std::vector<Int> best_parts;
  for_each_carry_free_split<Int>(
      counts, static_cast<std::uint32_t>(pb.p), pb.Q, d,
      [&](const std::vector<Int>& value, const std::vector<std::uint32_t>& residue,
          const Int& weight, std::uint32_t) {
        for (int i = 1; i < d; ++i) {
          const auto ui = static_cast<std::size_t>(i);
          if (residue[ui] != 0 || value[ui] == 0) return;
        }
        if (residue[static_cast<std::size_t>(d)] != pb.r) return;
        if (!found || weight < best_weight ||
            (weight == best_weight &&
             std::lexicographical_compare(value.begin(), value.end(), best_parts.begin(),
                                          best_parts.end()))) {
          found = true;
          best_weight = weight;
          best_parts = value;
        }
      });
  if (!found) return std::nullopt;
  Decomposition out;
  out.d = d;
  out.parts.reserve(best_parts.size());
  for (const auto& v : best_parts) out.parts.emplace_back(v);
  out.weight = mpz_class(best_weight);
  return out;
}

}  // namespace

std::vector<std::uint32_t> base_digits(const mpz_class& k, std::uint32_t base) {
  if (base < 2) fail(Errc::BadConfig, "digit base must be >= 2");
  if (k < 0) fail(Errc::BadConfig, "digits of a negative integer");
  std::vector<std::uint32_t> out;
  mpz_class cur = k;
  while (cur != 0) {
    out.push_back(static_cast<std::uint32_t>(
        mpz_fdiv_q_ui(cur.get_mpz_t(), cur.get_mpz_t(), base)));
  }
  return out;
}

mpz_class from_digits(const std::vector<std::uint32_t>& digits, std::uint32_t base) {
  mpz_class v = 0;
  for (std::size_t i = digits.size(); i-- > 0;) {
    v *= base;
    v += digits[i];
  }
  return v;
}

std::uint64_t digit_sum(const mpz_class& k, std::uint32_t base) {
  std::uint64_t s = 0;
  for (auto dgt : base_digits(k, base)) s += dgt;
  return s;
}

bool carry_free(const std::vector<mpz_class>& parts, std::uint32_t p) {
  std::vector<std::uint64_t> col;
  for (const auto& part : parts) {
    auto digits = base_digits(part, p);
    if (digits.size() > col.size()) col.resize(digits.size(), 0);
    for (std::size_t i = 0; i < digits.size(); ++i) col[i] += digits[i];
  }
  return std::all_of(col.begin(), col.end(), [&](std::uint64_t c) { return c < p; });
}

std::uint32_t multinomial_mod_p(const mpz_class& m, const std::vector<mpz_class>& parts,
                                std::uint32_t p) {
  mpz_class total = 0;
  for (const auto& part : parts) total += part;
  if (total != m) fail(Errc::PartsSumMismatch, "parts do not sum to m");
  auto mdig = base_digits(m, p);
  std::vector<std::vector<std::uint32_t>> pdig;
  pdig.reserve(parts.size());
  for (const auto& part : parts) pdig.push_back(base_digits(part, p));
  std::uint64_t result = 1;
  for (std::size_t e = 0; e < mdig.size(); ++e) {
    std::vector<std::uint32_t> row;
    std::uint64_t rowsum = 0;
    for (const auto& dgt : pdig) {
      std::uint32_t v = e < dgt.size() ? dgt[e] : 0;
      row.push_back(v);
      rowsum += v;
    }
    if (rowsum != mdig[e]) return 0;  // base-p carries kill the coefficient (Lucas)
    result = result * row_multinomial_mod_p(mdig[e], row, p) % p;
  }
  return static_cast<std::uint32_t>(result);
}

bool StreamSpec::eventually_zero() const {
  return std::all_of(pattern.begin(), pattern.end(), [](std::uint32_t d) { return d == 0; });
}

std::size_t StreamSpec::support_end() const {
  std::size_t end = 0;
  for (std::size_t i = 0; i < prefix.size(); ++i)
    if (prefix[i] != 0) end = i + 1;
  return end;
}

mpz_class StreamSpec::truncation(std::size_t depth, std::int64_t p) const {
  mpz_class v = 0;
  for (std::size_t i = depth; i-- > 0;) {
    std::uint32_t dgt = digit(i);
    if (dgt >= static_cast<std::uint64_t>(p)) fail(Errc::BadConfig, "stream digit >= p");
    v *= static_cast<unsigned long>(p);
    v += dgt;
  }
  return v;
}

std::string StreamSpec::to_string() const {
  auto join = [](const std::vector<std::uint32_t>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(v[i]);
    }
    return s;
  };
  std::string s;
  if (!prefix.empty()) s += "prefix:" + join(prefix) + ";";
  s += "repeat:" + join(pattern);
  return s;
}

ExponentY ExponentY::finite(std::uint64_t z, mpz_class m) {
  if (m < 0) fail(Errc::BadConfig, "p-adic part must be non-negative");
  return ExponentY(z, true, std::move(m), {});
}

ExponentY ExponentY::stream(std::uint64_t z, StreamSpec spec) {
  if (spec.pattern.empty()) fail(Errc::BadConfig, "stream pattern must be nonempty");
  return ExponentY(z, false, 0, std::move(spec));
}

const mpz_class& ExponentY::m() const {
  if (!finite_) fail(Errc::PadicStreamNotFinite, "finite p-adic part required");
  return m_;
}

const StreamSpec& ExponentY::stream_spec() const {
  if (finite_) fail(Errc::BadConfig, "exponent has a finite p-adic part");
  return spec_;
}

namespace detail {

std::vector<Composition> compositions_of(std::uint32_t c, int nparts, std::uint32_t p) {
  std::vector<Composition> out;
  std::vector<std::uint32_t> cur(static_cast<std::size_t>(nparts), 0);
  auto rec = [&](auto&& self, int idx, std::uint32_t left) -> void {
    if (idx == nparts - 1) {
      cur[static_cast<std::size_t>(idx)] = left;
      std::uint32_t wsum = 0;
      for (int i = 1; i < nparts; ++i)
        wsum += static_cast<std::uint32_t>(i) * cur[static_cast<std::size_t>(i)];
      out.push_back(Composition{cur, wsum, row_multinomial_mod_p(c, cur, p)});
      return;
    }
    for (std::uint32_t u = 0; u <= left; ++u) {
      cur[static_cast<std::size_t>(idx)] = u;
      self(self, idx + 1, left - u);
    }
    cur[static_cast<std::size_t>(idx)] = 0;
  };
  rec(rec, 0, c);
  return out;
}

double estimate_split_leaves(const std::vector<std::uint32_t>& counts, int d) {
  double total = 1.0;
  for (std::uint32_t c : counts) {
    if (c == 0) continue;
    double ways = 1.0;  // C(c + d, d)
    for (std::uint32_t i = 1; i <= c; ++i) ways = ways * (d + i) / i;
    total *= ways;
  }
  return total;
}

}  // namespace detail

std::optional<Decomposition> greedy_decomposition(const ExponentY& y, int d,
                                                  const FqContextPtr& ctx) {
  if (d < 0) fail(Errc::BadConfig, "d must be >= 0");
  const mpz_class& m = y.m();
  if (d == 0) return Decomposition{0, {m}, 0};
  auto pb = problem_of(y, ctx);
  auto counts = base_digits(m, static_cast<std::uint32_t>(pb.p));
  ClassView cv(counts, pb, ctx->n());
  DecompositionSearch search{cv, pb, d, {}};
  return search.run();
}

std::optional<Decomposition> exhaustive_min_decomposition(const ExponentY& y, int d,
                                                          const FqContextPtr& ctx, int unit_cap) {
  if (d < 0) fail(Errc::BadConfig, "d must be >= 0");
  const mpz_class& m = y.m();
  if (d == 0) return Decomposition{0, {m}, 0};
  auto pb = problem_of(y, ctx);
  auto counts = base_digits(m, static_cast<std::uint32_t>(pb.p));
  std::uint64_t units = 0;
  for (auto c : counts) units += c;
  if (units > static_cast<std::uint64_t>(unit_cap))
    fail(Errc::CapExceeded, "digit-unit count " + std::to_string(units) + " exceeds cap " +
                                std::to_string(unit_cap));
  if (detail::estimate_split_leaves(counts, d) > 4e9)
    fail(Errc::CapExceeded, "split enumeration too large");

  // weight <= d * m; stay in int64 when that certainly fits
  if (mpz_sizeinbase(m.get_mpz_t(), 2) <= 55 && d <= 64)
    return exhaustive_impl<std::int64_t>(counts, pb, d);
  return exhaustive_impl<mpz_class>(counts, pb, d);
}

std::optional<mpz_class> closed_form_valuation(const ExponentY& y, int d,
                                               const FqContextPtr& ctx) {
  if (ctx->n() != 1) fail(Errc::NotPrimeField, "closed form requires prime q");
  if (d < 0) fail(Errc::BadConfig, "d must be >= 0");
  const mpz_class& m = y.m();
  if (d == 0) return mpz_class(0);
  const auto p = static_cast<std::uint64_t>(ctx->p());
  const auto Q = static_cast<std::uint32_t>(p - 1);
  const auto r = static_cast<std::uint32_t>(y.z() % std::max<std::uint32_t>(Q, 1));

  // unit exponent sequence e_1 <= e_2 <= ..., each value at most p-1 times
  std::vector<std::uint64_t> e_seq;
  auto counts = base_digits(m, static_cast<std::uint32_t>(p));
  for (std::size_t e = 0; e < counts.size(); ++e)
    for (std::uint32_t i = 0; i < counts[e]; ++i) e_seq.push_back(e);

  const std::uint64_t ell = e_seq.size();
  const std::uint64_t need = static_cast<std::uint64_t>(p - 1) * (d - 1) + r;
  if (ell < need) return std::nullopt;

  mpz_class weight = 0;
  for (std::uint32_t i = 0; i < r; ++i) weight += d * pow_p(p, e_seq[i]);
  for (int j = 1; j <= d - 1; ++j) {
    std::uint64_t base = static_cast<std::uint64_t>(d - 1 - j) * (p - 1) + r;
    for (std::uint64_t i = 1; i <= p - 1; ++i) weight += j * pow_p(p, e_seq[base + i - 1]);
  }
  return weight;
}

std::optional<mpz_class> slope_prediction(const ExponentY& y, int d, const FqContextPtr& ctx) {
  if (d < 1) fail(Errc::BadConfig, "slopes are defined for d >= 1");
  auto cur = greedy_decomposition(y, d, ctx);
  auto prev = greedy_decomposition(y, d - 1, ctx);
  if (!cur || !prev) return std::nullopt;
  mpz_class lambda = cur->parts[1];
  for (int u = 1; u <= d - 1; ++u) lambda += prev->parts[static_cast<std::size_t>(u)];
  return lambda;
}

}  // namespace gosszeta
