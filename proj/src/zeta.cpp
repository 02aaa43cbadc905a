#include "gosszeta/zeta.hpp"

#include <algorithm>
#include <string>

namespace gosszeta {

namespace {

double enumeration_work_estimate(const FqContextPtr& ctx, int d, const mpz_class& m,
                                 std::int64_t N) {
  double tuples = static_cast<double>(ctx->q() - 1);
  for (int i = 1; i < d; ++i) tuples *= static_cast<double>(ctx->q());
  double bits = static_cast<double>(std::max<std::size_t>(1, mpz_sizeinbase(m.get_mpz_t(), 2)));
  return tuples * bits * static_cast<double>(N) * static_cast<double>(N);
}

TruncatedSeries eval_poly(const std::vector<TruncatedSeries>& coeffs, const TruncatedSeries& x) {
  auto acc = coeffs.back();
  for (std::size_t i = coeffs.size() - 1; i-- > 0;) acc = acc * x + coeffs[i];
  return acc;
}

}  // namespace

TruncatedSeries ZetaPolynomial::coefficient(int d) const {
  if (d < 0 || d > degree()) fail(Errc::BadConfig, "coefficient index out of range");
  if (certified) return sparse_to_series(ctx, coeffs[static_cast<std::size_t>(d)]);
  return coeff_series[static_cast<std::size_t>(d)];
}

ZetaPolynomial zeta_polynomial(const FqContextPtr& ctx, const ExponentY& y,
                               const ZetaOptions& opts) {
  const mpz_class& m = y.m();
  ZetaPolynomial zp;
  zp.ctx = ctx;
  zp.z = y.z();
  zp.m = m;
  const std::uint64_t lq = digit_sum(m, static_cast<std::uint32_t>(ctx->q()));
  zp.degree_bound =
      static_cast<std::int64_t>(lq / static_cast<std::uint64_t>(ctx->unit_order())) + 1;

  try {
    for (int d = 0; d <= zp.degree_bound; ++d)
      zp.coeffs.push_back(power_sum_combinatorial(ctx, d, y, opts.unit_cap));
    // witness the vanishing bound just past the edge when that is cheap
    auto counts = base_digits(m, static_cast<std::uint32_t>(ctx->p()));
    if (detail::estimate_split_leaves(counts, static_cast<int>(zp.degree_bound) + 1) <= 2e7) {
      if (!power_sum_combinatorial(ctx, static_cast<int>(zp.degree_bound) + 1, y, opts.unit_cap)
               .zero())
        fail(Errc::BadConfig, "vanishing bound violated (internal)");
      zp.vanishing_witnessed = true;
    }
  } catch (const Error& e) {
    if (e.code() != Errc::CapExceeded || !opts.allow_enumeration_fallback) throw;
    // fallback: coefficients known only mod t^N, valuations flagged
    zp.certified = false;
    zp.coeffs.clear();
    for (int d = 0; d <= zp.degree_bound; ++d) {
      auto res = power_sum_enumeration(ctx, d, y, opts.fallback_precision);
      auto v = res.series.valuation();
      zp.valuation_reports.push_back(v.exact ? ValuationResult::finite(v.value)
                                             : ValuationResult::at_least(v.value));
      zp.coeff_series.push_back(std::move(res.series));
    }
    while (!zp.coeff_series.empty() && zp.coeff_series.back().is_zero()) {
      zp.coeff_series.pop_back();
      zp.valuation_reports.pop_back();
    }
    return zp;
  }

  while (!zp.coeffs.empty() && zp.coeffs.back().zero()) zp.coeffs.pop_back();
  if (zp.coeffs.empty() || zp.coeffs.front().terms !=
                               std::vector<std::pair<mpz_class, std::uint32_t>>{{mpz_class(0), 1}})
    fail(Errc::BadConfig, "constant zeta coefficient is not 1 (internal)");

  for (int d = 0; d <= zp.degree(); ++d) {
    const auto& poly = zp.coeffs[static_cast<std::size_t>(d)];
    if (poly.zero()) fail(Errc::BadConfig, "interior zero zeta coefficient (internal)");
    zp.valuations.push_back(poly.min_exponent());
    // dual-route check: the bottom exponent must be the greedy weight
    auto g = greedy_decomposition(y, d, ctx);
    if (!g || g->weight != poly.min_exponent())
      fail(Errc::BadConfig, "coefficient valuation disagrees with the greedy weight (internal)");
  }

  // literal-enumeration cross-check where it is cheap
  zp.enumeration_checked.assign(static_cast<std::size_t>(zp.degree()) + 1, false);
  for (int d = 0; d <= zp.degree(); ++d) {
    const auto& v = zp.valuations[static_cast<std::size_t>(d)];
    if (!v.fits_slong_p()) continue;
    std::int64_t N = v.get_si() + 2;
    if (enumeration_work_estimate(ctx, d, m, N) > opts.enum_check_budget) continue;
    if (!enumeration_tuple_count(ctx, d).fits_ulong_p()) continue;
    auto en = power_sum_enumeration(ctx, d, y, N);
    if (!en.series.same_value_as(
            sparse_to_series(ctx, zp.coeffs[static_cast<std::size_t>(d)], N)))
      fail(Errc::BadConfig, "enumeration cross-check failed (internal)");
    zp.enumeration_checked[static_cast<std::size_t>(d)] = true;
  }
  return zp;
}

NewtonPolygon polygon_of(const ZetaPolynomial& zp) {
  if (!zp.certified)
    fail(Errc::CapExceeded, "polygon requires certified coefficient valuations");
  std::vector<PolygonPoint> points;
  for (int d = 0; d <= zp.degree(); ++d)
    points.push_back(PolygonPoint{d, zp.valuations[static_cast<std::size_t>(d)]});
  return lower_hull(std::move(points));
}

std::vector<StreamValuationResult> stabilized_valuations(const FqContextPtr& ctx, std::uint64_t z,
                                                         const StreamSpec& spec, int d_max,
                                                         int max_depth) {
  if (spec.pattern.empty()) fail(Errc::BadConfig, "stream pattern must be nonempty");
  if (d_max < 0 || max_depth < 1) fail(Errc::BadConfig, "bad stream bounds");
  const auto p = ctx->p();
  std::vector<StreamValuationResult> out;
  for (int d = 0; d <= d_max; ++d) {
    if (d == 0) {
      out.push_back(StreamValuationResult{0, true, mpz_class(0), 0});
      continue;
    }
    StreamValuationResult res{d, false, std::nullopt, max_depth};
    bool have_prev = false;
    std::optional<mpz_class> prev;
    for (int j = 1; j <= max_depth; ++j) {
      mpz_class mj = spec.truncation(static_cast<std::size_t>(j), p);
      if (mj == 0) continue;
      auto g = greedy_decomposition(ExponentY::finite(z, mj), d, ctx);
      std::optional<mpz_class> cur = g ? std::optional<mpz_class>(g->weight) : std::nullopt;
      if (have_prev && cur == prev) {
        if (g) {
          // the constrained parts must not use the top truncated digit
          bool top_used = false;
          for (int i = 1; i <= d && !top_used; ++i) {
            auto digits = base_digits(g->parts[static_cast<std::size_t>(i)],
                                      static_cast<std::uint32_t>(p));
            top_used = digits.size() >= static_cast<std::size_t>(j) && digits[j - 1] != 0;
          }
          if (!top_used) {
            res.stabilized = true;
            res.value = cur;
            res.depth = j;
            break;
          }
        } else if (spec.eventually_zero() &&
                   static_cast<std::size_t>(j) > spec.support_end()) {
          // the multiset stops growing, so "no decomposition" is final
          res.stabilized = true;
          res.value = std::nullopt;
          res.depth = j;
          break;
        }
      }
      have_prev = true;
      prev = std::move(cur);
    }
    out.push_back(std::move(res));
  }
  return out;
}

namespace {

struct LiftWork {
  std::vector<TruncatedSeries> poly;   // coefficients of P, exact
  std::vector<TruncatedSeries> deriv;  // coefficients of P'
};

std::optional<LiftedRoot> try_lift(const LiftWork& work, int seg_d, std::int64_t lambda,
                                   std::int64_t target, std::int64_t rel) {
  const std::int64_t x_prec = -lambda + rel;
  auto x = -(work.poly[static_cast<std::size_t>(seg_d - 1)] *
             inverse(work.poly[static_cast<std::size_t>(seg_d)], rel));
  if (!x.is_exact()) x = x.truncated(x_prec);
  std::optional<std::int64_t> prev_gain;
  for (int iter = 0; iter < 80; ++iter) {
    auto value = eval_poly(work.poly, x);
    auto slope = eval_poly(work.deriv, x);
    if (slope.is_zero()) return std::nullopt;  // not enough working precision
    const std::int64_t cert = target + slope.lead_val();
    if (value.valuation().value >= cert) {
      // an exactly representable root is reported exactly
      auto root = x.is_exact() ? x : x.truncated(target);
      auto residual = eval_poly(work.poly, root).valuation();
      if (residual.value < cert) return std::nullopt;
      return LiftedRoot{-lambda, std::move(root), residual, cert, iter};
    }
    auto delta = value * inverse(slope, rel);
    std::int64_t gain = delta.val_lower_bound() + lambda;
    if (gain < 1)
      fail(Errc::HenselConditionFailed,
           "initial approximation falls outside the quadratic basin (gain " +
               std::to_string(gain) + " at segment d=" + std::to_string(seg_d) + ")");
    if (prev_gain && gain <= *prev_gain) return std::nullopt;  // stalled: retry wider
    prev_gain = gain;
    x = (x - delta).truncated(x_prec);
  }
  return std::nullopt;
}

}  // namespace

ZeroReport find_roots(const ZetaPolynomial& zp, std::int64_t target_precision,
                      int segment_limit) {
  if (!zp.certified) fail(Errc::CapExceeded, "root lifting needs certified coefficients");
  auto np = polygon_of(zp);
  auto simp = simplicity_verdict(np);
  if (!simp.simple)
    fail(Errc::WidthNotOne, "polygon has a segment of width > 1; roots are not separated");

  ZeroReport report{{}, true, target_precision};
  if (zp.degree() < 1) return report;

  LiftWork work;
  for (int d = 0; d <= zp.degree(); ++d) work.poly.push_back(zp.coefficient(d));
  for (int d = 1; d <= zp.degree(); ++d)
    work.deriv.push_back(
        work.poly[static_cast<std::size_t>(d)].scaled(zp.ctx->from_int(d)));

  std::size_t limit = segment_limit < 0
                          ? np.segments.size()
                          : std::min(np.segments.size(), static_cast<std::size_t>(segment_limit));
  for (std::size_t k = 0; k < limit; ++k) {
    const auto& seg = np.segments[k];
    mpz_class slope_num(seg.slope.get_num());
    if (seg.slope.get_den() != 1 || !slope_num.fits_slong_p())
      fail(Errc::CapExceeded, "segment slope out of range for dense lifting");
    std::int64_t lambda = slope_num.get_si();
    if (target_precision + 3 * std::llabs(lambda) + 64 > (INT64_C(1) << 22))
      fail(Errc::CapExceeded, "root lifting working precision too large");
    int seg_d = static_cast<int>(k) + 1;  // widths are all 1

    std::optional<LiftedRoot> lifted;
    for (int attempt = 0; attempt < 3 && !lifted; ++attempt) {
      std::int64_t rel = (target_precision + 2 * std::max<std::int64_t>(lambda, 0) + 48)
                         << attempt;
      lifted = try_lift(work, seg_d, lambda, target_precision, rel);
    }
    if (!lifted)
      fail(Errc::HenselConditionFailed,
           "no certified residual after precision retries (segment d=" + std::to_string(seg_d) +
               ")");
    report.roots.push_back(std::move(*lifted));
  }
  std::sort(report.roots.begin(), report.roots.end(),
            [](const LiftedRoot& a, const LiftedRoot& b) { return a.valuation < b.valuation; });
  return report;
}

namespace {

void finite_rh(const FqContextPtr& ctx, const ExponentY& y, const RhOptions& opts,
               RhReport& rep) {
  ZetaOptions zopts;
  zopts.unit_cap = opts.unit_cap;
  zopts.enum_check_budget = opts.enum_check_budget;
  auto zp = zeta_polynomial(ctx, y, zopts);
  rep.zeta = zp;
  if (!zp.certified) {
    rep.verdict = false;
    rep.capped = true;
    rep.failing_stage = "coefficient certification (unit cap exceeded)";
    return;
  }
  rep.polygon = polygon_of(zp);
  rep.simplicity = simplicity_verdict(*rep.polygon);
  if (!rep.simplicity.simple) {
    rep.verdict = false;
    rep.failing_stage = "polygon simplicity";
    return;
  }

  std::int64_t lambda_max = 0;
  for (const auto& seg : rep.polygon->segments) {
    mpz_class num(seg.slope.get_num());
    if (!num.fits_slong_p()) {
      rep.lift_skipped_reason = "slope exceeds the dense lifting cap";
      rep.verdict = false;
      rep.capped = true;
      rep.failing_stage = "root lifting skipped (cap)";
      return;
    }
    lambda_max = std::max(lambda_max, num.get_si());
  }
  rep.precision_used =
      opts.precision > 0 ? opts.precision : std::max<std::int64_t>(64, 4 * lambda_max + 16);
  if (lambda_max > opts.lift_cap) {
    rep.lift_skipped_reason = "slope exceeds the dense lifting cap";
    rep.verdict = false;
    rep.capped = true;
    rep.failing_stage = "root lifting skipped (cap)";
    return;
  }

  auto zeros = find_roots(zp, rep.precision_used);
  rep.zeros = zeros;
  rep.roots_lifted = true;
  bool ok = static_cast<int>(zeros.roots.size()) == zp.degree();
  for (std::size_t i = 0; ok && i < zeros.roots.size(); ++i) {
    const auto& root = zeros.roots[i];
    ok = root.residual.value >= root.certified_bound;
    if (i > 0) ok = ok && zeros.roots[i - 1].valuation != root.valuation;
  }
  rep.verdict = ok;
  if (!ok) rep.failing_stage = "root verification";
}

}  // namespace

RhReport verify_rh(const FqContextPtr& ctx, const ExponentY& y, const RhOptions& opts) {
  RhReport rep;
  if (y.is_finite()) {
    finite_rh(ctx, y, opts, rep);
    return rep;
  }

  rep.stream_path = true;
  const auto& spec = y.stream_spec();
  rep.stream_valuations =
      stabilized_valuations(ctx, y.z(), spec, opts.d_max, opts.max_stream_depth);
  for (const auto& sv : rep.stream_valuations)
    if (!sv.stabilized) {
      rep.verdict = false;
      rep.failing_stage = "stabilization (d=" + std::to_string(sv.d) + " not stabilized within " +
                          std::to_string(opts.max_stream_depth) + " digits)";
      return rep;
    }

  // polygon over the stabilized prefix (finite values form a prefix)
  std::vector<PolygonPoint> points;
  for (const auto& sv : rep.stream_valuations) {
    if (!sv.value) break;
    points.push_back(PolygonPoint{sv.d, *sv.value});
    rep.stabilization_depth = std::max(rep.stabilization_depth, sv.depth);
  }
  rep.polygon = lower_hull(std::move(points));
  rep.simplicity = simplicity_verdict(*rep.polygon);
  if (!rep.simplicity.simple) {
    rep.verdict = false;
    rep.failing_stage = "polygon simplicity";
    return rep;
  }

  // proxy instance: the deepest witnessing truncation reproduces every v_d
  mpz_class proxy = spec.truncation(static_cast<std::size_t>(rep.stabilization_depth), ctx->p());
  rep.proxy_m = proxy;
  for (const auto& sv : rep.stream_valuations) {
    auto g = greedy_decomposition(ExponentY::finite(y.z(), proxy), sv.d, ctx);
    bool match = sv.value ? (g && g->weight == *sv.value) : !g;
    if (!match) {
      rep.verdict = false;
      rep.failing_stage = "stabilization proxy mismatch (internal)";
      return rep;
    }
  }

  std::int64_t lambda_max = 0;
  bool slopes_fit = true;
  for (const auto& seg : rep.polygon->segments) {
    mpz_class num(seg.slope.get_num());
    if (!num.fits_slong_p()) {
      slopes_fit = false;
      break;
    }
    lambda_max = std::max(lambda_max, num.get_si());
  }
  rep.precision_used =
      opts.precision > 0 ? opts.precision : std::max<std::int64_t>(64, 4 * lambda_max + 16);

  if (!slopes_fit || lambda_max > opts.lift_cap) {
    rep.lift_skipped_reason = "stabilized slopes exceed the dense lifting cap";
    rep.verdict = true;  // polygon-level verdict; roots not representable densely
    return rep;
  }
  {
    // the proxy polynomial is only worth assembling when its exact
    // coefficient enumeration is small
    auto counts = base_digits(proxy, static_cast<std::uint32_t>(ctx->p()));
    auto bound = static_cast<int>(digit_sum(proxy, static_cast<std::uint32_t>(ctx->q())) /
                                  static_cast<std::uint64_t>(ctx->unit_order())) +
                 1;
    double total = 0;
    bool feasible = true;
    for (int d = 0; d <= bound && feasible; ++d) {
      double est = detail::estimate_split_leaves(counts, d);
      total += est;
      feasible = est <= 3e7 && total <= 1e8;
    }
    if (!feasible) {
      rep.lift_skipped_reason = "proxy coefficient enumeration exceeds the lifting budget";
      rep.verdict = true;
      return rep;
    }
  }
  try {
    ZetaOptions zopts;
    zopts.unit_cap = opts.stream_unit_cap;
    zopts.enum_check_budget = opts.enum_check_budget;
    zopts.allow_enumeration_fallback = false;
    auto zp = zeta_polynomial(ctx, ExponentY::finite(y.z(), proxy), zopts);
    // lift the segments the stream polygon certifies (the proxy polynomial
    // may continue past d_max with much steeper slopes)
    auto segment_count = static_cast<int>(rep.polygon->segments.size());
    auto zeros = find_roots(zp, rep.precision_used, segment_count);
    bool ok = static_cast<int>(zeros.roots.size()) == segment_count;
    for (std::size_t i = 0; ok && i < zeros.roots.size(); ++i) {
      const auto& root = zeros.roots[i];
      ok = root.residual.value >= root.certified_bound;
      if (i > 0) ok = ok && zeros.roots[i - 1].valuation != root.valuation;
    }
    rep.zeta = std::move(zp);
    rep.zeros = std::move(zeros);
    rep.roots_lifted = true;
    rep.verdict = ok;
    if (!ok) rep.failing_stage = "root verification";
  } catch (const Error& e) {
    if (e.code() != Errc::CapExceeded && e.code() != Errc::WidthNotOne) throw;
    rep.lift_skipped_reason = e.what();
    rep.verdict = true;  // polygon-level verdict stands
  }
  return rep;
}

}  // namespace gosszeta
