#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gosszeta/polygon.hpp"
#include "gosszeta/powersum.hpp"

namespace gosszeta {

/// zeta_t(x, y) = sum_d S_{d,t}(y) x^d as a polynomial in x over F_q[t].
struct ZetaPolynomial {
  FqContextPtr ctx;
  std::uint64_t z = 0;
  mpz_class m;
  std::int64_t degree_bound = 0;    // floor(l_q(m) / (q-1)) + 1

  bool certified = true;            // exact combinatorial route
  bool vanishing_witnessed = false; // coefficient past the bound checked zero
  std::vector<SparsePoly> coeffs;   // certified route: exact, index d = 0..degree
  std::vector<mpz_class> valuations;
  std::vector<bool> enumeration_checked;

  // enumeration fallback (certified = false): coefficients mod t^N only
  std::vector<TruncatedSeries> coeff_series;
  std::vector<ValuationResult> valuation_reports;

  int degree() const {
    return static_cast<int>((certified ? coeffs.size() : coeff_series.size())) - 1;
  }
  /// Coefficient d as a series (exact on the certified route).
  TruncatedSeries coefficient(int d) const;
};

struct ZetaOptions {
  int unit_cap = kDefaultUnitCap;
  /// Per-coefficient budget for the literal-enumeration cross-check
  /// (estimated as tuples * bits(m) * N^2 field operations).
  double enum_check_budget = 4e7;
  /// Precision for the enumeration fallback when the combinatorial route is
  /// over cap.
  std::int64_t fallback_precision = 128;
  bool allow_enumeration_fallback = true;
};

/// Assemble the zeta polynomial: exact coefficients for d up to the vanishing
/// bound, trailing exact zeros trimmed, the coefficient past the bound
/// verified zero, and each valuation cross-checked against the greedy weight.
ZetaPolynomial zeta_polynomial(const FqContextPtr& ctx, const ExponentY& y,
                               const ZetaOptions& opts = {});

/// Newton polygon of the zeta polynomial (certified route only).
NewtonPolygon polygon_of(const ZetaPolynomial& zp);

struct StreamValuationResult {
  int d = 0;
  bool stabilized = false;
  /// Stabilized weight; nullopt with stabilized=true means certified
  /// infinite (only possible for eventually-zero digit streams).
  std::optional<mpz_class> value;
  int depth = 0;  // depth at which stabilization was witnessed, or deepest tried
};

/// Valuations v_d for a p-adic digit-stream exponent, by running the greedy
/// weight on successive truncations until two consecutive depths agree and
/// the decomposition no longer draws on the highest truncated digit.
std::vector<StreamValuationResult> stabilized_valuations(const FqContextPtr& ctx, std::uint64_t z,
                                                         const StreamSpec& spec, int d_max,
                                                         int max_depth = 32);

struct LiftedRoot {
  std::int64_t valuation;
  TruncatedSeries series;        // truncated to the report precision
  SeriesValuation residual;      // valuation of P at the reported series
  std::int64_t certified_bound;  // residual is certified >= this
  int iterations;
};

struct ZeroReport {
  std::vector<LiftedRoot> roots;  // ascending valuation
  bool simple;
  std::int64_t precision;
};

/// Newton-lift one root per width-1 polygon segment, starting from
/// -S_{d-1}/S_d. Residuals are certified through the truncated-series
/// precision tracking: a root is accepted once val(P(x)) >= precision +
/// val(P'(x)). Raises WidthNotOne on wide segments and
/// HenselConditionFailed if an iteration leaves the quadratic basin.
/// With segment_limit >= 0 only the first segment_limit segments are lifted
/// (the stream path verifies the stabilized polygon prefix this way).
ZeroReport find_roots(const ZetaPolynomial& zp, std::int64_t target_precision,
                      int segment_limit = -1);

struct RhOptions {
  int d_max = 4;               // stream-path depth
  std::int64_t precision = 0;  // 0 selects max(64, 4 * max slope + 16)
  int unit_cap = kDefaultUnitCap;
  int stream_unit_cap = 40;    // proxy truncations carry more digit units
  int max_stream_depth = 32;
  std::int64_t lift_cap = 1 << 14;  // largest |root valuation| lifted densely
  double enum_check_budget = 4e7;
};

struct RhReport {
  bool verdict = false;
  bool capped = false;        // verification stopped by a resource cap
  std::string failing_stage;  // empty when the verdict is true

  std::optional<ZetaPolynomial> zeta;
  std::optional<NewtonPolygon> polygon;
  SimplicityReport simplicity{true, {}};
  std::optional<ZeroReport> zeros;
  bool roots_lifted = false;
  std::string lift_skipped_reason;
  std::int64_t precision_used = 0;

  // stream path
  bool stream_path = false;
  std::vector<StreamValuationResult> stream_valuations;
  std::optional<mpz_class> proxy_m;  // stabilized truncation driving the lift
  int stabilization_depth = 0;
};

/// Full pipeline: zeta polynomial (or stabilized valuations for streams) ->
/// polygon -> simplicity -> root lifting -> substitution residuals.
RhReport verify_rh(const FqContextPtr& ctx, const ExponentY& y, const RhOptions& opts = {});

}  // namespace gosszeta
