#include "gosszeta/json_io.hpp"

namespace gosszeta {

Json mpz_json(const mpz_class& v) {
  if (v.fits_slong_p()) return v.get_si();
  return v.get_str();
}

Json to_json(const TruncatedSeries& s) {
  Json j;
  j["lead_val"] = s.is_zero() ? Json(nullptr) : Json(s.lead_val());
  j["precision"] = s.is_exact() ? Json(nullptr) : Json(s.precision());
  Json coeffs = Json::array();
  if (!s.is_zero()) {
    const auto& ctx = *s.ctx();
    for (Fq c : s.raw_coeffs()) coeffs.push_back(ctx.coeffs(c));
  }
  j["coeffs"] = std::move(coeffs);
  return j;
}

Json to_json(const SeriesValuation& v) {
  if (v.exact) return Json{{"kind", "exact"}, {"value", v.value}};
  if (v.value >= TruncatedSeries::kExact) return Json{{"kind", "exact_zero"}};
  return Json{{"kind", "at_least"}, {"value", v.value}};
}

Json to_json(const ValuationResult& v) {
  switch (v.kind) {
    case ValuationResult::Kind::Finite:
      return Json{{"kind", "finite"}, {"value", mpz_json(v.value)}};
    case ValuationResult::Kind::ExactZero:
      return Json{{"kind", "exact_zero"}};
    case ValuationResult::Kind::AtLeast:
      return Json{{"kind", "at_least"}, {"value", mpz_json(v.value)}};
  }
  return {};
}

Json to_json(const Decomposition& d) {
  Json parts = Json::array();
  for (const auto& part : d.parts) parts.push_back(mpz_json(part));
  return Json{{"d", d.d}, {"parts", std::move(parts)}, {"weight", mpz_json(d.weight)},
              {"exists", true}};
}

Json decomposition_json(int d, const std::optional<Decomposition>& dec) {
  if (dec) return to_json(*dec);
  return Json{{"d", d}, {"parts", Json::array()}, {"weight", nullptr}, {"exists", false}};
}

Json to_json(const NewtonPolygon& np) {
  Json points = Json::array();
  for (const auto& pt : np.points) points.push_back(Json::array({pt.x, mpz_json(pt.y)}));
  Json segments = Json::array();
  for (const auto& seg : np.segments)
    segments.push_back(Json{{"slope", Json::array({mpz_json(mpz_class(seg.slope.get_num())),
                                                   mpz_json(mpz_class(seg.slope.get_den()))})},
                            {"width", seg.width}});
  return Json{{"points", std::move(points)},
              {"segments", std::move(segments)},
              {"source_degree", np.source_degree},
              {"simple", simplicity_verdict(np).simple}};
}

Json to_json(const LiftedRoot& root) {
  return Json{{"valuation", root.valuation},
              {"series", to_json(root.series)},
              {"residual", to_json(root.residual)},
              {"certified_bound", root.certified_bound},
              {"iterations", root.iterations}};
}

Json to_json(const ZeroReport& report) {
  Json roots = Json::array();
  for (const auto& root : report.roots) roots.push_back(to_json(root));
  return Json{{"roots", std::move(roots)},
              {"simple", report.simple},
              {"precision", report.precision}};
}

Json to_json(const StreamValuationResult& sv) {
  Json j{{"d", sv.d}, {"stabilized", sv.stabilized}, {"depth", sv.depth}};
  j["value"] = sv.value ? mpz_json(*sv.value) : Json(nullptr);
  return j;
}

Json to_json(const RhReport& report) {
  Json j;
  j["verdict"] = report.verdict;
  j["capped"] = report.capped;
  j["failing_stage"] = report.failing_stage;
  j["precision"] = report.precision_used;
  if (report.zeta) {
    const auto& zp = *report.zeta;
    j["degree"] = zp.degree();
    j["degree_bound"] = zp.degree_bound;
    j["certified"] = zp.certified;
    Json vals = Json::array();
    if (zp.certified)
      for (const auto& v : zp.valuations) vals.push_back(mpz_json(v));
    else
      for (const auto& v : zp.valuation_reports) vals.push_back(to_json(v));
    j["valuations"] = std::move(vals);
  }
  if (report.polygon) {
    j["segments"] = to_json(*report.polygon)["segments"];
    j["simple"] = report.simplicity.simple;
  }
  if (report.zeros) {
    Json roots = Json::array();
    for (const auto& root : report.zeros->roots) roots.push_back(to_json(root));
    j["roots"] = std::move(roots);
  }
  j["roots_lifted"] = report.roots_lifted;
  if (!report.lift_skipped_reason.empty()) j["lift_skipped"] = report.lift_skipped_reason;
  if (report.stream_path) {
    Json svs = Json::array();
    for (const auto& sv : report.stream_valuations) svs.push_back(to_json(sv));
    j["stream_valuations"] = std::move(svs);
    j["stabilization_depth"] = report.stabilization_depth;
    if (report.proxy_m) j["proxy_m"] = mpz_json(*report.proxy_m);
  }
  return j;
}

}  // namespace gosszeta
