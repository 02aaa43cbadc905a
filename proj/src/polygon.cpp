#include "gosszeta/polygon.hpp"

#include <algorithm>

namespace gosszeta {

NewtonPolygon lower_hull(std::vector<PolygonPoint> points) {
  if (points.empty()) fail(Errc::EmptyInput, "no polygon points");
  std::sort(points.begin(), points.end(),
            [](const PolygonPoint& a, const PolygonPoint& b) { return a.x < b.x; });
  for (std::size_t i = 1; i < points.size(); ++i)
    if (points[i].x == points[i - 1].x) fail(Errc::BadConfig, "duplicate polygon x");
  if (points.front().x != 0 || points.front().y != 0)
    fail(Errc::BadConfig, "polygon requires the point (0, 0)");

  // Andrew monotone chain, lower hull only. cross <= 0 drops clockwise turns
  // and collinear middles, leaving strictly increasing slopes.
  std::vector<const PolygonPoint*> hull;
  for (const auto& pt : points) {
    while (hull.size() >= 2) {
      const PolygonPoint& a = *hull[hull.size() - 2];
      const PolygonPoint& b = *hull[hull.size() - 1];
      mpz_class cross = (b.x - a.x) * (pt.y - a.y) - (b.y - a.y) * (pt.x - a.x);
      if (cross <= 0)
        hull.pop_back();
      else
        break;
    }
    hull.push_back(&pt);
  }

  NewtonPolygon np;
  np.source_degree = points.back().x;
  for (std::size_t i = 1; i < hull.size(); ++i) {
    mpq_class slope(hull[i]->y - hull[i - 1]->y, hull[i]->x - hull[i - 1]->x);
    slope.canonicalize();
    np.segments.push_back(PolygonSegment{std::move(slope), hull[i]->x - hull[i - 1]->x});
  }
  np.points = std::move(points);
  return np;
}

SimplicityReport simplicity_verdict(const NewtonPolygon& np) {
  SimplicityReport report{true, {}};
  for (const auto& seg : np.segments)
    if (seg.width != 1) {
      report.simple = false;
      report.offending.push_back(seg);
    }
  return report;
}

std::vector<std::pair<mpq_class, std::int64_t>> root_valuations(const NewtonPolygon& np) {
  std::vector<std::pair<mpq_class, std::int64_t>> out;
  out.reserve(np.segments.size());
  for (const auto& seg : np.segments) out.emplace_back(-seg.slope, seg.width);
  return out;
}

}  // namespace gosszeta
