#pragma once

#include <cstdint>
#include <vector>

#include <gmpxx.h>

#include "gosszeta/errors.hpp"

namespace gosszeta {

struct PolygonPoint {
  std::int64_t x;   // coefficient index d
  mpz_class y;      // valuation of the coefficient

  friend bool operator==(const PolygonPoint&, const PolygonPoint&) = default;
};

struct PolygonSegment {
  mpq_class slope;      // exact rational, canonicalized
  std::int64_t width;   // horizontal projection, > 0

  friend bool operator==(const PolygonSegment&, const PolygonSegment&) = default;
};

/// Lower convex hull of valuation points, slopes strictly increasing.
struct NewtonPolygon {
  std::vector<PolygonPoint> points;      // the input points, sorted by x
  std::vector<PolygonSegment> segments;  // the hull
  std::int64_t source_degree;            // largest x with a point
};

/// Monotone-chain lower hull over exact integers; zero coefficients simply
/// contribute no point. Requires a point at x = 0 with valuation 0 (the
/// constant coefficient of a zeta polynomial) and raises EmptyInput /
/// BadConfig otherwise. Collinear runs merge into one wide segment.
NewtonPolygon lower_hull(std::vector<PolygonPoint> points);

struct SimplicityReport {
  bool simple;                              // every segment has width 1
  std::vector<PolygonSegment> offending;    // the wide segments, if any
};

SimplicityReport simplicity_verdict(const NewtonPolygon& np);

/// Root valuations read off the hull: a segment of slope s and width w means
/// w roots of t-adic valuation -s.
std::vector<std::pair<mpq_class, std::int64_t>> root_valuations(const NewtonPolygon& np);

}  // namespace gosszeta
