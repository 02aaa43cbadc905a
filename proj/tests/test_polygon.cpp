#include "gosszeta/polygon.hpp"

#include <vector>

#include "doctest.h"

using namespace gosszeta;

namespace {

PolygonPoint pt(std::int64_t x, long y) { return PolygonPoint{x, mpz_class(y)}; }

PolygonSegment seg(long num, long den, std::int64_t width) {
  mpq_class s(num, den);
  s.canonicalize();
  return PolygonSegment{s, width};
}

}  // namespace

TEST_CASE("hull examples") {
  // valuations 0, 1, 6 of the F_3 exponent (1, 8) zeta polynomial
  auto np = lower_hull({pt(0, 0), pt(1, 1), pt(2, 6)});
  REQUIRE(np.segments.size() == 2);
  CHECK(np.segments[0] == seg(1, 1, 1));
  CHECK(np.segments[1] == seg(5, 1, 1));
  CHECK(np.source_degree == 2);

  auto flat = lower_hull({pt(0, 0), pt(1, 0)});
  REQUIRE(flat.segments.size() == 1);
  CHECK(flat.segments[0] == seg(0, 1, 1));

  // collinear points merge into one wide segment
  auto wide = lower_hull({pt(0, 0), pt(1, 2), pt(2, 2)});
  REQUIRE(wide.segments.size() == 1);
  CHECK(wide.segments[0] == seg(1, 1, 2));

  CHECK_THROWS_WITH_AS(lower_hull({}), doctest::Contains("EmptyInput"), Error);
  CHECK_THROWS_WITH_AS(lower_hull({pt(1, 0)}), doctest::Contains("BadConfig"), Error);
}

TEST_CASE("fractional slopes stay exact") {
  auto np = lower_hull({pt(0, 0), pt(2, 1)});
  REQUIRE(np.segments.size() == 1);
  CHECK(np.segments[0] == seg(1, 2, 2));
}

TEST_CASE("simplicity verdict") {
  auto simple = simplicity_verdict(lower_hull({pt(0, 0), pt(1, 1), pt(2, 6)}));
  CHECK(simple.simple);
  CHECK(simple.offending.empty());

  auto wide = simplicity_verdict(lower_hull({pt(0, 0), pt(1, 2), pt(2, 2)}));
  CHECK_FALSE(wide.simple);
  REQUIRE(wide.offending.size() == 1);
  CHECK(wide.offending[0].width == 2);

  // a constant polynomial has no segments and is vacuously simple
  auto constant = simplicity_verdict(lower_hull({pt(0, 0)}));
  CHECK(constant.simple);
}

TEST_CASE("root valuations from segments") {
  auto np = lower_hull({pt(0, 0), pt(1, 1), pt(2, 6)});
  auto rv = root_valuations(np);
  REQUIRE(rv.size() == 2);
  CHECK(rv[0].first == mpq_class(-1));
  CHECK(rv[0].second == 1);
  CHECK(rv[1].first == mpq_class(-5));
  CHECK(rv[1].second == 1);

  auto flat = root_valuations(lower_hull({pt(0, 0), pt(1, 0)}));
  REQUIRE(flat.size() == 1);
  CHECK(flat[0].first == 0);
  CHECK(flat[0].second == 1);

  // widths always add up to the degree when the polynomial has a constant term
  auto np2 = lower_hull({pt(0, 0), pt(1, 3), pt(2, 4), pt(3, 9), pt(4, 20)});
  std::int64_t total = 0;
  for (auto& [v, w] : root_valuations(np2)) total += w;
  CHECK(total == np2.source_degree);
}

TEST_CASE("hull is invariant under points strictly above a segment") {
  auto chord = lower_hull({pt(0, 0), pt(2, 6)});
  for (long y = 4; y <= 10; ++y) {
    auto lifted = lower_hull({pt(0, 0), pt(1, y), pt(2, 6)});
    CHECK(lifted.segments == chord.segments);
  }
  // and on the chord itself the point is absorbed into the wide segment
  auto on_chord = lower_hull({pt(0, 0), pt(1, 3), pt(2, 6)});
  CHECK(on_chord.segments == chord.segments);
  // below the chord it becomes a vertex
  auto below = lower_hull({pt(0, 0), pt(1, 2), pt(2, 6)});
  CHECK(below.segments.size() == 2);
}
