#include <doctest.h>

#include "hq/error.hpp"
#include "hq/universal.hpp"

using namespace hq;

TEST_CASE("intersection numbers of a configuration") {
  UniversalConfig c{SurfaceId::parse("P2"), {{2}, {3}}, {{1}}, {}};
  const auto x = intersection_numbers(c);
  // c1X^2, c1X.c1V, c1V^2, c2V, c1X.c1L, c1L^2, c2L, c1V.c1L with c1(V) = -5H.
  CHECK(x == IntersectionNumbers{9, -15, 25, 6, 3, 1, 0, -5});
}

TEST_CASE("quot-count shape at k = 1 is c2(V)") {
  const auto poly = universal_poly(UniversalShape::quot_count(), 1, 2, 1);
  CHECK(poly.to_string() == "c2(V)");
  CHECK(poly.held_out.size() >= 5);
  bool hirzebruch = false;
  for (const auto& h : poly.held_out) {
    CHECK(h.direct == h.predicted);
    hirzebruch |= h.config.surface.kind == SurfaceKind::Hirzebruch;
  }
  CHECK(hirzebruch);
  for (std::size_t i = 0; i < poly.training.size(); ++i)
    CHECK(poly.evaluate(intersection_numbers(poly.training[i])) == poly.training_values[i]);

  const UniversalConfig q{SurfaceId::parse("P1xP1"), {{1, 1}, {2, 0}}, {{0, 1}}, {}};
  CHECK(poly.evaluate(intersection_numbers(q)) == universal_direct_value(UniversalShape::quot_count(), q, 1));

  const auto j = to_json(poly);
  CHECK(j["shape_id"] == poly.shape_id);
  CHECK(j["k"] == 1);
  CHECK(j["basis"].size() == j["coefficients"].size());
  CHECK(j["ranks"]["V"] == 2);
}

TEST_CASE("k = 0 gives the constant one") {
  const auto poly = universal_poly(UniversalShape::quot_count(), 0, 2, 1);
  CHECK(poly.to_string() == "1");
}

TEST_CASE("too few samples report the undetermined directions") {
  UniversalOptions o;
  o.pool_size = 2;
  try {
    universal_poly(UniversalShape::quot_count(), 2, 2, 1, o);
    FAIL("expected a rank-deficiency error");
  } catch (const DomainError& err) {
    CHECK(std::string(err.what()).find("undetermined") != std::string::npos);
  }
}
