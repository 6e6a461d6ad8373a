#include <doctest.h>

#include <random>

#include "hq/error.hpp"
#include "hq/toric.hpp"

using namespace hq;

namespace {

const char* const kSurfaces[] = {"P2", "P1xP1", "Hirzebruch(1)", "Hirzebruch(2)", "Hirzebruch(3)"};

std::vector<DivisorClass> all_degrees(const ToricSurfaceModel& s, int lo, int hi) {
  std::vector<DivisorClass> out;
  if (s.pic_rank() == 1) {
    for (int d = lo; d <= hi; ++d) out.push_back({d});
  } else {
    for (int a = lo; a <= hi; ++a)
      for (int b = lo; b <= hi; ++b) out.push_back({a, b});
  }
  return out;
}

bool plus_minus(Weight w, Weight x) { return w == x || w == -x; }

}  // namespace

TEST_CASE("surface parsing") {
  CHECK(SurfaceId::parse("P2").kind == SurfaceKind::P2);
  CHECK(SurfaceId::parse("F3") == SurfaceId{SurfaceKind::Hirzebruch, 3});
  CHECK(SurfaceId::parse("Hirzebruch(0)").name() == "Hirzebruch(0)");
  CHECK_THROWS_AS(SurfaceId::parse("P3"), DomainError);
  CHECK_THROWS_AS(SurfaceId::parse("Hirzebruch(-1)"), DomainError);
}

TEST_CASE("make_surface examples") {
  const auto p2 = make_surface("P2");
  CHECK(p2.chi_top == 3);
  CHECK(p2.k_squared == 9);
  CHECK(p2.fixed_points[0].v1 == Weight{1, 0});
  CHECK(p2.fixed_points[0].v2 == Weight{0, 1});
  CHECK(p2.fixed_points[1].v1 == Weight{-1, 0});
  CHECK(p2.fixed_points[1].v2 == Weight{-1, 1});
  CHECK(p2.fixed_points[2].v1 == Weight{1, -1});
  CHECK(p2.fixed_points[2].v2 == Weight{0, -1});
  const auto q = make_surface("P1xP1");
  CHECK(q.chi_top == 4);
  CHECK(q.k_squared == 8);
  const auto f1 = make_surface("Hirzebruch(1)");
  CHECK(f1.chi_top == 4);
  CHECK(f1.k_squared == 8);
}

TEST_CASE("chi_top and K^2 agree with surface localization") {
  for (const char* name : kSurfaces) {
    const auto s = make_surface(name);
    CAPTURE(name);
    CHECK(s.chi_top == static_cast<std::int64_t>(s.rays.size()));
    for (const SpecPoint z : {SpecPoint{101, 103}, SpecPoint{997, 211}}) {
      CHECK(localized_k_squared(s, z) == Rational(s.k_squared));
    }
    // Noether: chi(O_X) = (K^2 + chi_top) / 12 = 1.
    CHECK(s.k_squared + s.chi_top == 12);
  }
}

TEST_CASE("edge and tangent invariants") {
  for (const char* name : kSurfaces) {
    const auto s = make_surface(name);
    CAPTURE(name);
    for (const auto& fp : s.fixed_points) CHECK(fp.v1.a * fp.v2.b - fp.v1.b * fp.v2.a != 0);
    CHECK(s.edges.size() == s.rays.size());
    for (const auto& e : s.edges) {
      const auto& p = s.fixed_points[e.p];
      const auto& q = s.fixed_points[e.q];
      CHECK((plus_minus(e.w, p.v1) || plus_minus(e.w, p.v2)));
      CHECK((plus_minus(-e.w, q.v1) || plus_minus(-e.w, q.v2)));
    }
  }
}

TEST_CASE("line_bundle examples") {
  const auto p2 = make_surface("P2");
  for (Weight w : line_bundle(p2, {0}).weights) CHECK(w.is_zero());
  const auto o1 = line_bundle(p2, {1});
  CHECK(o1.weights == std::vector<Weight>{{0, 0}, {1, 0}, {0, 1}});
  CHECK(line_bundle(p2, {3}).weights == std::vector<Weight>{{0, 0}, {3, 0}, {0, 3}});

  const auto q = make_surface("P1xP1");
  const auto l = line_bundle(q, {1, 0});
  CHECK(!validate_compatibility(q, l));
  int zeros = 0, t1 = 0;
  for (Weight w : l.weights) {
    zeros += w.is_zero();
    t1 += plus_minus(w, {1, 0});
  }
  CHECK(zeros == 2);
  CHECK(t1 == 2);
}

TEST_CASE("validate_compatibility") {
  const auto p2 = make_surface("P2");
  for (int d = -3; d <= 3; ++d) CHECK(!validate_compatibility(p2, line_bundle(p2, {d})));

  EquivariantLineBundle bad{p2.id, {{0, 0}, {1, 0}, {0, 0}}, std::nullopt};
  const auto v = validate_compatibility(p2, bad);
  REQUIRE(v);
  CHECK(v->p == 1);
  CHECK(v->q == 2);
  CHECK(v->message.find("joining points 2 and 3") != std::string::npos);

  for (const char* name : kSurfaces) {
    const auto s = make_surface(name);
    EquivariantLineBundle zero{s.id, std::vector<Weight>(s.num_fixed_points()), std::nullopt};
    CHECK(!validate_compatibility(s, zero));
    for (const auto& d : all_degrees(s, -4, 4)) {
      CHECK(!validate_compatibility(s, line_bundle(s, d)));
      CHECK(!validate_compatibility(s, line_bundle(s, d).shifted({3, -7})));
    }
  }
}

TEST_CASE("chi_surface examples") {
  const auto p2 = make_surface("P2");
  CHECK(chi_surface(p2, split_bundle(p2, {{0}})) == 1);
  CHECK(chi_surface(p2, split_bundle(p2, {{2}})) == 6);
  CHECK(chi_surface(p2, split_bundle(p2, {{-1}})) == 0);
  const auto q = make_surface("P1xP1");
  CHECK(chi_surface(q, split_bundle(q, {{1, 1}})) == 4);
}

TEST_CASE("chi_surface reproduces monomial counts") {
  const auto p2 = make_surface("P2");
  for (int d = -5; d <= 10; ++d) CHECK(chi_surface(p2, split_bundle(p2, {{d}})) == (d + 1) * (d + 2) / 2);
  const auto q = make_surface("P1xP1");
  for (int a = -3; a <= 3; ++a)
    for (int b = -3; b <= 3; ++b) CHECK(chi_surface(q, split_bundle(q, {{a, b}})) == (a + 1) * (b + 1));
}

TEST_CASE("chi_surface agrees with Riemann-Roch on Hirzebruch surfaces") {
  for (const char* name : {"Hirzebruch(1)", "Hirzebruch(2)", "Hirzebruch(3)"}) {
    const auto s = make_surface(name);
    for (const auto& d : all_degrees(s, -3, 3)) CHECK(chi_surface(s, split_bundle(s, {d})) == s.chi_line(d));
  }
}

TEST_CASE("chi_surface is additive on virtual bundles") {
  const auto p2 = make_surface("P2");
  const auto b = split_bundle(p2, {{2}, {5}}, {{1}});
  CHECK(chi_surface(p2, b) == 6 + 21 - 3);
  CHECK(chi_from_chern(p2, chern_data(p2, b)) == 24);
}

TEST_CASE("chi_surface ignores linearization and seed") {
  std::mt19937_64 rng(3);
  for (const char* name : kSurfaces) {
    const auto s = make_surface(name);
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<DivisorClass> plus, minus;
      for (int i = 0; i < 2; ++i) {
        DivisorClass d(s.pic_rank());
        for (auto& x : d) x = static_cast<int>(rng() % 7) - 3;
        plus.push_back(d);
      }
      DivisorClass m(s.pic_rank());
      for (auto& x : m) x = static_cast<int>(rng() % 5) - 2;
      minus.push_back(m);
      const auto b = split_bundle(s, plus, minus);
      const Integer base = chi_surface(s, b);
      CHECK(chi_surface(s, b.shifted({5, -2})) == base);
      CHECK(chi_surface(s, b, 12345) == base);
      CHECK(chi_surface(s, b, 999) == base);
      CHECK(base == chi_from_chern(s, chern_data(s, b)));
    }
  }
}

TEST_CASE("Whitney Chern data and surface localization of c2") {
  const auto p2 = make_surface("P2");
  const auto b = split_bundle(p2, {{2}, {3}});
  const auto c = chern_data(p2, b);
  CHECK(c.rank == 2);
  CHECK(c.c1 == DivisorClass{5});
  CHECK(c.c2 == 6);
  const auto virt = split_bundle(p2, {{1}, {1}, {2}}, {{3}});
  // (1+h)^2 (1+2h) / (1+3h): c2 = 5 - 4*3 + 9
  CHECK(chern_data(p2, virt).c2 == 2);
  for (const char* name : kSurfaces) {
    const auto s = make_surface(name);
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 5; ++trial) {
      std::vector<DivisorClass> plus(3, DivisorClass(s.pic_rank())), minus(1, DivisorClass(s.pic_rank()));
      for (auto& d : plus)
        for (auto& x : d) x = static_cast<int>(rng() % 9) - 4;
      for (auto& d : minus)
        for (auto& x : d) x = static_cast<int>(rng() % 9) - 4;
      const auto bb = split_bundle(s, plus, minus);
      CHECK(localized_c2(s, bb, {131, 577}) == Rational(chern_data(s, bb).c2));
      CHECK(localized_c2(s, bb.shifted({1, 4}), {131, 577}) == Rational(chern_data(s, bb).c2));
    }
  }
}

TEST_CASE("realize_split_model examples") {
  const auto p2 = make_surface("P2");
  CHECK(realize_split_model(p2, {2, {5}, 6}) == split_bundle(p2, {{2}, {3}}));
  for (int d = -3; d <= 6; ++d) CHECK(realize_split_model(p2, {1, {d}, 0}) == split_bundle(p2, {{d}}));
  CHECK(realize_split_model(p2, {2, {5}, 4}) == split_bundle(p2, {{1}, {4}}));
}

TEST_CASE("realize_split_model hits the target Chern data") {
  for (const char* name : {"P2", "P1xP1", "Hirzebruch(1)"}) {
    const auto s = make_surface(name);
    const DivisorClass d = s.pic_rank() == 1 ? DivisorClass{7} : DivisorClass{2, 3};
    for (int r = 1; r <= 4; ++r) {
      for (int c2 = -5; c2 <= 40; c2 += 5) {
        const ChernData target{r, d, c2};
        const auto b = realize_split_model(s, target);
        CHECK(chern_data(s, b) == target);
      }
    }
  }
  const auto p2 = make_surface("P2");
  CHECK_THROWS_AS(realize_split_model(p2, {2, {1}, 500}, {2, 0}), DomainError);
}

TEST_CASE("e_from_V") {
  const auto p2 = make_surface("P2");
  for (int d = 1; d <= 6; ++d) {
    const auto e = e_from_V(p2, {3, {-d}, 10}, 2);
    CHECK(e.rank == 2);
    CHECK(e.c1 == DivisorClass{d});
  }
  // k = 0 keeps ch2.
  const ChernData v{3, {-4}, 9};
  const auto e0 = e_from_V(p2, v, 0);
  CHECK(e0.c1[0] * e0.c1[0] - 2 * e0.c2 == v.c1[0] * v.c1[0] - 2 * v.c2);
  CHECK_THROWS_AS(e_from_V(p2, {1, {0}, 0}, 1), DomainError);
}

TEST_CASE("chi_pair") {
  const auto p2 = make_surface("P2");
  // A rank-3 class with chi = 3k.
  const ChernData e{3, {0}, -6};
  CHECK(chi_from_chern(p2, e) == 9);
  CHECK(chi_pair(p2, e, 3) == 0);
  const ChernData zero_rank{0, {2}, 1};
  CHECK(chi_pair(p2, zero_rank, 0) == chi_pair(p2, zero_rank, 7));
}

TEST_CASE("e_from_V is orthogonal when c2 gives expected dimension zero") {
  for (const char* name : {"P2", "P1xP1", "Hirzebruch(1)"}) {
    const auto s = make_surface(name);
    for (int r = 3; r <= 4; ++r) {
      for (int d = 5; d <= 9; ++d) {
        const DivisorClass c1 = s.pic_rank() == 1 ? DivisorClass{d} : DivisorClass{d - 3, 3};
        for (int k = 1; k <= 5; ++k) {
          const ChernData vstar{r, c1, s.chi_line(c1) - static_cast<std::int64_t>(k - 1) * (r - 2)};
          CHECK(chi_from_chern(s, vstar) - 1 == static_cast<std::int64_t>(r - 2) * k);
          CHECK(chi_pair(s, e_from_V(s, dual(vstar), k), k) == 0);
        }
      }
    }
  }
}
