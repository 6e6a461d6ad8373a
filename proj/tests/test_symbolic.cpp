#include <doctest.h>

#include <random>

#include "hq/error.hpp"
#include "hq/series.hpp"
#include "hq/specialization.hpp"
#include "hq/symbolic.hpp"

using namespace hq;

namespace {

// Akiyama-Tanigawa; gives B_1 = +1/2, so the sign of B_1 is flipped here.
std::vector<Rational> bernoulli_oracle(int n) {
  std::vector<Rational> out;
  for (int m = 0; m <= n; ++m) {
    std::vector<Rational> a(m + 1);
    for (int j = 0; j <= m; ++j) {
      a[j] = Rational(1, j + 1);
      for (int i = j; i >= 1; --i) a[i - 1] = i * (a[i - 1] - a[i]);
    }
    out.push_back(a[0]);
  }
  if (n >= 1) out[1] = -out[1];
  return out;
}

Rational factorial(int n) {
  Integer f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return Rational(f);
}

}  // namespace

TEST_CASE("rational arithmetic is exact for large operands") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    Integer p(std::to_string(rng()) + std::to_string(rng()));
    Integer q(std::to_string(rng() | 1) + "1");
    Integer r(std::to_string(rng()));
    Integer s(std::to_string(rng() | 1) + "3");
    if (trial % 2) p = -p;
    const Rational x = make_rational(p, q), y = make_rational(r, s);
    CHECK((x + y) - y == x);
    CHECK(x.get_den() > 0);
    CHECK(gcd(Integer(x.get_num()), Integer(x.get_den())) == 1);
  }
  CHECK_THROWS_AS(make_rational(1, 0), DomainError);
  CHECK(make_rational(4, -6) == Rational(-2, 3));
  CHECK(parse_rational("-10/4") == Rational(-5, 2));
  CHECK(to_string(Rational(-5, 2)) == "-5/2");
}

TEST_CASE("specialize") {
  CHECK(specialize({1, 0}, {5, 7}) == 5);
  CHECK(specialize({2, 3}, {1, 1}) == 5);
  CHECK(specialize({0, 0}, {Rational(3, 2), 11}) == 0);
}

TEST_CASE("weight arithmetic and printing") {
  const Weight t1{1, 0}, t2{0, 1};
  CHECK(t2 - t1 == Weight{-1, 1});
  CHECK(3 * t1 == Weight{3, 0});
  CHECK(to_string(t1 - t2) == "t1-t2");
  CHECK(to_string(Weight{-2, 3}) == "-2*t1+3*t2");
  CHECK(to_string(Weight{}) == "0");
  CHECK(Weight{}.is_zero());
}

TEST_CASE("elementary_symmetric") {
  const std::vector<Rational> v{1, 2, 3};
  CHECK(elementary_symmetric(v, 2) == 11);
  CHECK(elementary_symmetric(v, 0) == 1);
  CHECK(elementary_symmetric(v, 4) == 0);
  CHECK(elementary_symmetric(v, 3) == 6);
}

TEST_CASE("signed_chern_classes inverts minus lines") {
  const std::vector<Integer> plus{2, 3, 5}, minus{5};
  const auto c = signed_chern_classes(plus, minus, 4);
  // (1 + 2x)(1 + 3x)
  CHECK(c[0] == 1);
  CHECK(c[1] == 5);
  CHECK(c[2] == 6);
  CHECK(c[3] == 0);
  CHECK(c[4] == 0);
  const auto inv = signed_chern_classes({}, std::vector<Integer>{1}, 3);
  CHECK(inv == std::vector<Integer>{1, -1, 1, -1});
}

TEST_CASE("binomial with negative upper argument") {
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(-3, 2) == 6);
  CHECK(binomial(-1, 3) == -1);
  CHECK(binomial(4, -1) == 0);
}

TEST_CASE("todd_series examples") {
  CHECK(todd_series(1, 0) == USeries({Rational(1)}));
  CHECK(todd_series(1, 2) == USeries({Rational(1), Rational(1, 2), Rational(1, 12)}));
  CHECK(todd_series(2, 1) == USeries({Rational(1), Rational(1)}));
  const auto t = todd_series(1, 4);
  CHECK(t[3] == 0);
  CHECK(t[4] == Rational(-1, 720));
  CHECK_THROWS_AS(todd_series(0, 3), ZeroWeightError);
}

TEST_CASE("exp_series examples") {
  CHECK(exp_series(0, 3) == USeries({Rational(1), 0, 0, 0}));
  CHECK(exp_series(1, 3) == USeries({Rational(1), 1, Rational(1, 2), Rational(1, 6)}));
  CHECK(exp_series(-2, 2) == USeries({Rational(1), -2, 2}));
}

TEST_CASE("Bernoulli numbers match an independent recurrence") {
  const auto oracle = bernoulli_oracle(20);
  for (int n = 0; n <= 20; ++n) CHECK(bernoulli(n) == oracle[n]);
  CHECK(bernoulli(1) == Rational(-1, 2));
}

TEST_CASE("todd(a) exp(-a) is the Bernoulli generating function") {
  // a u e^{-a u} / (1 - e^{-a u}) = a u / (e^{a u} - 1) = sum B_n (a u)^n / n!
  const auto b = bernoulli_oracle(12);
  for (Rational a : {Rational(1), Rational(-3), Rational(5, 2)}) {
    const USeries lhs = todd_series(a, 12) * exp_series(-a, 12);
    Rational power = 1;
    for (int n = 0; n <= 12; ++n) {
      CHECK(lhs[n] == b[n] * power / factorial(n));
      power *= a;
    }
  }
}

TEST_CASE("USeries products are commutative and associative") {
  std::mt19937_64 rng(11);
  auto random_series = [&](int order) {
    USeries s(order);
    for (int i = 0; i <= order; ++i) s[i] = make_rational(static_cast<long>(rng() % 41) - 20, 1 + rng() % 7);
    return s;
  };
  for (int trial = 0; trial < 20; ++trial) {
    const USeries a = random_series(6), b = random_series(6), c = random_series(4);
    CHECK(a * b == b * a);
    CHECK((a * b) * c == a * (b * c));
    CHECK((a * c).order() == 4);
  }
}

TEST_CASE("series_exp and series_log are inverse") {
  USeries g(8);
  g[1] = 3;
  g[2] = Rational(-1, 2);
  g[5] = 7;
  CHECK(series_log(series_exp(g)) == g);
  CHECK(series_exp(USeries({Rational(0), Rational(2), 0, 0})) == exp_series(2, 3));
  CHECK_THROWS_AS(series_exp(USeries({Rational(1)})), DomainError);
}

TEST_CASE("products of Todd factors from power sums") {
  const std::vector<Rational> ws{2, -3, 7, Rational(1, 2)};
  const int order = 9;
  USeries direct = USeries::one(order);
  for (const auto& w : ws) direct = direct * todd_series(w, order);
  const auto l = log_todd_coefficients(order);
  USeries g(order);
  for (int n = 1; n <= order; ++n) {
    Rational p = 0;
    for (const auto& w : ws) {
      Rational x = 1;
      for (int i = 0; i < n; ++i) x *= w;
      p += x;
    }
    g[n] = l[n] * p;
  }
  CHECK(series_exp(g) == direct);
}

TEST_CASE("ULaurent accumulation and normalization") {
  ULaurent x = ULaurent::shifted(USeries({Rational(1), 2, 3}), -2);
  ULaurent y = ULaurent::shifted(USeries({Rational(-1), -2, 0, 4}), -2);
  x += y;
  CHECK(x.coefficient(-2) == 0);
  CHECK(x.coefficient(0) == 3);
  CHECK(x.coefficient(1) == 4);
  x.normalize();
  CHECK(x.low() == 0);
  CHECK(x.pole_free());
  CHECK(x.coefficient(7) == 0);
}

TEST_CASE("the three P2 contributions for O(d) cancel their poles") {
  // Tangent weights (t1,t2), (-t1,t2-t1), (t1-t2,-t2); O(d) weights 0, d t1, d t2.
  const SpecPoint z{101, 103};
  const Weight t1{1, 0}, t2{0, 1};
  const Weight tangents[3][2] = {{t1, t2}, {-t1, t2 - t1}, {t1 - t2, -t2}};
  for (int d = -3; d <= 4; ++d) {
    const Weight lines[3] = {{0, 0}, d * t1, d * t2};
    ULaurent total;
    for (int p = 0; p < 3; ++p) {
      const Rational v1 = z.eval(tangents[p][0]), v2 = z.eval(tangents[p][1]);
      USeries term = exp_series(-Rational(z.eval(lines[p])), 4) * todd_series(v1, 4) * todd_series(v2, 4);
      term *= Rational(1) / (v1 * v2);
      total += ULaurent::shifted(term, -2);
    }
    CHECK(total.pole_free());
    CHECK(total.coefficient(0) == make_rational((d + 1) * (d + 2), 2));
  }
}

TEST_CASE("specializer is deterministic and draws distinct primes") {
  Specializer a(5), b(5), c(6);
  bool differs = false;
  for (int i = 0; i < 20; ++i) {
    const SpecPoint x = a.next(), y = b.next(), w = c.next();
    CHECK(x == y);
    CHECK(x.p != x.q);
    CHECK(x.p >= 101);
    CHECK(x.q < 1000);
    differs = differs || !(x == w);
  }
  CHECK(differs);
}
