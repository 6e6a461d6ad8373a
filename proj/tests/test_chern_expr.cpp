#include <doctest.h>

#include "hq/chern_expr.hpp"
#include "hq/error.hpp"

using namespace hq;

TEST_CASE("single symbol") {
  const auto e = parse_chern_expr("c2(Vdual_k)");
  REQUIRE(e.terms().size() == 1);
  CHECK(e.homogeneous_degree() == 2);
  CHECK(e.bundles() == std::set<std::string>{"Vdual_k"});
  CHECK(e.to_string() == "c2(Vdual_k)");
}

TEST_CASE("sums, products and rational coefficients") {
  const auto e = parse_chern_expr("3*c1(IT)*c1(IT) - 1/2*c2(IT)");
  CHECK(e.terms().size() == 2);
  CHECK(e.homogeneous_degree() == 2);
  CHECK(e.max_index("IT") == 2);
  const auto same = parse_chern_expr("  -1/2 * c2( IT )+c1(IT)*3*c1(IT) ");
  CHECK(e.to_string() == same.to_string());
}

TEST_CASE("terms merge and cancel") {
  CHECK(parse_chern_expr("c1(A)*c2(B) - c2(B)*c1(A)").is_zero());
  CHECK(parse_chern_expr("2*c1(A) + c1(A)").to_string() == "3*c1(A)");
  CHECK(parse_chern_expr("c0(A)*5").to_string() == "5");
  CHECK(parse_chern_expr("4/6").to_string() == "2/3");
}

TEST_CASE("hyperplane powers") {
  const auto e = parse_chern_expr("h^3*c1(IT) + h");
  CHECK(!e.homogeneous_degree());
  CHECK(e.max_degree() == 4);
  CHECK(e.uses_hyperplane());
  CHECK(e.to_string() == "h + c1(IT)*h^3");
  CHECK_THROWS_AS(e.validate({"IT"}, false), DomainError);
  CHECK_NOTHROW(e.validate({"IT"}, true));
}

TEST_CASE("parse errors carry the column") {
  try {
    parse_chern_expr("c1(");
    FAIL("expected a parse error");
  } catch (const ParseError& err) {
    CHECK(err.column() == 3);
    CHECK(std::string(err.what()) == "unclosed '(' at column 3");
  }
  auto column_of = [](const char* text) {
    try {
      parse_chern_expr(text);
    } catch (const ParseError& err) {
      return err.column();
    }
    return 0;
  };
  CHECK(column_of("c1(A") == 3);
  CHECK(column_of("") == 1);
  CHECK(column_of("c1(A) +") == 8);
  CHECK(column_of("c1(A) c2(B)") == 7);
  CHECK(column_of("cx(A)") == 2);
  CHECK(column_of("1/0") == 3);
  CHECK(column_of("c1()") == 4);
}

TEST_CASE("unknown bundle ids are rejected") {
  const auto e = parse_chern_expr("c1(A)*c1(B)");
  CHECK_THROWS_WITH_AS(e.validate({"A"}, false), "unknown bundle id 'B'", DomainError);
  CHECK_NOTHROW(e.validate({"A", "B"}, false));
}

TEST_CASE("algebra and evaluation") {
  const auto a = ChernExpr::symbol("A", 1), b = ChernExpr::symbol("B", 2);
  const auto e = a * a + Rational(-2) * b;
  CHECK(e.homogeneous_degree() == 2);
  auto value = e.evaluate<Rational>([](const std::string& id, int j) { return Rational(id == "A" ? 3 : 5 * j); },
                                    Rational(0), Rational(1));
  CHECK(value == 9 - 20);
  CHECK((e * ChernExpr::hyperplane_power(2)).max_degree() == 4);
}
