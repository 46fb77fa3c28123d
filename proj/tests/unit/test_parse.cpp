#include <catch2/catch_amalgamated.hpp>

#include <hypdet/parse.hpp>

using namespace hypdet;

TEST_CASE("numbers in all supported forms") {
  CHECK(coeff(parse_poly("3", {"x"}), {0}) == cd(3.0));
  CHECK(coeff(parse_poly("3/2", {"x"}), {0}) == cd(1.5));
  CHECK(coeff(parse_poly("2.5e-3", {"x"}), {0}) == cd(0.0025));
  CHECK(coeff(parse_poly("0.25", {"x"}), {0}) == cd(0.25));
  CHECK(coeff(parse_poly("i", {"x"}), {0}) == cd(0.0, 1.0));
  CHECK(coeff(parse_poly("-i", {"x"}), {0}) == cd(0.0, -1.0));
}

TEST_CASE("terms, products and powers") {
  Poly p = parse_poly("2*x^2*y - 3*y + 1", {"x", "y"});
  CHECK(coeff(p, {2, 1}) == cd(2.0));
  CHECK(coeff(p, {0, 1}) == cd(-3.0));
  CHECK(coeff(p, {0, 0}) == cd(1.0));
}

TEST_CASE("parenthesized subexpressions distribute") {
  Poly p = parse_poly("(x + y)*(x - y)", {"x", "y"});
  CHECK(coeff(p, {2, 0}) == cd(1.0));
  CHECK(coeff(p, {0, 2}) == cd(-1.0));
  CHECK(coeff(p, {1, 1}) == cd(0.0));
}

TEST_CASE("leading sign is accepted") {
  Poly p = parse_poly("-x + 2", {"x"});
  CHECK(coeff(p, {1}) == cd(-1.0));
  CHECK(coeff(p, {0}) == cd(2.0));
}

TEST_CASE("the running example parses to the expected support") {
  Poly p = parse_poly("2*x0^2*x1 - (x0^2 + 3*x1^2)*x2", {"x0", "x1", "x2"});
  CHECK(p.terms.size() == 3);
  CHECK(coeff(p, {2, 1, 0}) == cd(2.0));
  CHECK(coeff(p, {2, 0, 1}) == cd(-1.0));
  CHECK(coeff(p, {0, 2, 1}) == cd(-3.0));
}

TEST_CASE("errors carry a position") {
  try {
    parse_poly("x + ", {"x"});
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.pos >= 3);
    CHECK(std::string(e.what()).find("position") != std::string::npos);
  }
}

TEST_CASE("unknown variables are rejected") {
  CHECK_THROWS_AS(parse_poly("x + z", {"x", "y"}), ParseError);
}

TEST_CASE("the imaginary unit is not a variable name") {
  CHECK_THROWS_AS(parse_poly("x", {"i"}), ParseError);
}

TEST_CASE("division is rational-literal only") {
  CHECK_THROWS_AS(parse_poly("x/2", {"x"}), ParseError);
  CHECK_THROWS_AS(parse_poly("1/0", {"x"}), ParseError);
  CHECK(coeff(parse_poly("7/4*x", {"x"}), {1}) == cd(1.75));
}

TEST_CASE("trailing garbage is rejected") {
  CHECK_THROWS_AS(parse_poly("2 x", {"x"}), ParseError);
  CHECK_THROWS_AS(parse_poly("x )", {"x"}), ParseError);
}

TEST_CASE("exponents are capped") {
  CHECK(degree_in(parse_poly("x^12", {"x"}), 0) == 12);
  CHECK_THROWS_AS(parse_poly("x^1001", {"x"}), ParseError);
}

TEST_CASE("an identifier starting with e is not scientific notation") {
  Poly p = parse_poly("2*e1", {"e1"});
  CHECK(coeff(p, {1}) == cd(2.0));
}
