#include <catch2/catch_amalgamated.hpp>

#include <hypdet/parse.hpp>
#include <hypdet/poly.hpp>
#include <hypdet/rng.hpp>

using namespace hypdet;

namespace {

Poly random_poly(Rng& rng, int nvars, int maxdeg, int nterms, bool real_coeffs = false) {
  Poly p;
  p.nvars = nvars;
  for (int t = 0; t < nterms; ++t) {
    Expt e(nvars);
    for (int& v : e) v = int(rng.integer(0, maxdeg + 1));
    p.terms[e] += real_coeffs ? cd(rng.uniform(-1.0, 1.0)) : rng.cnormal();
  }
  return prune(p);
}

}  // namespace

TEST_CASE("arithmetic expands a square") {
  Poly x = poly_monomial(2, {1, 0}, cd(1.0));
  Poly y = poly_monomial(2, {0, 1}, cd(1.0));
  Poly s = (x + y) * (x + y);
  CHECK(coeff(s, {2, 0}) == cd(1.0));
  CHECK(coeff(s, {1, 1}) == cd(2.0));
  CHECK(coeff(s, {0, 2}) == cd(1.0));
  CHECK(s.terms.size() == 3);
}

TEST_CASE("degrees and multidegree") {
  Poly p = parse_poly("x^2*y + 3*y^3", {"x", "y"});
  CHECK(total_degree(p) == 3);
  CHECK(degree_in(p, 0) == 2);
  CHECK(degree_in(p, 1) == 3);
  CHECK(multidegree(p) == Expt{2, 3});
}

TEST_CASE("evaluation matches a hand value") {
  Poly p = parse_poly("2*x^2*y - y + 1", {"x", "y"});
  cd v = eval_poly(p, {cd(2.0, 1.0), cd(0.0, 1.0)});
  // x^2 = 3 + 4i, 2 x^2 y = 2(3+4i)i = -8 + 6i, minus y plus 1 = -8 + 6i - i + 1
  CHECK(std::abs(v - cd(-7.0, 5.0)) < 1e-13);
}

TEST_CASE("restriction substitutes and drops the slot") {
  Poly p = parse_poly("x0^2*x1 + x1", {"x0", "x1"});
  Poly r = restrict_var(p, 0, cd(2.0));
  REQUIRE(r.nvars == 1);
  CHECK(std::abs(coeff(r, {1}) - cd(5.0)) < 1e-13);
}

TEST_CASE("homogenize inverts restriction on homogeneous input") {
  Rng rng(31);
  for (int rep = 0; rep < 10; ++rep) {
    // build a homogeneous polynomial of total degree 4 in three variables
    Poly P;
    P.nvars = 3;
    for (int t = 0; t < 8; ++t) {
      int a = int(rng.integer(0, 5));
      int b = int(rng.integer(0, 5 - a));
      P.terms[{a, b, 4 - a - b}] += rng.cnormal();
    }
    P = prune(P);
    Poly back = homogenize(restrict_var(P, 0, cd(1.0)), 0, 4);
    CHECK(poly_max_diff(back, P) < 1e-13);
  }
}

TEST_CASE("homogenize refuses an impossible degree") {
  Poly p = parse_poly("x^3 + 1", {"x"});
  CHECK_THROWS_AS(homogenize(p, 0, 2), std::invalid_argument);
}

TEST_CASE("reflection is an involution and fixes the running example") {
  Poly f;
  f.nvars = 2;
  f.terms[{0, 0}] = -0.5;
  f.terms[{1, 0}] = -1.0;
  f.terms[{1, 1}] = -1.0;
  f.terms[{2, 1}] = -0.5;
  Expt mdeg = {2, 1};
  CHECK(poly_max_diff(reflect(f, mdeg), f) == 0.0);

  Rng rng(5);
  Poly g = random_poly(rng, 2, 2, 6);
  Expt md = {3, 3};
  CHECK(poly_max_diff(reflect(reflect(g, md), md), g) < 1e-15);
}

TEST_CASE("reflection rejects support outside the degree box") {
  Poly p = parse_poly("x^3", {"x"});
  CHECK_THROWS_AS(reflect(p, {2}), std::invalid_argument);
}

TEST_CASE("partial derivative and shift multiply") {
  Poly p = parse_poly("x^3*y + 2*y", {"x", "y"});
  Poly d = partial(p, 0);
  CHECK(std::abs(coeff(d, {2, 1}) - cd(3.0)) < 1e-15);
  CHECK(d.terms.size() == 1);
  Poly s = shift_mul(p, 1);
  CHECK(std::abs(coeff(s, {3, 2}) - cd(1.0)) < 1e-15);
  CHECK(std::abs(coeff(s, {0, 2}) - cd(2.0)) < 1e-15);
}

TEST_CASE("mobius substitution composes to a scalar multiple") {
  Rng rng(13);
  Poly p = random_poly(rng, 2, 3, 7);
  int k = degree_in(p, 0);
  cd a(1.0, 1.0), b(0.0, -1.0), c(2.0, 0.0), d(1.0, 1.0);
  cd det = a * d - b * c;
  Poly once = mobius_substitute(p, 0, a, b, c, d, k);
  Poly twice = mobius_substitute(once, 0, d, -b, -c, a, k);
  Poly scaled = std::pow(det, k) * p;
  CHECK(poly_max_diff(twice, scaled) < 1e-12 * std::max(1.0, max_coeff_abs(scaled)));
}

TEST_CASE("linear substitution folds one variable into another") {
  Poly p = parse_poly("x0^2*y1 + x1*y1", {"x0", "x1", "y1"});
  Poly sub = restrict_var(substitute_linear(p, 2, cd(-1.0), 1), 2, cd(0.0));
  REQUIRE(sub.nvars == 2);
  CHECK(std::abs(coeff(sub, {2, 1}) - cd(-1.0)) < 1e-15);
  CHECK(std::abs(coeff(sub, {0, 2}) - cd(-1.0)) < 1e-15);
}

TEST_CASE("pruning drops relatively tiny coefficients") {
  Poly p;
  p.nvars = 1;
  p.terms[{0}] = 1.0;
  p.terms[{1}] = 1e-15;
  Poly q = prune(p);
  CHECK(q.terms.size() == 1);
  CHECK(is_zero(prune(poly_zero(1))));
}

TEST_CASE("printing and parsing round trip exactly") {
  Rng rng(29);
  std::vector<std::string> names = {"x0", "x1", "x2"};
  for (int rep = 0; rep < 25; ++rep) {
    Poly p = random_poly(rng, 3, 3, 6, rep % 2 == 0);
    std::string s = to_string(p, names);
    Poly q = parse_poly(s, names);
    REQUIRE(q.terms.size() == p.terms.size());
    for (const auto& [e, c] : p.terms) {
      REQUIRE(q.terms.count(e) == 1);
      CHECK(q.terms.at(e) == c);  // bit-exact round trip
    }
  }
}

TEST_CASE("printing conventions") {
  CHECK(to_string(poly_zero(2), {"x", "y"}) == "0");
  // terms print in ascending exponent order, lowest first
  Poly p = parse_poly("x^2 - y", {"x", "y"});
  CHECK(to_string(p, {"x", "y"}) == "-y + x^2");
  Poly c = parse_poly("(1 - 2*i)*x", {"x"});
  std::string s = to_string(c, {"x"});
  CHECK(s.find("i") != std::string::npos);
  CHECK(poly_max_diff(parse_poly(s, {"x"}), c) == 0.0);
}
