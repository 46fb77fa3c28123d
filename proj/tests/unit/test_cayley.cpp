#include <catch2/catch_amalgamated.hpp>

#include <hypdet/cayley.hpp>
#include <hypdet/parse.hpp>
#include <hypdet/rng.hpp>
#include <hypdet/uniroots.hpp>

using namespace hypdet;

namespace {

// restriction of the running example to x0 = 1
Poly example_q() { return parse_poly("2*x1 - (1 + 3*x1^2)*x2", {"x1", "x2"}); }

}  // namespace

TEST_CASE("disk transform of the running example has the known coefficients") {
  Poly f = disk_from_halfplane(example_q(), {2, 1});
  CHECK(std::abs(coeff(f, {0, 0}) - cd(-0.5)) < 1e-12);
  CHECK(std::abs(coeff(f, {1, 0}) - cd(-1.0)) < 1e-12);
  CHECK(std::abs(coeff(f, {1, 1}) - cd(-1.0)) < 1e-12);
  CHECK(std::abs(coeff(f, {2, 1}) - cd(-0.5)) < 1e-12);
  CHECK(prune(f, 1e-10).terms.size() == 4);
}

TEST_CASE("the halfplane and disk transforms invert each other") {
  Rng rng(61);
  for (int rep = 0; rep < 8; ++rep) {
    Poly q;
    q.nvars = 2;
    for (int a = 0; a <= 2; ++a)
      for (int b = 0; b <= 1; ++b) q.terms[{a, b}] = rng.cnormal();
    Expt degs = {2, 1};
    Poly back = halfplane_from_disk(disk_from_halfplane(q, degs), degs);
    CHECK(poly_max_diff(back, q) < 1e-12 * std::max(1.0, max_coeff_abs(q)));
  }
}

TEST_CASE("transform requires the declared degrees") {
  CHECK_THROWS_AS(disk_from_halfplane(example_q(), {3, 1}), std::invalid_argument);
}

TEST_CASE("the transformed example is self-reflective") {
  Poly f = disk_from_halfplane(example_q(), {2, 1});
  CHECK(poly_max_diff(reflect(f, {2, 1}), f) < 1e-12);
}

TEST_CASE("its slice at z2 = 0 has one zero inside the disk") {
  Poly f = disk_from_halfplane(example_q(), {2, 1});
  Poly slice = restrict_var(f, 1, cd(0.0));
  RootSet rs = roots(slice);
  REQUIRE(rs.roots.size() == 1);
  CHECK(std::abs(rs.roots[0] - cd(-0.5)) < 1e-10);
  CHECK(count_region(rs, Region::DISK) == 1);
}

TEST_CASE("self-reflective split satisfies the Euler identity") {
  Poly f = disk_from_halfplane(example_q(), {2, 1});
  Expt mdeg = {2, 1};
  auto [p, pt] = split_self_reflective(f, mdeg);
  Poly total = p + pt;
  Poly expected = cd(3.0) * f;  // degree sum is 3
  CHECK(poly_max_diff(total, expected) < 1e-10);
  CHECK(coeff(pt, {0, 0}) == cd(0.0));  // exactly, by construction
  CHECK(poly_max_diff(reflect(p, mdeg), pt) < 1e-10);
}

TEST_CASE("split of a degenerate one-variable-degree polynomial") {
  Poly f = parse_poly("1/2 + 1/2*z2", {"z1", "z2"});
  auto [p, pt] = split_self_reflective(f, {0, 1});
  CHECK(poly_max_diff(p + pt, f) < 1e-14);
  CHECK(std::abs(coeff(p, {0, 0}) - cd(0.5)) < 1e-14);
  CHECK(std::abs(coeff(pt, {0, 1}) - cd(0.5)) < 1e-14);
}

TEST_CASE("split rejects a polynomial that is not self-reflective") {
  Poly g = parse_poly("1 + 2*z1", {"z1", "z2"});
  CHECK_THROWS_AS(split_self_reflective(g, {1, 1}), std::invalid_argument);
}

TEST_CASE("reflected partial needs positive degree in the variable") {
  Poly f = disk_from_halfplane(example_q(), {2, 1});
  CHECK_NOTHROW(reflected_partial(f, 0, {2, 1}));
  Poly g = parse_poly("1/2 + 1/2*z2", {"z1", "z2"});
  CHECK_THROWS_AS(reflected_partial(g, 0, {0, 1}), std::invalid_argument);
}

TEST_CASE("a leading-variable factor is detected") {
  Poly f = disk_from_halfplane(example_q(), {2, 1});
  CHECK_NOTHROW(check_no_leading_variable_factor(f));
  Poly shifted = shift_mul(f, 0);  // multiply by z1
  CHECK_THROWS_AS(check_no_leading_variable_factor(shifted), std::runtime_error);
}
