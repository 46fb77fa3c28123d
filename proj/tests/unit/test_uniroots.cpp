#include <catch2/catch_amalgamated.hpp>

#include <hypdet/parse.hpp>
#include <hypdet/rng.hpp>
#include <hypdet/uniroots.hpp>

using namespace hypdet;

TEST_CASE("quadratic with roots at plus and minus i") {
  RootSet rs = roots(parse_poly("t^2 + 1", {"t"}));
  REQUIRE(rs.roots.size() == 2);
  CHECK(std::abs(rs.roots[0] - cd(0.0, -1.0)) < 1e-12);
  CHECK(std::abs(rs.roots[1] - cd(0.0, 1.0)) < 1e-12);
  CHECK(count_region(rs, Region::UHP) == 1);
  CHECK(count_region(rs, Region::LHP) == 1);
}

TEST_CASE("the running example slice has one root in each half-plane") {
  // p(1, t, i) as a polynomial in t; quadratic formula gives i/3 and -i
  Poly q = parse_poly("2*t - (1 + 3*t^2)*i", {"t"});
  RootSet rs = roots(q);
  REQUIRE(rs.roots.size() == 2);
  bool found_third = false, found_minus = false;
  for (const cd& r : rs.roots) {
    if (std::abs(r - cd(0.0, 1.0 / 3.0)) < 1e-10) found_third = true;
    if (std::abs(r - cd(0.0, -1.0)) < 1e-10) found_minus = true;
  }
  CHECK(found_third);
  CHECK(found_minus);
  CHECK(count_region(rs, Region::UHP) == 1);
}

TEST_CASE("degree one and constant cases") {
  RootSet lin = roots(parse_poly("2*t + 4", {"t"}));
  REQUIRE(lin.roots.size() == 1);
  CHECK(std::abs(lin.roots[0] - cd(-2.0)) < 1e-14);
  CHECK(roots(parse_poly("5", {"t"})).roots.empty());
  CHECK(roots(poly_zero(1)).roots.empty());
}

TEST_CASE("leading zeros are trimmed and counted") {
  RootSet rs = roots(std::vector<cd>{cd(1.0), cd(1.0), cd(0.0), cd(0.0)});
  CHECK(rs.trimmed == 2);
  REQUIRE(rs.roots.size() == 1);
  CHECK(std::abs(rs.roots[0] - cd(-1.0)) < 1e-14);
}

TEST_CASE("known integer roots of a degree six product") {
  // (t-1)(t-2)...(t-6)
  std::vector<cd> c = {720.0, -1764.0, 1624.0, -735.0, 175.0, -21.0, 1.0};
  RootSet rs = roots(c);
  REQUIRE(rs.roots.size() == 6);
  for (int k = 1; k <= 6; ++k) CHECK(std::abs(rs.roots[k - 1] - cd(double(k))) < 1e-7);
  CHECK(all_real(rs));
}

TEST_CASE("random polynomials have small normalized residuals") {
  Rng rng(41);
  for (int rep = 0; rep < 20; ++rep) {
    int deg = 2 + int(rng.integer(0, 7));
    std::vector<cd> c(deg + 1);
    for (auto& v : c) v = rng.cnormal();
    RootSet rs = roots(c);
    REQUIRE(int(rs.roots.size()) == deg);
    for (double r : rs.residuals) CHECK(r < 1e-8);
  }
}

TEST_CASE("region counts partition the root set") {
  Rng rng(43);
  for (int rep = 0; rep < 10; ++rep) {
    std::vector<cd> c(7);
    for (auto& v : c) v = rng.cnormal();
    RootSet rs = roots(c);
    int total = int(rs.roots.size());
    CHECK(count_region(rs, Region::UHP) + count_region(rs, Region::LHP) +
              count_region(rs, Region::REAL_LINE) ==
          total);
    CHECK(count_region(rs, Region::DISK) + count_region(rs, Region::EXTERIOR) +
              count_region(rs, Region::CIRCLE) ==
          total);
  }
}

TEST_CASE("strict counting refuses roots on the boundary band") {
  RootSet rs = roots(parse_poly("t", {"t"}));  // root at the origin
  CHECK(count_region(rs, Region::REAL_LINE) == 1);
  CHECK_THROWS_AS(count_region(rs, Region::UHP, true), std::runtime_error);
  RootSet circle = roots(parse_poly("t - 1", {"t"}));  // root on the unit circle
  CHECK(count_region(circle, Region::CIRCLE) == 1);
  CHECK_THROWS_AS(count_region(circle, Region::DISK, true), std::runtime_error);
}

TEST_CASE("multivariate input is rejected") {
  CHECK_THROWS_AS(roots(parse_poly("x*y", {"x", "y"})), std::invalid_argument);
}
