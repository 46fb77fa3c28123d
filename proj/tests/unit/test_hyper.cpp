#include <catch2/catch_amalgamated.hpp>

#include <hypdet/hyper.hpp>
#include <hypdet/parse.hpp>

using namespace hypdet;

namespace {

Poly example_poly() { return parse_poly("2*x0^2*x1 - (x0^2 + 3*x1^2)*x2", {"x0", "x1", "x2"}); }

}  // namespace

TEST_CASE("the running example is semi-hyperbolic in the x2 direction") {
  Verdict v = is_semi_hyperbolic(example_poly(), {0.0, 0.0, 1.0});
  CHECK(v.holds);
  CHECK(v.samples_checked == 200);
  CHECK(v.worst_imag < 1e-7);
}

TEST_CASE("it is not hyperbolic in x2 because the polynomial vanishes there") {
  Verdict v = is_hyperbolic(example_poly(), {0.0, 0.0, 1.0});
  CHECK_FALSE(v.holds);
  CHECK(v.direction_vanishes);
  CHECK(v.samples_checked == 0);
}

TEST_CASE("it fails hyperbolicity in generic directions") {
  Poly p = example_poly();
  Rng rng(99);
  int failures = 0;
  for (int rep = 0; rep < 10; ++rep) {
    std::vector<double> e = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0),
                             rng.uniform(-1.0, 1.0)};
    Config cfg;
    cfg.seed = rep;
    Verdict v = is_hyperbolic(p, e, cfg);
    if (!v.holds) ++failures;
  }
  CHECK(failures == 10);
}

TEST_CASE("a genuinely hyperbolic quadric passes") {
  Poly p = parse_poly("x1*x2 - x0^2", {"x0", "x1", "x2"});
  Verdict v = is_hyperbolic(p, {0.0, 1.0, 1.0});
  CHECK(v.holds);
  CHECK(v.worst_imag < 1e-9);
}

TEST_CASE("an elliptic polynomial fails with a witness") {
  Poly p = parse_poly("x0^2 + x1^2 + x2^2", {"x0", "x1", "x2"});
  Verdict v = is_semi_hyperbolic(p, {0.0, 0.0, 1.0});
  CHECK_FALSE(v.holds);
  CHECK(v.worst_imag > 1e-3);
  REQUIRE(v.witness_x.size() == 3);
  // the recorded witness reproduces a genuinely complex root
  CHECK(std::abs(v.witness_root.imag()) > 1e-4);
}

TEST_CASE("non-homogeneous input is rejected") {
  Poly p = parse_poly("x0^2 + x1", {"x0", "x1", "x2"});
  CHECK_THROWS_AS(is_semi_hyperbolic(p, {0.0, 0.0, 1.0}), std::invalid_argument);
}

TEST_CASE("verdicts are seed deterministic") {
  Config a;
  a.seed = 12345;
  Verdict v1 = is_semi_hyperbolic(example_poly(), {0.0, 0.0, 1.0}, a);
  Verdict v2 = is_semi_hyperbolic(example_poly(), {0.0, 0.0, 1.0}, a);
  CHECK(v1.worst_imag == v2.worst_imag);
  CHECK(v1.witness_x == v2.witness_x);
}

TEST_CASE("cone hyperbolicity over the quadric's positive span") {
  Poly p = parse_poly("x1*x2 - x0^2", {"x0", "x1", "x2"});
  Verdict v = is_cone_hyperbolic(p, {{0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}});
  CHECK(v.holds);
  Verdict w = is_cone_hyperbolic(parse_poly("x0^2 + x1^2 + x2^2", {"x0", "x1", "x2"}),
                                 {{0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}});
  CHECK_FALSE(w.holds);
}

TEST_CASE("nonconvexity certificate for the running example") {
  Poly p = example_poly();
  auto cert = nonconvexity_certificate(p, {-1.0, 0.0, -1.0}, 600, 1);
  REQUIRE(cert.has_value());
  auto value = [&](const std::vector<double>& x) {
    CVec z(x.begin(), x.end());
    return eval_poly(p, z).real();
  };
  // the seed has positive sign, the endpoints agree with it, the midpoint does not
  CHECK(value({-1.0, 0.0, -1.0}) > 0.0);
  CHECK(cert->value_a > 0.0);
  CHECK(cert->value_b > 0.0);
  CHECK(cert->value_mid <= 1e-9);
  for (std::size_t i = 0; i < 3; ++i)
    CHECK(cert->mid[i] == Catch::Approx(0.5 * (cert->a[i] + cert->b[i])).margin(1e-12));
}

TEST_CASE("nonconvexity rejects a seed on the zero set") {
  CHECK_THROWS_AS(nonconvexity_certificate(example_poly(), {0.0, 0.0, 1.0}, 100, 0),
                  std::invalid_argument);
}
