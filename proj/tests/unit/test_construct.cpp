#include <catch2/catch_amalgamated.hpp>

#include <hypdet/construct.hpp>
#include <hypdet/parse.hpp>

using namespace hypdet;

namespace {
const std::vector<std::string> kVars3 = {"x0", "x1", "x2"};
}

TEST_CASE("construction handles a single linear form") {
  ConstructResult res = construct_t1(parse_poly("x2", kVars3));
  REQUIRE(res.ok);
  REQUIRE(pencil_dim(res.pencil) == 1);
  CHECK(std::abs(res.pencil.mats[0](0, 0)) < 1e-8);
  CHECK(std::abs(res.pencil.mats[1](0, 0)) < 1e-8);
  CHECK(std::abs(res.pencil.mats[2](0, 0) - cd(1.0)) < 1e-8);
  CHECK(std::abs(res.pencil.c - cd(1.0)) < 1e-8);
  CHECK(res.verify.pass);
  CHECK(all_invariants_pass(res.invariants));
}

TEST_CASE("construction rejects a polynomial failing the root condition") {
  CHECK_THROWS_AS(construct_t1(parse_poly("x0^2 + x1^2 + x2^2", kVars3)),
                  std::invalid_argument);
}

TEST_CASE("definite construction for the hyperbolic quadric") {
  ConstructResult res = construct_cor(parse_poly("x1*x2 - x0^2", kVars3));
  REQUIRE(res.ok);
  REQUIRE(pencil_dim(res.pencil) == 2);
  CHECK(res.verify.pass);
  CHECK(res.verify.residual <= 1e-8);
  REQUIRE(res.invariants.count("a1_psd") == 1);
  REQUIRE(res.invariants.count("a1_plus_a2_identity") == 1);
  REQUIRE(res.invariants.count("bm_rank_zero") == 1);
  CHECK(all_invariants_pass(res.invariants));
  CHECK(max_abs(res.pencil.mats[1] + res.pencil.mats[2] - CMat::eye(2)) <= 1e-10);
  CHECK(res.stages.front().name == "cone_check");
}

TEST_CASE("construction recovers the running example") {
  Poly p = parse_poly("2*x0^2*x1 - (x0^2 + 3*x1^2)*x2", kVars3);
  ConstructResult res = construct_t1(p);
  REQUIRE(res.ok);
  CHECK(pencil_dim(res.pencil) == 3);
  CHECK(res.cert_set);
  CHECK(res.face_set);
  CHECK(res.verify.pass);
  CHECK(res.verify.residual <= 1e-8);
  CHECK(all_invariants_pass(res.invariants));
  CHECK(res.invariants.at("rank_a1_matches_deg1").value == 2.0);
  CHECK(res.invariants.at("rank_a2_matches_deg2").value == 1.0);
  CHECK(res.invariants.at("rank_bm_matches_uhp").value == 1.0);
  CHECK(res.stages.front().name == "semi_hyperbolic_check");

  // the recorded unitary reproduces the pencil without a fresh search
  ConstructResult again = construct_t1(p, Config{}, &res.face);
  REQUIRE(again.ok);
  REQUIRE(pencil_dim(again.pencil) == pencil_dim(res.pencil));
  for (int j = 0; j < 3; ++j)
    CHECK(max_abs(again.pencil.mats[j] - res.pencil.mats[j]) < 1e-10);
  bool supplied_stage = false;
  for (const StageRecord& s : again.stages) supplied_stage |= (s.name == "unitary_supplied");
  CHECK(supplied_stage);
}

TEST_CASE("split lift of the worked pencil") {
  WorkedExample w = worked_example();
  LiftResult lifted = lift_to_four(w.pencil);
  Poly expected =
      parse_poly("3*x1*y1*x2 - (x2 + x1 + 3*y1)*x0^2", {"x0", "x1", "y1", "x2"});
  CHECK(poly_max_diff(lifted.lifted, expected) < 1e-10);
  CHECK(lifted.hyperbolic.holds);
  CHECK(lifted.restriction_residual < 1e-12);

  Pencil bare;
  bare.mats = w.pencil.mats;
  bare.c = w.pencil.c;
  CHECK_THROWS_AS(lift_to_four(bare), std::invalid_argument);
}

TEST_CASE("nonsingular direction search") {
  auto t = nonsingular_direction(CMat::diag_real({0.0, 1.0, -1.0}),
                                 CMat::diag_real({1.0, 0.0, 0.0}));
  REQUIRE(t.has_value());
  CMat probe = *t * CMat::diag_real({0.0, 1.0, -1.0}) + CMat::diag_real({1.0, 0.0, 0.0});
  CHECK(std::abs(lu_det(probe)) > 1e-12);

  auto none = nonsingular_direction(CMat::diag_real({1.0, 0.0}),
                                    CMat::diag_real({2.0, 0.0}));
  CHECK(!none.has_value());
}

TEST_CASE("divisibility check") {
  Poly f = parse_poly("1 + z1*z2", {"z1", "z2", "z3"});
  Poly g = parse_poly("2 - z1", {"z1", "z2", "z3"});
  Poly big = f * g;
  DividesOutcome out = divides_check(f, big, {1, 0, 0});
  CHECK(out.pass);
  CHECK(out.residual < 1e-10);
  CHECK(poly_max_diff(out.quotient, g) < 1e-10);

  Poly off = big + parse_poly("0.05*z3", {"z1", "z2", "z3"});
  DividesOutcome bad = divides_check(f, off, {1, 0, 0});
  CHECK(!bad.pass);
}

TEST_CASE("four-variable construction for a linear form") {
  Poly P = parse_poly("x0 + x1 + x2 + x3", {"x0", "x1", "x2", "x3"});
  ConstructResult res = construct_t2(P);
  REQUIRE(res.ok);
  REQUIRE(res.pencil.mats.size() == 4);
  CHECK(res.verify.pass);
  CHECK(res.verify.residual <= 1e-8);
  CHECK(res.cofactor_set);
  CHECK(all_invariants_pass(res.invariants));
  REQUIRE(res.invariants.count("quotient_divides") == 1);
  REQUIRE(res.invariants.count("partition_of_identity") == 1);

  CMat sum = res.pencil.mats[1] + res.pencil.mats[2] + res.pencil.mats[3];
  CHECK(max_abs(sum - CMat::eye(pencil_dim(res.pencil))) <= 1e-10);
}
