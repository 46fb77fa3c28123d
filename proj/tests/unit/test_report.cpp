#include <catch2/catch_amalgamated.hpp>

#include <hypdet/construct.hpp>
#include <hypdet/report.hpp>

using namespace hypdet;

TEST_CASE("config serialization round trip") {
  Config cfg;
  cfg.n_samples = 50;
  cfg.sos_tol = 2.5e-7;
  cfg.seed = 1234567890123ULL;
  Config back = config_from_json(config_to_json(cfg));
  CHECK(back.n_samples == 50);
  CHECK(back.sos_tol == 2.5e-7);
  CHECK(back.seed == 1234567890123ULL);
  CHECK(back.real_tol == cfg.real_tol);
  CHECK(back.grid_size == cfg.grid_size);
}

TEST_CASE("partial config overrides keep the base values") {
  Config base;
  base.n_samples = 77;
  Config got = config_from_json(json{{"sos_max_iters", 900}}, base);
  CHECK(got.sos_max_iters == 900);
  CHECK(got.n_samples == 77);
}

TEST_CASE("unknown config keys are rejected") {
  CHECK_THROWS_AS(config_from_json(json{{"samples", 10}}), std::invalid_argument);
}

TEST_CASE("invalid config values are rejected") {
  CHECK_THROWS_AS(config_from_json(json{{"n_samples", -3}}), std::invalid_argument);
}

TEST_CASE("pencil serialization round trip preserves every entry") {
  Pencil P = worked_example().pencil;
  json j = pencil_to_json(P);
  CHECK(j["k"] == 3);
  REQUIRE(j.contains("split"));

  json reparsed = json::parse(j.dump(2));  // text cycle must not perturb doubles
  Pencil back = pencil_from_json(reparsed);
  REQUIRE(back.mats.size() == 3);
  for (int t = 0; t < 3; ++t) CHECK(max_abs(back.mats[t] - P.mats[t]) == 0.0);
  CHECK(back.c == P.c);
  REQUIRE(back.Bp);
  CHECK(max_abs(*back.Bp - *P.Bp) == 0.0);
}

TEST_CASE("pencil parsing rejects inconsistent declarations") {
  json j = pencil_to_json(worked_example().pencil);
  j["k"] = 5;
  CHECK_THROWS_AS(pencil_from_json(j), std::invalid_argument);
  CHECK_THROWS_AS(pencil_from_json(json{{"k", 2}}), std::invalid_argument);
}

TEST_CASE("verdict serialization carries the witness only on failure") {
  Verdict good;
  good.holds = true;
  good.samples_checked = 200;
  json jg = verdict_to_json(good);
  CHECK(!jg.contains("witness_x"));

  Verdict bad;
  bad.holds = false;
  bad.witness_x = {0.1, -0.2, 0.3};
  bad.witness_root = cd(0.0, 0.5);
  json jb = verdict_to_json(bad);
  REQUIRE(jb.contains("witness_x"));
  CHECK(jb["witness_root"][1] == 0.5);
}

TEST_CASE("report skeleton has the contract keys and a stable dump") {
  Config cfg;
  std::map<std::string, Invariant> inv;
  inv["partition_of_identity"] = Invariant{true, 3.2e-16};
  std::vector<StageRecord> stages = {{"restriction", {{"degree", 3.0}}}};
  json rep = make_report("x0 + x1", stages_to_json(stages), invariants_to_json(inv), cfg);
  for (const char* key : {"input", "stages", "invariants", "seed", "config"})
    REQUIRE(rep.contains(key));
  CHECK(rep["stages"][0]["name"] == "restriction");
  CHECK(rep["invariants"]["partition_of_identity"]["pass"] == true);

  std::string once = dump_report(rep);
  std::string twice = dump_report(
      make_report("x0 + x1", stages_to_json(stages), invariants_to_json(inv), cfg));
  CHECK(once == twice);
  REQUIRE(!once.empty());
  CHECK(once.back() == '\n');
}
