#include <doctest.h>

#include <set>

#include "cstar/bitcommit.hpp"
#include "cstar/classical.hpp"
#include "cstar/random.hpp"
#include "cstar/scenario.hpp"
#include "cstar/serialize.hpp"

using namespace cstar;

namespace {

Json minimal_scenario_json() {
  return Json{{"name", "demo"},
              {"checker", "nosignal"},
              {"claim", "tensor split factors satisfy no-signaling"},
              {"params", Json{{"mode", "tensor"},
                              {"left_dim", 2},
                              {"right_dim", 2},
                              {"trials", 5},
                              {"seed", 2}}},
              {"expect", "pass"}};
}

std::filesystem::path bundled_dir() { return CSTAR_SCENARIO_DIR; }

}  // namespace

TEST_CASE("scenario parsing accepts the minimal form and rejects malformed input") {
  const Scenario s = scenario_from_json(minimal_scenario_json());
  CHECK(s.name == "demo");
  CHECK(s.checker == "nosignal");
  CHECK(s.expect == "pass");
  CHECK(s.params.at("trials").get<int>() == 5);

  Json bad = minimal_scenario_json();
  bad.erase("name");
  CHECK_THROWS_AS(scenario_from_json(bad), ConfigError);

  bad = minimal_scenario_json();
  bad["checker"] = "not-a-checker";
  CHECK_THROWS_AS(scenario_from_json(bad), ConfigError);

  bad = minimal_scenario_json();
  bad["expect"] = "maybe";
  CHECK_THROWS_AS(scenario_from_json(bad), ConfigError);

  bad = minimal_scenario_json();
  bad["params"] = Json::array();
  CHECK_THROWS_AS(scenario_from_json(bad), ConfigError);

  // Round trip through the emitter.
  const Scenario again = scenario_from_json(to_json(s));
  CHECK(again.name == s.name);
  CHECK(again.params == s.params);
}

TEST_CASE("known checker list matches the dispatch table") {
  const auto ids = known_checkers();
  const std::set<std::string> want{
      "nosignal",           "broadcast-classical",
      "broadcast-commuting", "no-broadcast-search",
      "gns",                "ambiguous-mixture",
      "bitcommit-honest",   "bitcommit-epr",
      "bitcommit-separable-search", "chsh",
      "classical-update"};
  CHECK(std::set<std::string>(ids.begin(), ids.end()) == want);
}

TEST_CASE("matrix serialization round trips") {
  Rng rng(derive_seed(21, 0));
  const Mat a = rng.ginibre(3, 3);
  const Mat b = matrix_from_json(to_json(a));
  CHECK((a - b).norm() == 0.0);  // doubles survive json verbatim

  CHECK_THROWS_AS(matrix_from_json(Json{{"re", Json::array()}}), ConfigError);
  Json mangled = to_json(a);
  mangled["im"][0].erase(1);
  CHECK_THROWS_AS(matrix_from_json(mangled), ConfigError);
}

TEST_CASE("check report serialization round trips") {
  CheckReport r;
  r.check = "demo-check";
  r.verdict = Verdict::Evidence;
  r.seed = 17;
  r.trials = 9;
  r.add("alpha", 1.25e-10);
  r.add("beta", 0.5);
  r.witnesses.push_back("witness line");

  const CheckReport s = check_report_from_json(to_json(r));
  CHECK(s.check == r.check);
  CHECK(s.verdict == Verdict::Evidence);
  CHECK(s.seed == 17);
  CHECK(s.trials == 9);
  CHECK(s.residual("alpha") == 1.25e-10);
  CHECK(s.residual("beta") == 0.5);
  CHECK(s.witnesses == r.witnesses);

  CHECK_THROWS_AS(check_report_from_json(Json{{"check", "x"}}), ConfigError);
}

TEST_CASE("transcript serialization round trips") {
  Transcript t;
  t.bit = 1;
  t.announced_bit = 0;
  t.rounds = 250;
  t.strategy = "lying";
  t.accept = false;
  t.agreement_rate = 0.51;
  t.epsilon = 0.01;
  t.threshold = 0.9;
  t.seed = 99;
  t.outcome_tally = {120, 130};
  t.marginal_residual = 1e-15;
  t.conditional_residual = 2e-15;

  const Transcript u = transcript_from_json(to_json(t));
  CHECK(u.bit == t.bit);
  CHECK(u.announced_bit == t.announced_bit);
  CHECK(u.rounds == t.rounds);
  CHECK(u.strategy == t.strategy);
  CHECK(u.accept == t.accept);
  CHECK(u.agreement_rate == t.agreement_rate);
  CHECK(u.threshold == t.threshold);
  CHECK(u.seed == t.seed);
  CHECK(u.outcome_tally == t.outcome_tally);
  CHECK(u.marginal_residual == t.marginal_residual);

  CHECK_THROWS_AS(transcript_from_json(Json{{"bit", 0}}), ConfigError);
}

TEST_CASE("measure and phase space serialization") {
  const Measure mu = make_measure(RVec{{0.25, 0.25, 0.5}});
  const Measure nu = measure_from_json(to_json(mu));
  CHECK((mu.weights - nu.weights).norm() == 0.0);
  CHECK_THROWS_AS(measure_from_json(Json{{"weights", "x"}}), ConfigError);

  const Json j = to_json(make_phase_space(3));
  CHECK(j.at("points").size() == 3);
}

TEST_CASE("run_scenario produces a matched report and deterministic bytes") {
  const Scenario s = scenario_from_json(minimal_scenario_json());
  const RunReport a = run_scenario(s);
  CHECK(a.verdict == "pass");
  CHECK(a.matched);
  CHECK(exit_code(a) == 0);
  CHECK(a.seed == 2);
  CHECK(a.tool_version == std::string(kToolVersion));
  CHECK_FALSE(a.is_transcript);

  const RunReport b = run_scenario(s);
  CHECK(to_string(to_json(a)) == to_string(to_json(b)));

  // Timing must stay out of the canonical form even when measured.
  const Json timed = to_json(a, true);
  CHECK(timed.contains("wall_seconds"));
  CHECK_FALSE(to_json(a).contains("wall_seconds"));
}

TEST_CASE("expectation mismatch flips matched and the exit code") {
  Json j = minimal_scenario_json();
  j["expect"] = "fail";
  const RunReport rep = run_scenario(scenario_from_json(j));
  CHECK(rep.verdict == "pass");
  CHECK_FALSE(rep.matched);
  CHECK(exit_code(rep) == 1);

  j["expect"] = "";
  const RunReport open_ended = run_scenario(scenario_from_json(j));
  CHECK(open_ended.matched);  // no expectation means nothing to contradict
}

TEST_CASE("run options override seed and reject bad tolerances") {
  const Scenario s = scenario_from_json(minimal_scenario_json());
  RunOptions opt;
  opt.seed_override = 77;
  const RunReport rep = run_scenario(s, opt);
  CHECK(rep.seed == 77);
  CHECK(rep.report.seed == 77);

  RunOptions bad;
  bad.tol_override = -1.0;
  CHECK_THROWS_AS(run_scenario(s, bad), ConfigError);
}

TEST_CASE("markdown rendering names the verdict and every residual") {
  const Scenario s = scenario_from_json(minimal_scenario_json());
  const RunReport rep = run_scenario(s);
  const std::string md = to_markdown(rep);
  CHECK(md.find("pass") != std::string::npos);
  CHECK(md.find(s.claim) != std::string::npos);
  for (const auto& [name, value] : rep.report.residuals) {
    (void)value;
    CHECK(md.find(name) != std::string::npos);
  }
}

TEST_CASE("transcript scenarios report accept/reject verdicts") {
  const Json j{{"name", "honest-commit"},
               {"checker", "bitcommit-honest"},
               {"claim", "honest unveiling passes the agreement test"},
               {"params", Json{{"bit", 0},
                               {"rounds", 400},
                               {"epsilon", 0.01},
                               {"seed", 42},
                               {"mixture_seed", 11}}},
               {"expect", "accept"}};
  const RunReport rep = run_scenario(scenario_from_json(j));
  CHECK(rep.is_transcript);
  CHECK(rep.verdict == "accept");
  CHECK(rep.matched);
  CHECK(rep.transcript.rounds == 400);
  const std::string md = to_markdown(rep);
  CHECK(md.find("agreement rate") != std::string::npos);
  CHECK(md.find("accept") != std::string::npos);
}

TEST_CASE("bundled scenario files load, validate, and stay sorted") {
  const auto files = list_scenarios(bundled_dir());
  REQUIRE(files.size() >= 22);
  CHECK(std::is_sorted(files.begin(), files.end()));
  std::set<std::string> names;
  for (const auto& f : files) {
    const Scenario s = load_scenario(f);  // throws on schema violations
    CHECK_FALSE(s.claim.empty());
    names.insert(s.name);
  }
  CHECK(names.size() == files.size());  // scenario names are unique

  CHECK_THROWS_AS(list_scenarios(bundled_dir() / "does-not-exist"),
                  ConfigError);
}

TEST_CASE("fast bundled scenarios run and match their expectations") {
  // The optimizer-heavy files (search ansatz fits, settings sweeps) are
  // exercised by the acceptance binary; here we run everything cheap.
  const std::set<std::string> heavy{"06-no-broadcast-conjugate.json",
                                    "17-bitcommit-separable-search.json",
                                    "20-chsh-commit-bound.json"};
  for (const auto& f : list_scenarios(bundled_dir())) {
    if (heavy.count(f.filename().string())) continue;
    CAPTURE(f.filename().string());
    const RunReport rep = run_scenario(load_scenario(f));
    CHECK(rep.matched);
    CHECK(exit_code(rep) == 0);
  }
}
