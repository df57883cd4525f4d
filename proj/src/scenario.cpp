#include "cstar/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "cstar/gns.hpp"
#include "cstar/random.hpp"
#include "cstar/theorems.hpp"

namespace cstar {
namespace {

int get_int(const Json& p, const char* key, int fallback) {
  if (!p.contains(key)) return fallback;
  if (!p.at(key).is_number_integer())
    throw ConfigError(std::string("parameter '") + key + "' must be an integer");
  return p.at(key).get<int>();
}

double get_num(const Json& p, const char* key, double fallback) {
  if (!p.contains(key)) return fallback;
  if (!p.at(key).is_number())
    throw ConfigError(std::string("parameter '") + key + "' must be a number");
  return p.at(key).get<double>();
}

std::uint64_t get_seed(const Json& p, const char* key, std::uint64_t fallback) {
  if (!p.contains(key)) return fallback;
  if (!p.at(key).is_number_unsigned() && !p.at(key).is_number_integer())
    throw ConfigError(std::string("parameter '") + key + "' must be a seed");
  return p.at(key).get<std::uint64_t>();
}

std::string get_str(const Json& p, const char* key,
                    const std::string& fallback) {
  if (!p.contains(key)) return fallback;
  if (!p.at(key).is_string())
    throw ConfigError(std::string("parameter '") + key + "' must be a string");
  return p.at(key).get<std::string>();
}

// Algebra selection shared by several checkers: either a block profile
// [[n, m], ...], a full matrix dimension, or a diagonal dimension.
StarAlgebra algebra_from_params(const Json& p) {
  if (p.contains("blocks")) {
    std::vector<std::pair<Eigen::Index, Eigen::Index>> blocks;
    for (const Json& b : p.at("blocks")) {
      if (!b.is_array() || b.size() != 2)
        throw ConfigError("'blocks' entries must be [irrep, multiplicity]");
      blocks.emplace_back(b.at(0).get<Eigen::Index>(),
                          b.at(1).get<Eigen::Index>());
    }
    return block_diagonal_algebra(blocks);
  }
  if (p.contains("full_dim")) return full_matrix_algebra(get_int(p, "full_dim", 2));
  if (p.contains("diagonal_dim"))
    return diagonal_algebra(get_int(p, "diagonal_dim", 2));
  return full_matrix_algebra(2);
}

Mat point_density(Eigen::Index dim, Eigen::Index at = 0) {
  Mat m = Mat::Zero(dim, dim);
  m(at, at) = 1.0;
  return m;
}

CheckReport run_nosignal(const Json& p, std::uint64_t seed, double tol) {
  const std::string mode = get_str(p, "mode", "tensor");
  const int trials = get_int(p, "trials", 20);
  if (mode == "tensor") {
    const int dl = get_int(p, "left_dim", 2);
    const int dr = get_int(p, "right_dim", 2);
    const StarAlgebra left = tensor_embed_left(full_matrix_algebra(dl), dr);
    const StarAlgebra right = tensor_embed_right(full_matrix_algebra(dr), dl);
    return check_nosignaling_equivalence(left, right, trials, seed, tol);
  }
  if (mode == "clash") {
    const StarAlgebra a = full_matrix_algebra(get_int(p, "dim", 2));
    return check_nosignaling_equivalence(a, a, trials, seed, tol);
  }
  throw ConfigError("nosignal: unknown mode '" + mode + "'");
}

CheckReport run_broadcast_classical(const Json& p, std::uint64_t seed) {
  const Eigen::Index points = get_int(p, "points", 3);
  const int trials = get_int(p, "trials", 100);
  if (points < 2 || trials < 1)
    throw ConfigError("broadcast-classical: need points >= 2 and trials >= 1");
  const Channel t = classical_broadcaster(points);
  const TensorSplit split{points, points};

  // Both output legs must reproduce any diagonal input, whatever rides
  // along on the ready leg.
  double marginal = 0.0;
  for (int trial = 0; trial < trials; ++trial) {
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(trial)));
    RVec w(points);
    for (Eigen::Index i = 0; i < points; ++i) w(i) = rng.uniform() + 1e-6;
    w /= w.sum();
    const State in{Mat(w.cast<Cx>().asDiagonal())};
    const State out =
        schrodinger_apply(t, product_state(in, State{rng.density(points)}));
    for (Side side : {Side::Left, Side::Right}) {
      marginal = std::max(
          marginal, (restrict_state(out, split, side).density - in.density)
                        .norm());
    }
  }

  // Heisenberg characterization on indicator pairs: the broadcaster
  // pulls chi_i (x) chi_j back to (chi_i chi_j) (x) I.
  double heisenberg = 0.0;
  const Mat eye = Mat::Identity(points, points);
  for (Eigen::Index i = 0; i < points; ++i) {
    for (Eigen::Index j = 0; j < points; ++j) {
      const Mat fg = heisenberg_apply(t, kron(point_density(points, i),
                                              point_density(points, j)));
      const Mat expected =
          i == j ? Mat(kron(point_density(points, i), eye)) : Mat::Zero(points * points, points * points);
      heisenberg = std::max(heisenberg, (fg - expected).norm());
    }
  }

  CheckReport rep;
  rep.check = "broadcast-classical";
  rep.seed = seed;
  rep.trials = trials;
  rep.add("max_marginal_residual", marginal);
  rep.add("max_heisenberg_residual", heisenberg);
  rep.add("points", static_cast<double>(points));
  rep.verdict = marginal < 1e-12 && heisenberg < 1e-12 ? Verdict::Pass
                                                       : Verdict::Fail;
  return rep;
}

// A commuting pair drawn from a shared random eigenbasis.
std::pair<State, State> commuting_pair(Eigen::Index dim, std::uint64_t seed) {
  Rng rng(seed);
  const Mat u = rng.haar_unitary(dim);
  auto spectrum = [&] {
    RVec w(dim);
    for (Eigen::Index i = 0; i < dim; ++i) w(i) = rng.uniform() + 1e-3;
    w /= w.sum();
    return Mat(u * Mat(w.cast<Cx>().asDiagonal()) * u.adjoint());
  };
  return {State{spectrum()}, State{spectrum()}};
}

CheckReport run_broadcast_commuting(const Json& p, std::uint64_t seed,
                                    double tol) {
  const Eigen::Index dim = get_int(p, "dim", 3);
  if (dim < 2) throw ConfigError("broadcast-commuting: need dim >= 2");
  const auto [s0, s1] = commuting_pair(dim, seed);
  const Channel t = broadcast_commuting(s0, s1, tol);
  const double fid =
      broadcast_fidelity(t, s0, s1, State{point_density(dim)});

  CheckReport rep;
  rep.check = "broadcast-commuting";
  rep.seed = seed;
  rep.trials = 1;
  rep.add("min_marginal_fidelity", fid);
  rep.add("commutator_norm", comm(s0.density, s1.density).norm());
  rep.verdict = fid >= 1.0 - 1e-9 ? Verdict::Pass : Verdict::Fail;
  return rep;
}

CheckReport run_no_broadcast_search(const Json& p, std::uint64_t seed) {
  const std::string pair = get_str(p, "pair", "conjugate");
  const int rank = get_int(p, "rank", 4);
  const int restarts = get_int(p, "restarts", 6);
  const int iterations = get_int(p, "iterations", 150);
  State r0{point_density(2)}, r1{point_density(2)};
  if (pair == "conjugate") {
    Vec plus(2);
    plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    r1 = State{Mat(plus * plus.adjoint())};
  } else if (pair == "orthogonal") {
    r1 = State{point_density(2, 1)};
  } else if (pair == "commuting") {
    const Eigen::Index dim = get_int(p, "dim", 2);
    std::tie(r0, r1) = commuting_pair(dim, get_seed(p, "pair_seed", 14));
  } else {
    throw ConfigError("no-broadcast-search: unknown pair '" + pair + "'");
  }
  return no_broadcast_search(r0, r1, rank, restarts, iterations, seed);
}

CheckReport run_gns(const Json& p, std::uint64_t seed, double tol) {
  const StarAlgebra alg = algebra_from_params(p);
  const Eigen::Index n = alg.ambient_dim();
  Rng rng(seed);
  const std::string kind = get_str(p, "state", "pure");
  Mat density;
  if (kind == "pure") density = rng.pure_density(n);
  else if (kind == "mixed") density = rng.density(n);
  else throw ConfigError("gns: unknown state kind '" + kind + "'");
  const State rho{density};

  const GnsTriple g = gns_construct(alg, rho, tol);
  const BlockStructure bs = wedderburn_decompose(alg, tol);
  const bool pure = is_pure_on(rho, bs);
  const bool irreducible = is_irreducible(g);

  // Independent carrier-dimension oracle: the rank of the algebra basis
  // compressed against the square root of the density.  Eigenvalues at
  // numerical zero are clamped before the root so their sqrt-sized
  // noise cannot read as an extra carrier direction.
  Eigen::SelfAdjointEigenSolver<Mat> es(density);
  RVec clamped = es.eigenvalues();
  const double top = clamped.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < clamped.size(); ++i)
    clamped(i) = clamped(i) > 1e-12 * top ? std::sqrt(clamped(i)) : 0.0;
  const Mat root = es.eigenvectors() * clamped.cast<Cx>().asDiagonal() *
                   es.eigenvectors().adjoint();
  Mat stacked(alg.dim(), n * n);
  for (Eigen::Index k = 0; k < alg.dim(); ++k)
    stacked.row(k) = vectorize(alg.basis()[static_cast<std::size_t>(k)] * root)
                         .transpose();
  const auto sv = stacked.jacobiSvd().singularValues();
  Eigen::Index oracle = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > 1e-8 * sv(0)) ++oracle;

  CheckReport rep;
  rep.check = "gns";
  rep.seed = seed;
  rep.trials = 1;
  rep.add("carrier_dim", static_cast<double>(g.carrier_dim));
  rep.add("carrier_oracle", static_cast<double>(oracle));
  rep.add("pure_on_algebra", pure ? 1.0 : 0.0);
  rep.add("irreducible", irreducible ? 1.0 : 0.0);
  rep.witnesses.push_back("construction certified its homomorphism, adjoint, "
                          "expectation and cyclicity residuals internally");
  rep.verdict = (pure == irreducible) && g.carrier_dim == oracle
                    ? Verdict::Pass
                    : Verdict::Fail;
  return rep;
}

CheckReport run_ambiguous_mixture(const Json& p, std::uint64_t seed,
                                  double tol) {
  const StarAlgebra alg = algebra_from_params(p);
  CheckReport rep;
  rep.check = "ambiguous-mixture";
  rep.seed = seed;
  rep.trials = 1;

  if (p.contains("expect_refusal") && p.at("expect_refusal").get<bool>()) {
    try {
      ambiguous_mixture(alg, seed, tol);
    } catch (const AbelianAlgebra& e) {
      rep.add("refused", 1.0);
      rep.witnesses.push_back(e.what());
      rep.verdict = Verdict::Pass;
      return rep;
    }
    rep.add("refused", 0.0);
    rep.witnesses.push_back(
        "an abelian algebra produced an ambiguous mixture");
    rep.verdict = Verdict::Fail;
    return rep;
  }

  const AmbiguousMixture mix = ambiguous_mixture(alg, seed, tol);
  const double p12 = transition_probability(mix.omega1, mix.omega2, alg);
  const double p1p = transition_probability(mix.omega1, mix.omega_plus, alg);
  rep.add("mixture_residual", mix.mixture_residual);
  rep.add("pair_orthogonality", p12);
  rep.add("cross_overlap", p1p);
  rep.add("noncommutativity_witness", mix.witness);
  rep.verdict = mix.mixture_residual < 1e-9 && p12 < 1e-9 &&
                        std::abs(p1p - 0.5) < 1e-9
                    ? Verdict::Pass
                    : Verdict::Fail;
  return rep;
}

CommitmentPair commit_pair_from(const Json& p, double tol) {
  const StarAlgebra alg = algebra_from_params(p);
  const AmbiguousMixture mix =
      ambiguous_mixture(alg, get_seed(p, "mixture_seed", 11), tol);
  return build_commit_states(alg, mix);
}

Transcript run_bitcommit_honest(const Json& p, std::uint64_t seed,
                                double tol) {
  const CommitmentPair pair = commit_pair_from(p, tol);
  const int bit = get_int(p, "bit", 0);
  const int announce = get_int(p, "announce", -1);
  return run_honest(pair, bit, get_int(p, "rounds", 1000),
                    get_num(p, "epsilon", 0.01), seed, announce);
}

Transcript run_bitcommit_epr(const Json& p, std::uint64_t seed, double tol) {
  const CommitmentPair pair = commit_pair_from(p, tol);
  return run_epr_attack(pair, get_int(p, "revealed_bit", 0),
                        get_int(p, "rounds", 1000), seed,
                        get_num(p, "epsilon", 0.01));
}

CheckReport run_bitcommit_separable(const Json& p, std::uint64_t seed,
                                    double tol) {
  const CommitmentPair pair = commit_pair_from(p, tol);
  return separable_attack_search(pair, get_int(p, "components", 4),
                                 get_int(p, "restarts", 3),
                                 get_int(p, "iterations", 100), seed);
}

CheckReport run_chsh(const Json& p, std::uint64_t seed, double tol) {
  const std::string mode = get_str(p, "mode", "singlet-optimal");
  if (mode == "singlet-optimal") {
    Vec s(4);
    s << 0, 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0), 0;
    const State singlet{Mat(s * s.adjoint())};
    const Mat z = pauli_z(), x = pauli_x();
    const ObservablePair alice = make_observable_pair(z, x);
    const ObservablePair bob = make_observable_pair(
        -(z + x) / std::sqrt(2.0), (x - z) / std::sqrt(2.0));
    const double value = chsh_value(singlet, alice, bob);
    CheckReport rep;
    rep.check = "chsh-singlet";
    rep.seed = seed;
    rep.trials = 1;
    rep.add("value", value);
    rep.add("tsirelson_deviation", std::abs(value - 2.0 * std::sqrt(2.0)));
    rep.verdict = std::abs(value - 2.0 * std::sqrt(2.0)) < 1e-6
                      ? Verdict::Pass
                      : Verdict::Fail;
    return rep;
  }
  if (mode == "product-sweep")
    return chsh_product_sweep(get_int(p, "trials", 2000), seed);
  if (mode == "commit-bound") {
    const CommitmentPair pair = commit_pair_from(p, tol);
    const int restarts = get_int(p, "restarts", 6);
    const int iterations = get_int(p, "iterations", 150);
    const CheckReport r0 =
        chsh_settings_search(pair.rho0, restarts, iterations, seed);
    const CheckReport r1 =
        chsh_settings_search(pair.rho1, restarts, iterations, seed);
    CheckReport rep;
    rep.check = "chsh-commit-bound";
    rep.seed = seed;
    rep.trials = restarts;
    rep.add("best_value_bit0", r0.residual("best_value"));
    rep.add("best_value_bit1", r1.residual("best_value"));
    rep.verdict = r0.residual("best_value") <= 2.0 + 1e-9 &&
                          r1.residual("best_value") <= 2.0 + 1e-9
                      ? Verdict::Pass
                      : Verdict::Fail;
    return rep;
  }
  throw ConfigError("chsh: unknown mode '" + mode + "'");
}

CheckReport run_classical_update(const Json& p, std::uint64_t seed) {
  const std::string mode = get_str(p, "mode", "bayes");
  if (mode == "bayes") {
    const Eigen::Index points = get_int(p, "points", 5);
    const int trials = get_int(p, "trials", 1000);
    if (points < 2 || trials < 1)
      throw ConfigError("classical-update: need points >= 2, trials >= 1");
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
      Rng rng(derive_seed(seed, static_cast<std::uint64_t>(t)));
      RVec w(points);
      for (Eigen::Index i = 0; i < points; ++i) w(i) = rng.uniform() + 1e-3;
      const Measure mu = make_measure(w / w.sum());
      std::vector<Eigen::Index> event;
      for (Eigen::Index i = 0; i < points; ++i)
        if (rng.uniform() < 0.5) event.push_back(i);
      if (event.empty())
        event.push_back(static_cast<Eigen::Index>(rng.integer(points)));
      RVec g(points);
      for (Eigen::Index i = 0; i < points; ++i) g(i) = rng.normal();

      // Independent path: compress the diagonal density with the event
      // projection and renormalize.
      const Mat density = Mat(mu.weights.cast<Cx>().asDiagonal());
      const Mat chi = Mat(indicator(points, event).cast<Cx>().asDiagonal());
      const Mat cut = chi * density * chi;
      const double oracle =
          std::real((cut * Mat(g.cast<Cx>().asDiagonal())).trace() /
                    cut.trace());
      worst = std::max(worst,
                       std::abs(conditional_update(mu, event, g) - oracle));
    }
    CheckReport rep;
    rep.check = "classical-bayes";
    rep.seed = seed;
    rep.trials = trials;
    rep.add("max_deviation", worst);
    rep.add("points", static_cast<double>(points));
    rep.verdict = worst < 1e-12 ? Verdict::Pass : Verdict::Fail;
    return rep;
  }
  if (mode == "gelfand") {
    const Eigen::Index dim = get_int(p, "dim", 4);
    if (dim < 2) throw ConfigError("classical-update: need dim >= 2");
    Rng rng(seed);
    const StarAlgebra alg = generate_algebra({rng.hermitian(dim)}, dim);
    const GelfandTransform gt = gelfand_transform(alg);
    double worst = 0.0;
    for (const Mat& b : alg.basis()) {
      Mat rebuilt = Mat::Zero(dim, dim);
      for (const Mat& proj : gt.projections)
        rebuilt += (proj * b).trace() / proj.trace() * proj;
      worst = std::max(worst, (rebuilt - b).norm());
    }
    CheckReport rep;
    rep.check = "classical-gelfand";
    rep.seed = seed;
    rep.trials = 1;
    rep.add("round_trip_residual", worst);
    rep.add("characters", static_cast<double>(gt.space.points.size()));
    rep.add("character_deficit",
            static_cast<double>(alg.dim() -
                                static_cast<Eigen::Index>(
                                    gt.space.points.size())));
    rep.verdict = worst < 1e-10 && static_cast<Eigen::Index>(
                                       gt.space.points.size()) == alg.dim()
                      ? Verdict::Pass
                      : Verdict::Fail;
    return rep;
  }
  throw ConfigError("classical-update: unknown mode '" + mode + "'");
}

}  // namespace

const std::vector<std::string>& known_checkers() {
  static const std::vector<std::string> ids{
      "nosignal",         "broadcast-classical",
      "broadcast-commuting", "no-broadcast-search",
      "gns",              "ambiguous-mixture",
      "bitcommit-honest", "bitcommit-epr",
      "bitcommit-separable-search", "chsh",
      "classical-update"};
  return ids;
}

Scenario scenario_from_json(const Json& j) {
  Scenario s;
  if (!j.is_object()) throw ConfigError("scenario: expected an object");
  if (!j.contains("name") || !j.at("name").is_string())
    throw ConfigError("scenario: missing string field 'name'");
  s.name = j.at("name").get<std::string>();
  if (!j.contains("checker") || !j.at("checker").is_string())
    throw ConfigError("scenario: missing string field 'checker'");
  s.checker = j.at("checker").get<std::string>();
  const auto& ids = known_checkers();
  if (std::find(ids.begin(), ids.end(), s.checker) == ids.end())
    throw ConfigError("scenario: unknown checker '" + s.checker + "'");
  s.claim = j.value("claim", std::string{});
  if (j.contains("params")) {
    if (!j.at("params").is_object())
      throw ConfigError("scenario: 'params' must be an object");
    s.params = j.at("params");
  }
  s.expect = j.value("expect", std::string{});
  static const std::vector<std::string> verdicts{"", "pass", "fail",
                                                 "evidence", "accept",
                                                 "reject"};
  if (std::find(verdicts.begin(), verdicts.end(), s.expect) == verdicts.end())
    throw ConfigError("scenario: unknown expected verdict '" + s.expect + "'");
  return s;
}

Scenario load_scenario(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot open scenario file " + file.string());
  Json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("scenario file " + file.string() + ": " + e.what());
  }
  return scenario_from_json(j);
}

Json to_json(const Scenario& s) {
  Json j{{"name", s.name}, {"checker", s.checker}, {"claim", s.claim},
         {"params", s.params}};
  if (!s.expect.empty()) j["expect"] = s.expect;
  return j;
}

RunReport run_scenario(const Scenario& s, const RunOptions& opt) {
  RunReport out;
  out.scenario = s;
  out.seed = opt.seed_override
                 ? *opt.seed_override
                 : get_seed(s.params, "seed", 2);
  const double tol = opt.tol_override.value_or(kTolAlgebra);
  if (!(tol > 0))
    throw ConfigError("tolerance override must be positive");

  const auto start = std::chrono::steady_clock::now();
  if (s.checker == "nosignal") {
    out.report = run_nosignal(s.params, out.seed, tol);
  } else if (s.checker == "broadcast-classical") {
    out.report = run_broadcast_classical(s.params, out.seed);
  } else if (s.checker == "broadcast-commuting") {
    out.report = run_broadcast_commuting(s.params, out.seed, tol);
  } else if (s.checker == "no-broadcast-search") {
    out.report = run_no_broadcast_search(s.params, out.seed);
  } else if (s.checker == "gns") {
    out.report = run_gns(s.params, out.seed, tol);
  } else if (s.checker == "ambiguous-mixture") {
    out.report = run_ambiguous_mixture(s.params, out.seed, tol);
  } else if (s.checker == "bitcommit-honest") {
    out.transcript = run_bitcommit_honest(s.params, out.seed, tol);
    out.is_transcript = true;
  } else if (s.checker == "bitcommit-epr") {
    out.transcript = run_bitcommit_epr(s.params, out.seed, tol);
    out.is_transcript = true;
  } else if (s.checker == "bitcommit-separable-search") {
    out.report = run_bitcommit_separable(s.params, out.seed, tol);
  } else if (s.checker == "chsh") {
    out.report = run_chsh(s.params, out.seed, tol);
  } else if (s.checker == "classical-update") {
    out.report = run_classical_update(s.params, out.seed);
  } else {
    throw ConfigError("unknown checker '" + s.checker + "'");
  }
  out.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();

  out.verdict = out.is_transcript
                    ? (out.transcript.accept ? "accept" : "reject")
                    : to_string(out.report.verdict);
  out.matched = s.expect.empty() || s.expect == out.verdict;
  return out;
}

Json to_json(const RunReport& r, bool include_timing) {
  Json j{{"scenario", to_json(r.scenario)},
         {"tool_version", r.tool_version},
         {"seed", r.seed},
         {"result_kind", r.is_transcript ? "transcript" : "report"},
         {"result", r.is_transcript ? to_json(r.transcript)
                                    : to_json(r.report)},
         {"verdict", r.verdict},
         {"matched_expectation", r.matched}};
  if (include_timing) j["wall_seconds"] = r.wall_seconds;
  return j;
}

std::string to_markdown(const RunReport& r) {
  std::string md = "# " + r.scenario.name + "\n\n";
  if (!r.scenario.claim.empty()) md += r.scenario.claim + "\n\n";
  md += "- checker: `" + r.scenario.checker + "`\n";
  md += "- verdict: **" + r.verdict + "**";
  if (!r.scenario.expect.empty())
    md += r.matched ? " (as expected)" : " (expected " + r.scenario.expect + ")";
  md += "\n- seed: " + std::to_string(r.seed) + "\n";
  md += "- tool version: " + r.tool_version + "\n\n";

  char buf[64];
  if (r.is_transcript) {
    const Transcript& t = r.transcript;
    md += "| field | value |\n|---|---|\n";
    md += "| strategy | " + t.strategy + " |\n";
    md += "| committed bit | " + std::to_string(t.bit) + " |\n";
    md += "| announced bit | " + std::to_string(t.announced_bit) + " |\n";
    md += "| rounds | " + std::to_string(t.rounds) + " |\n";
    std::snprintf(buf, sizeof(buf), "%.12g", t.agreement_rate);
    md += "| agreement rate | " + std::string(buf) + " |\n";
    std::snprintf(buf, sizeof(buf), "%.12g", t.threshold);
    md += "| acceptance threshold | " + std::string(buf) + " |\n";
    std::snprintf(buf, sizeof(buf), "%.3g", t.marginal_residual);
    md += "| marginal residual | " + std::string(buf) + " |\n";
    std::snprintf(buf, sizeof(buf), "%.3g", t.conditional_residual);
    md += "| conditional residual | " + std::string(buf) + " |\n";
  } else {
    md += "| residual | value |\n|---|---|\n";
    for (const auto& [name, value] : r.report.residuals) {
      std::snprintf(buf, sizeof(buf), "%.12g", value);
      md += "| " + name + " | " + std::string(buf) + " |\n";
    }
    if (!r.report.witnesses.empty()) {
      md += "\n";
      for (const std::string& w : r.report.witnesses) md += "- " + w + "\n";
    }
  }
  return md;
}

int exit_code(const RunReport& r) { return r.matched ? 0 : 1; }

std::vector<std::filesystem::path> list_scenarios(
    const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir))
    throw ConfigError("scenario directory not found: " + dir.string());
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".json")
      files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  return files;
}

}  // namespace cstar
