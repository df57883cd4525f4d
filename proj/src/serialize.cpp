#include "cstar/serialize.hpp"

namespace cstar {
namespace {

Verdict verdict_from_string(const std::string& s) {
  if (s == "pass") return Verdict::Pass;
  if (s == "fail") return Verdict::Fail;
  if (s == "evidence") return Verdict::Evidence;
  throw ConfigError("unknown verdict: " + s);
}

// Missing keys and type mismatches are caller input problems, so they
// surface as ConfigError rather than raw json exceptions.
template <typename F>
auto parse_or_config_error(const char* what, F&& body) {
  try {
    return body();
  } catch (const Json::exception& e) {
    throw ConfigError(std::string(what) + ": " + e.what());
  }
}

}  // namespace

Json to_json(const Mat& m) {
  Json re = Json::array(), im = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json rrow = Json::array(), irow = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      rrow.push_back(std::real(m(i, j)));
      irow.push_back(std::imag(m(i, j)));
    }
    re.push_back(std::move(rrow));
    im.push_back(std::move(irow));
  }
  return Json{{"dim", {m.rows(), m.cols()}},
              {"re", std::move(re)},
              {"im", std::move(im)}};
}

Mat matrix_from_json(const Json& j) {
  return parse_or_config_error("matrix", [&] {
  const Eigen::Index rows = j.at("dim").at(0).get<Eigen::Index>();
  const Eigen::Index cols = j.at("dim").at(1).get<Eigen::Index>();
  if (rows < 0 || cols < 0) throw ConfigError("matrix: negative dimension");
  const Json& re = j.at("re");
  const Json& im = j.at("im");
  if (static_cast<Eigen::Index>(re.size()) != rows ||
      static_cast<Eigen::Index>(im.size()) != rows)
    throw ConfigError("matrix: row count mismatch");
  Mat m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const Json& rrow = re.at(static_cast<std::size_t>(i));
    const Json& irow = im.at(static_cast<std::size_t>(i));
    if (static_cast<Eigen::Index>(rrow.size()) != cols ||
        static_cast<Eigen::Index>(irow.size()) != cols)
      throw ConfigError("matrix: column count mismatch");
    for (Eigen::Index jj = 0; jj < cols; ++jj)
      m(i, jj) = Cx(rrow.at(static_cast<std::size_t>(jj)).get<double>(),
                    irow.at(static_cast<std::size_t>(jj)).get<double>());
  }
  return m;
  });
}

Json to_json(const CheckReport& r) {
  Json residuals = Json::object();
  for (const auto& [name, value] : r.residuals) residuals[name] = value;
  return Json{{"check", r.check},
              {"verdict", to_string(r.verdict)},
              {"residuals", std::move(residuals)},
              {"witnesses", r.witnesses},
              {"seed", r.seed},
              {"trials", r.trials}};
}

CheckReport check_report_from_json(const Json& j) {
  return parse_or_config_error("check report", [&] {
    CheckReport r;
    r.check = j.at("check").get<std::string>();
    r.verdict = verdict_from_string(j.at("verdict").get<std::string>());
    for (const auto& [name, value] : j.at("residuals").items())
      r.add(name, value.get<double>());
    for (const Json& w : j.at("witnesses"))
      r.witnesses.push_back(w.get<std::string>());
    r.seed = j.at("seed").get<std::uint64_t>();
    r.trials = j.at("trials").get<int>();
    return r;
  });
}

Json to_json(const Transcript& t) {
  return Json{{"bit", t.bit},
              {"rounds", t.rounds},
              {"strategy", t.strategy},
              {"accept", t.accept},
              {"agreement_rate", t.agreement_rate},
              {"seed", t.seed},
              {"announced_bit", t.announced_bit},
              {"epsilon", t.epsilon},
              {"threshold", t.threshold},
              {"outcome_tally", t.outcome_tally},
              {"marginal_residual", t.marginal_residual},
              {"conditional_residual", t.conditional_residual}};
}

Transcript transcript_from_json(const Json& j) {
  return parse_or_config_error("transcript", [&] {
    Transcript t;
    t.bit = j.at("bit").get<int>();
    t.rounds = j.at("rounds").get<int>();
    t.strategy = j.at("strategy").get<std::string>();
    t.accept = j.at("accept").get<bool>();
    t.agreement_rate = j.at("agreement_rate").get<double>();
    t.seed = j.at("seed").get<std::uint64_t>();
    t.announced_bit = j.at("announced_bit").get<int>();
    t.epsilon = j.at("epsilon").get<double>();
    t.threshold = j.at("threshold").get<double>();
    t.outcome_tally = j.at("outcome_tally").get<std::vector<int>>();
    t.marginal_residual = j.at("marginal_residual").get<double>();
    t.conditional_residual = j.at("conditional_residual").get<double>();
    return t;
  });
}

Json to_json(const Measure& mu) {
  Json weights = Json::array();
  for (Eigen::Index i = 0; i < mu.size(); ++i) weights.push_back(mu.weights(i));
  return Json{{"weights", std::move(weights)}};
}

Measure measure_from_json(const Json& j) {
  return parse_or_config_error("measure", [&] {
    const Json& w = j.at("weights");
    if (!w.is_array()) throw ConfigError("measure: 'weights' must be an array");
    RVec weights(static_cast<Eigen::Index>(w.size()));
    for (Eigen::Index i = 0; i < weights.size(); ++i)
      weights(i) = w.at(static_cast<std::size_t>(i)).get<double>();
    return make_measure(std::move(weights));
  });
}

Json to_json(const FinitePhaseSpace& space) {
  return Json{{"points", space.points}};
}

std::string to_string(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace cstar
