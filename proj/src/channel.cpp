#include "cstar/channel.hpp"

#include <cmath>
#include <string>

namespace cstar {

Effect make_effect(Mat m, double tol) {
  if (m.rows() != m.cols())
    throw InvalidEffect("make_effect: matrix must be square");
  if ((m - m.adjoint()).norm() > tol)
    throw InvalidEffect("make_effect: not self-adjoint");
  Eigen::SelfAdjointEigenSolver<Mat> es(m);
  if (es.eigenvalues().minCoeff() < -tol ||
      es.eigenvalues().maxCoeff() > 1.0 + tol)
    throw InvalidEffect("make_effect: spectrum outside [0,1]");
  return Effect{std::move(m)};
}

Effect make_effect_in(const StarAlgebra& alg, Mat m, double tol) {
  if (alg.membership_residual(m) > tol * std::max(1.0, m.norm()))
    throw InvalidEffect("make_effect_in: not a member of the algebra");
  return make_effect(std::move(m), tol);
}

Channel make_channel(std::vector<Mat> kraus, double tol) {
  if (kraus.empty()) throw std::invalid_argument("make_channel: no Kraus");
  const Eigen::Index n = kraus.front().rows();
  Mat acc = Mat::Zero(n, n);
  for (const Mat& k : kraus) {
    if (k.rows() != n || k.cols() != n)
      throw std::invalid_argument("make_channel: mixed dimensions");
    acc += k.adjoint() * k;
  }
  Eigen::SelfAdjointEigenSolver<Mat> es((acc + acc.adjoint()) / 2.0);
  if (es.eigenvalues().maxCoeff() > 1.0 + tol)
    throw std::invalid_argument("make_channel: sum K*K exceeds identity");
  Channel c;
  c.kraus = std::move(kraus);
  c.selective = (acc - Mat::Identity(n, n)).norm() > tol;
  return c;
}

Mat heisenberg_apply(const Channel& t, const Mat& a) {
  Mat out = Mat::Zero(a.rows(), a.cols());
  for (const Mat& k : t.kraus) out += k.adjoint() * a * k;
  return out;
}

State schrodinger_apply(const Channel& t, const State& rho, double tol) {
  Mat out = Mat::Zero(rho.dim(), rho.dim());
  for (const Mat& k : t.kraus) out += k * rho.density * k.adjoint();
  const double weight = out.trace().real();
  if (weight <= tol)
    throw NullOutcome("schrodinger_apply: outcome weight " +
                      std::to_string(weight));
  return State{out / weight};
}

Channel make_luders(const Effect& p, double tol) {
  const Mat& m = p.matrix;
  if ((m * m - m).norm() > tol)
    throw NotAProjection("make_luders: effect is not idempotent");
  const Mat q = Mat::Identity(m.rows(), m.cols()) - m;
  std::vector<Mat> kraus;
  if (m.norm() > tol) kraus.push_back(m);
  if (q.norm() > tol) kraus.push_back(q);
  return make_channel(std::move(kraus), tol);
}

Channel make_pov(const Effect& e, double tol) {
  const Mat root = hermitian_sqrt(e.matrix, tol);
  const Mat coroot = hermitian_sqrt(
      Mat::Identity(e.matrix.rows(), e.matrix.cols()) - e.matrix, tol);
  return make_channel({root, coroot}, tol);
}

Channel make_nonselective(const std::vector<Effect>& effects, double tol) {
  if (effects.empty())
    throw IncompleteResolution("make_nonselective: no effects");
  const Eigen::Index n = effects.front().matrix.rows();
  Mat sum = Mat::Zero(n, n);
  for (const Effect& e : effects) sum += e.matrix;
  if ((sum - Mat::Identity(n, n)).norm() > tol)
    throw IncompleteResolution(
        "make_nonselective: effects do not resolve the identity, defect " +
        std::to_string((sum - Mat::Identity(n, n)).norm()));
  std::vector<Mat> kraus;
  for (const Effect& e : effects) kraus.push_back(hermitian_sqrt(e.matrix, tol));
  return make_channel(std::move(kraus), tol);
}

Channel unitary_channel(const Mat& u, double tol) {
  if ((u.adjoint() * u - Mat::Identity(u.rows(), u.cols())).norm() > tol)
    throw std::invalid_argument("unitary_channel: not unitary");
  return make_channel({u}, tol);
}

double no_info_residual(const Channel& t, const StarAlgebra& b) {
  double worst = 0.0;
  for (const Mat& g : b.basis())
    worst = std::max(worst, (heisenberg_apply(t, g) - g).norm());
  return worst;
}

bool conveys_no_info(const Channel& t, const StarAlgebra& b, double tol) {
  if (t.selective)
    throw SelectiveChannel("conveys_no_info: channel is selective");
  return no_info_residual(t, b) <= tol;
}

}  // namespace cstar
