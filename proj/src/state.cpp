#include "cstar/state.hpp"

#include <cmath>
#include <string>

namespace cstar {

State make_state(Mat density, double tol) {
  if (density.rows() != density.cols())
    throw std::invalid_argument("make_state: density must be square");
  if ((density - density.adjoint()).norm() > tol)
    throw std::invalid_argument("make_state: density not hermitian");
  Eigen::SelfAdjointEigenSolver<Mat> es(density);
  if (es.eigenvalues().minCoeff() < -tol)
    throw std::invalid_argument("make_state: density not positive, min ev " +
                                std::to_string(es.eigenvalues().minCoeff()));
  if (std::abs(density.trace().real() - 1.0) > tol)
    throw std::invalid_argument("make_state: trace is not one");
  return State{std::move(density)};
}

State product_state(const State& left, const State& right) {
  return State{kron(left.density, right.density)};
}

State restrict_state(const State& s, const TensorSplit& split, Side side) {
  if (s.dim() != split.left * split.right)
    throw TensorAlignment("restrict_state: state dimension " +
                          std::to_string(s.dim()) +
                          " does not match the declared split");
  if (side == Side::Left)
    return State{partial_trace_right(s.density, split.left, split.right)};
  return State{partial_trace_left(s.density, split.left, split.right)};
}

bool tensor_aligned(const StarAlgebra& a, const TensorSplit& split, Side side,
                    double tol) {
  if (a.ambient_dim() != split.left * split.right) return false;
  for (const Mat& b : a.basis()) {
    // Average the claimed-identity leg away and compare.
    Mat rebuilt;
    if (side == Side::Left) {
      Mat x = partial_trace_right(b, split.left, split.right) /
              static_cast<double>(split.right);
      rebuilt = kron(x, Mat::Identity(split.right, split.right));
    } else {
      Mat x = partial_trace_left(b, split.left, split.right) /
              static_cast<double>(split.left);
      rebuilt = kron(Mat::Identity(split.left, split.left), x);
    }
    if ((b - rebuilt).norm() > tol) return false;
  }
  return true;
}

double state_distance(const State& rho, const State& omega,
                      const BlockStructure& bs) {
  const std::vector<Mat> dr = block_densities(rho.density, bs);
  const std::vector<Mat> dw = block_densities(omega.density, bs);
  double acc = 0.0;
  for (std::size_t k = 0; k < dr.size(); ++k)
    acc += trace_norm(dr[k] - dw[k]);
  return acc;
}

double state_distance(const State& rho, const State& omega,
                      const StarAlgebra& alg) {
  if (rho.dim() != alg.ambient_dim() || omega.dim() != alg.ambient_dim())
    throw std::invalid_argument("state_distance: dimension mismatch");
  // Full matrix algebra: the compression is the identity map.
  if (alg.dim() == alg.ambient_dim() * alg.ambient_dim())
    return trace_norm(rho.density - omega.density);
  return state_distance(rho, omega, wedderburn_decompose(alg));
}

double transition_probability(const State& rho, const State& omega,
                              const StarAlgebra& alg) {
  const double d = state_distance(rho, omega, alg);
  return 1.0 - d * d / 4.0;
}

double transition_probability(const State& rho, const State& omega,
                              const BlockStructure& bs) {
  const double d = state_distance(rho, omega, bs);
  return 1.0 - d * d / 4.0;
}

bool is_pure_on(const State& s, const BlockStructure& bs, double tol) {
  const std::vector<Mat> dk = block_densities(s.density, bs);
  int carrier_blocks = 0;
  bool rank_one = true;
  for (const Mat& d : dk) {
    const double mass = d.trace().real();
    if (mass <= tol) continue;
    ++carrier_blocks;
    Eigen::SelfAdjointEigenSolver<Mat> es(d);
    if (es.eigenvalues().maxCoeff() < mass - tol) rank_one = false;
  }
  return carrier_blocks == 1 && rank_one;
}

double uhlmann_fidelity(const State& a, const State& b) {
  const Mat ra = hermitian_sqrt(a.density, kTolAlgebra);
  const double t = hermitian_sqrt(ra * b.density * ra, 1e-8).trace().real();
  return t * t;
}

}  // namespace cstar
