// States as density matrices acting by the trace pairing.
//
// A State on ambient dimension n represents the functional A -> tr(D A).
// Restricted to a subalgebra, the same density can behave very
// differently (a vector state can be mixed on a factor); the *_on
// functions take the algebra seriously via its block structure.
#pragma once

#include "cstar/wedderburn.hpp"

namespace cstar {

struct State {
  Mat density;

  Eigen::Index dim() const { return density.rows(); }
  Cx operator()(const Mat& a) const { return (density * a).trace(); }
};

State make_state(Mat density, double tol = kTolAlgebra);

struct TensorSplit {
  Eigen::Index left = 0;
  Eigen::Index right = 0;
};

enum class Side { Left, Right };

// Joint state with the given marginals and no correlations.
State product_state(const State& left, const State& right);

// Marginal of a composite state on one leg of the split (partial trace
// over the other leg).
State restrict_state(const State& s, const TensorSplit& split, Side side);

// Whether every element of the algebra has the shape X (x) I (Left) or
// I (x) X (Right) for the split.
bool tensor_aligned(const StarAlgebra& a, const TensorSplit& split, Side side,
                    double tol = kTolAlgebra);

// Norm distance between the functionals restricted to the algebra:
// sup { |rho(A) - omega(A)| : A in alg, |A| <= 1 }.  Computed blockwise as
// the sum of trace norms of compressed-density differences; for the full
// matrix algebra this is the trace norm of the density difference.
double state_distance(const State& rho, const State& omega,
                      const StarAlgebra& alg);
double state_distance(const State& rho, const State& omega,
                      const BlockStructure& bs);

// p(rho, omega) = 1 - distance^2 / 4; equals the squared overlap for pure
// states of a full matrix algebra.
double transition_probability(const State& rho, const State& omega,
                              const StarAlgebra& alg);
double transition_probability(const State& rho, const State& omega,
                              const BlockStructure& bs);

// Purity of the restriction to the algebra: the block compression is
// rank one and lives in a single block.
bool is_pure_on(const State& s, const BlockStructure& bs,
                double tol = kTolAlgebra);

// Uhlmann fidelity (tr sqrt(sqrt(a) b sqrt(a)))^2 between ambient
// densities.
double uhlmann_fidelity(const State& a, const State& b);

}  // namespace cstar
