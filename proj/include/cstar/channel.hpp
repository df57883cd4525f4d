// Operations in Kraus form and the effects that induce them.
//
// A Channel T acts on observables as T(A) = sum_i K_i^* A K_i and on
// states by the dual with outcome renormalization.  T is nonselective
// when sum K_i^* K_i = I; only nonselective operations model measurements
// whose outcome is ignored.
#pragma once

#include <vector>

#include "cstar/state.hpp"

namespace cstar {

struct Effect {
  Mat matrix;
};

// Self-adjoint with spectrum in [-tol, 1+tol].
Effect make_effect(Mat m, double tol = kTolAlgebra);
// Additionally a member of the given algebra.
Effect make_effect_in(const StarAlgebra& alg, Mat m, double tol = kTolAlgebra);

struct Channel {
  std::vector<Mat> kraus;
  bool selective = false;

  Eigen::Index dim() const { return kraus.front().rows(); }
};

// Validates sum K^* K <= I + tol and records selectivity.
Channel make_channel(std::vector<Mat> kraus, double tol = kTolAlgebra);

Mat heisenberg_apply(const Channel& t, const Mat& a);

// Dual action with renormalization by the outcome weight rho(T(I));
// weights below tol raise NullOutcome.
State schrodinger_apply(const Channel& t, const State& rho,
                        double tol = kTolAlgebra);

// Two-outcome projective measurement, outcome ignored: Kraus {P, I-P}.
Channel make_luders(const Effect& p, double tol = kTolAlgebra);

// Measurement of the effect E with the minimally disturbing instrument:
// Kraus {sqrt(E), sqrt(I-E)}.
Channel make_pov(const Effect& e, double tol = kTolAlgebra);

// Nonselective measurement of a resolution of the identity:
// Kraus {sqrt(E_i)}; effects that do not sum to I raise
// IncompleteResolution.
Channel make_nonselective(const std::vector<Effect>& effects,
                          double tol = kTolAlgebra);

Channel unitary_channel(const Mat& u, double tol = kTolAlgebra);

// Largest fixed-point defect max_i |T(B_i) - B_i| over the basis of b.
double no_info_residual(const Channel& t, const StarAlgebra& b);

// True iff every element of b is fixed by T, i.e. the operation is
// invisible to an observer confined to b.  Selective channels are
// rejected.
bool conveys_no_info(const Channel& t, const StarAlgebra& b,
                     double tol = kTolAlgebra);

}  // namespace cstar
