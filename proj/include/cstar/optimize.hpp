// Local search over real parameter vectors.
//
// Objectives are plain functions; gradients come from central
// differences and steps from Adam.  Everything is deterministic given
// the start point, so searches are reproducible from their seeds.
#pragma once

#include <functional>
#include <limits>
#include <vector>

#include "cstar/matrix.hpp"

namespace cstar {

using Objective = std::function<double(const RVec&)>;

RVec finite_difference_gradient(const Objective& f, const RVec& x,
                                double step);

struct AdamOptions {
  int max_iters = 500;
  double learning_rate = 0.05;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  double fd_step = 1e-5;
  double grad_tol = 1e-8;  // stop when the gradient sup norm drops below
  double value_tol =
      std::numeric_limits<double>::lowest();  // stop when f(x) drops below
};

struct OptimResult {
  RVec x;
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
};

OptimResult adam_minimize(const Objective& f, RVec x0,
                          const AdamOptions& opt = {});

// Kraus family from a flat real vector: complex matrices A_i read off
// the entries (re, im pairs, row major), then normalized on the right by
// (sum A_i^* A_i)^{-1/2} so the family is trace preserving at every
// parameter value the search visits.
std::vector<Mat> kraus_from_parameters(const RVec& params, int count,
                                       Eigen::Index dim_out,
                                       Eigen::Index dim_in);

inline Eigen::Index kraus_parameter_count(int count, Eigen::Index dim_out,
                                          Eigen::Index dim_in) {
  return 2 * count * dim_out * dim_in;
}

}  // namespace cstar
