// Finite classical probability as the abelian corner of the workbench.
//
// A finite phase space induces the diagonal algebra; measures are states
// of it, measurement conditioning is Bayes, and dynamics are permutation
// automorphisms.  gelfand_transform goes the other way: any abelian
// algebra is the function algebra of a finite point set, and the
// round-trip is certified at construction.
#pragma once

#include <string>
#include <vector>

#include "cstar/channel.hpp"

namespace cstar {

struct FinitePhaseSpace {
  std::vector<std::string> points;  // ordered labels
  StarAlgebra algebra;              // induced diagonal algebra
};

FinitePhaseSpace make_phase_space(Eigen::Index n);
FinitePhaseSpace make_phase_space(std::vector<std::string> points);

struct Measure {
  RVec weights;

  Eigen::Index size() const { return weights.size(); }
  // Expectation of a real function given by its values per point.
  double operator()(const RVec& g) const;
};

// Validates nonnegativity and unit total weight.
Measure make_measure(RVec weights, double tol = kTolAlgebra);

// Conditional expectation of g given the event, by the update
// rho'(g) = rho(chi g chi) / rho(chi) with chi the event indicator;
// for a diagonal algebra this is exactly Bayes.
double conditional_update(const Measure& mu,
                          const std::vector<Eigen::Index>& event, const RVec& g,
                          double tol = kTolAlgebra);

// The posterior measure behind conditional_update.
Measure conditional_measure(const Measure& mu,
                            const std::vector<Eigen::Index>& event,
                            double tol = kTolAlgebra);

// Indicator function of a subset of {0, ..., n-1}.
RVec indicator(Eigen::Index n, const std::vector<Eigen::Index>& subset);

// Permutation dynamics: the unitary channel whose Heisenberg action on
// diagonal functions is f -> f o perm.
Channel flow_automorphism(const std::vector<Eigen::Index>& perm);

// An abelian algebra realized as functions on its character set.
struct GelfandTransform {
  FinitePhaseSpace space;        // one point per character
  Mat unitary;                   // simultaneous diagonalizer, ambient size
  std::vector<Mat> projections;  // minimal projections, one per point

  // Values of the function realizing an algebra element; real for
  // self-adjoint input.
  RVec function_of(const Mat& a) const;
  // Inverse isomorphism: the algebra element with the given values.
  Mat element_of(const RVec& f) const;
};

GelfandTransform gelfand_transform(const StarAlgebra& abelian,
                                   double tol = kTolAlgebra);

}  // namespace cstar
