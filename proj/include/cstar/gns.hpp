// Cyclic representations from states.
//
// The carrier is the algebra modulo the null space of <A,B> = rho(A^* B);
// the algebra acts by left multiplication and the class of the identity
// is cyclic.  The construction certifies itself: homomorphism, adjoint,
// expectation and cyclicity residuals are all checked before returning.
#pragma once

#include <cstdint>
#include <vector>

#include "cstar/state.hpp"

namespace cstar {

struct GnsTriple {
  Eigen::Index carrier_dim = 0;
  std::vector<Mat> rep;  // images of the algebra basis, carrier-sized
  Vec cyclic;            // unit vector for a normalized state

  // Carrier coordinates of the class of an algebra element given by basis
  // coefficients.
  Mat class_map;  // carrier_dim x alg.dim()
};

GnsTriple gns_construct(const StarAlgebra& alg, const State& rho,
                        double tol = kTolAlgebra);

// Image of an arbitrary algebra element under the representation.
Mat gns_rep_of(const GnsTriple& g, const StarAlgebra& alg, const Mat& a);

// The commutant of the represented algebra is trivial.
bool is_irreducible(const GnsTriple& g);

// Two distinct orthogonal decompositions of one mixed state, built inside
// the carrier of a pure state with a noncommutativity witness.  Only
// nonabelian algebras admit one.
struct AmbiguousMixture {
  State omega1, omega2;            // an orthogonal pure pair
  State omega_plus, omega_minus;   // its conjugate superpositions
  State barycenter;                // common mixture of both pairs
  GnsTriple gns;                   // representation the pairs live in
  BlockStructure structure;
  std::size_t block_index = 0;     // block carrying all four states
  Vec xi1, xi2;                    // irrep-factor vectors behind omega1/2
  double mixture_residual = 0.0;   // | (w1+w2)/2 - (w+ + w-)/2 |
  double witness = 0.0;            // |rho([A,B])| of the seeding state
};

AmbiguousMixture ambiguous_mixture(const StarAlgebra& alg, std::uint64_t seed,
                                   double tol = kTolAlgebra);

// Pure state of the algebra supported on one block, given by a unit
// vector in the irrep factor; multiplicity legs carry white noise.
State block_vector_state(const Vec& xi, const BlockStructure& bs,
                         std::size_t block_index);

struct SchmidtDecomposition {
  RVec coefficients;  // descending, nonnegative
  Mat left, right;    // orthonormal columns, psi = sum c_k l_k (x) r_k
};

SchmidtDecomposition schmidt_decompose(const Vec& psi,
                                       const TensorSplit& split);

}  // namespace cstar
