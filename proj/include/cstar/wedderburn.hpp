// Structure theory for finite-dimensional *-algebras.
//
// Any unital *-subalgebra of M_n(C) is unitarily equivalent to a direct
// sum (+)_k M_{n_k} (x) I_{m_k}.  wedderburn_decompose finds that basis
// change numerically: minimal central projections from a generic center
// element, then one irreducible subrepresentation per block with explicit
// intertwiners to align the multiplicity copies.
#pragma once

#include <cstdint>
#include <vector>

#include "cstar/star_algebra.hpp"

namespace cstar {

struct WedderburnBlock {
  Eigen::Index irrep_dim = 0;     // n_k
  Eigen::Index multiplicity = 0;  // m_k
  // n x (n_k * m_k) isometry J with J^* A J = M_k(A) (x) I_{m_k} for every
  // A in the algebra; column (i, j) uses composite index i * m_k + j.
  Mat isometry;
};

struct BlockStructure {
  Eigen::Index ambient_dim = 0;
  std::vector<WedderburnBlock> blocks;

  // Concatenated block isometries; an n x n unitary.
  Mat unitary() const;
};

BlockStructure wedderburn_decompose(const StarAlgebra& a,
                                    double tol = kTolAlgebra,
                                    std::uint64_t seed = 7);

// Irreducible-block image M_k(A) of an algebra element; residual against
// the M (x) I shape beyond tol is an error.
Mat block_element(const Mat& a, const WedderburnBlock& blk, double tol);

// Effective densities d_k with tr(D X) = sum_k tr(d_k M_k(X)) for every
// algebra element X; this is the compression of the functional tr(D .) to
// the block picture (positive, traces summing to tr D).
std::vector<Mat> block_densities(const Mat& density, const BlockStructure& bs);

// Canonical ambient density with the given block compressions: each block
// carries d_k (x) I_{m_k}/m_k.  Inverse of block_densities up to the
// choice of multiplicity weights.
Mat embed_block_densities(const std::vector<Mat>& dk, const BlockStructure& bs);

// Eigenvalue clustering with an explicit ambiguity band.  Returns the
// cluster index of each (ascending) eigenvalue; gaps between rel_gap*scale
// and rel_gap_low*scale raise RankAmbiguity.
std::vector<Eigen::Index> cluster_eigenvalues(const Eigen::VectorXd& ev,
                                              double rel_gap = kTolRank);

// Commutant of an arbitrary matrix family inside M_d; kernel candidates
// of the normal operator are certified against the direct commutator
// residual.  Orthonormal basis of the commutant space.
std::vector<Mat> matrix_family_commutant(const std::vector<Mat>& family,
                                         Eigen::Index d);

}  // namespace cstar
