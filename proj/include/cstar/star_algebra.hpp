// Finite-dimensional *-algebras of complex matrices.
//
// A StarAlgebra is a unital, adjoint-closed, product-closed linear subspace
// of M_n(C), held as an orthonormal basis under <X,Y> = tr(X^* Y).  All
// structural queries (commutant, center, independence of a commuting pair)
// reduce to dense linear algebra on the vectorized span.
#pragma once

#include <cstdint>
#include <vector>

#include "cstar/errors.hpp"
#include "cstar/matrix.hpp"

namespace cstar {

class StarAlgebra {
 public:
  // Builds from a basis that is already orthonormal and spans a unital
  // *-algebra; closure is verified (exhaustively for small spans, by a
  // deterministic sample of product pairs above 4096 pairs, where the
  // exhaustive check would dominate the run time).
  static StarAlgebra from_orthonormal_basis(std::vector<Mat> basis,
                                            std::vector<Mat> generators,
                                            double tol = kTolAlgebra);

  Eigen::Index ambient_dim() const { return n_; }
  Eigen::Index dim() const { return static_cast<Eigen::Index>(basis_.size()); }
  const std::vector<Mat>& basis() const { return basis_; }
  const std::vector<Mat>& generators() const { return generators_; }

  // Coefficients of x against the basis; exact for members.
  Vec coefficients(const Mat& x) const;
  Mat element(const Vec& coeffs) const;

  // Orthogonal projection onto the span and the distance to it.
  Mat project(const Mat& x) const;
  double membership_residual(const Mat& x) const;
  bool contains(const Mat& x, double tol = kTolAlgebra) const;

  bool is_abelian(double tol = kTolAlgebra) const;

  // Self-adjoint spanning family (real-linear): hermitian and
  // anti-hermitian parts of the basis, orthonormalized.
  std::vector<Mat> hermitian_spanning_set() const;

 private:
  StarAlgebra(Eigen::Index n, std::vector<Mat> basis, std::vector<Mat> gens);

  Eigen::Index n_ = 0;
  std::vector<Mat> basis_;
  std::vector<Mat> generators_;
  Mat stacked_;  // dim x n^2, rows = vectorized basis
};

// Smallest unital *-algebra containing the generators: span of all words
// in the generators and their adjoints, plus the identity.
StarAlgebra generate_algebra(const std::vector<Mat>& generators,
                             Eigen::Index ambient_dim,
                             double tol = kTolRank);

// Relative commutant in the full matrix algebra.
StarAlgebra commutant(const StarAlgebra& a, double tol = kTolRank);

// Center = a intersected with its commutant.
StarAlgebra center(const StarAlgebra& a, double tol = kTolRank);

// Every element of a commutes with every element of b.
bool kinematic_independence(const StarAlgebra& a, const StarAlgebra& b,
                            double tol = kTolAlgebra);
double max_cross_commutator(const StarAlgebra& a, const StarAlgebra& b);

struct CStarIndependenceReport {
  bool independent = false;
  double worst_defect = 0.0;  // relative defect of |AB| = |A||B|
  Mat witness_a, witness_b;   // pair realizing the worst defect
};

// Norm-multiplicativity test |AB| = |A||B| across all basis pairs and
// `samples` random elements of each algebra.  Requires a commuting pair.
CStarIndependenceReport cstar_independence(const StarAlgebra& a,
                                           const StarAlgebra& b, int samples,
                                           std::uint64_t seed,
                                           double tol = kTolAlgebra);

// Standard constructions.  These bypass the generic closure loop because
// their bases are closed in exact arithmetic.
StarAlgebra full_matrix_algebra(Eigen::Index n);
StarAlgebra diagonal_algebra(Eigen::Index n);

// Direct sum of full matrix blocks with multiplicities: (+)_k M_{n_k} (x) I_{m_k},
// embedded block-diagonally in ambient dimension sum(n_k * m_k).
StarAlgebra block_diagonal_algebra(
    const std::vector<std::pair<Eigen::Index, Eigen::Index>>& blocks);

// Embed a on the left or right leg of a tensor split: a (x) I or I (x) a.
StarAlgebra tensor_embed_left(const StarAlgebra& a, Eigen::Index right_dim);
StarAlgebra tensor_embed_right(const StarAlgebra& a, Eigen::Index left_dim);

}  // namespace cstar
