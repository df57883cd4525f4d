#include <doctest.h>

#include <cmath>

#include "cstar/gns.hpp"
#include "cstar/random.hpp"

using namespace cstar;

namespace {

// Oracle: the carrier dimension equals the rank of the stacked family
// {vec(G_i D^{1/2})}, since |[G_i]|^2 = tr(D G_i^* G_i) = |G_i D^{1/2}|^2
// and the same Gram matrix governs both families.  Eigenvalues at
// numerical zero are clamped before the root; their sqrt-sized noise
// would otherwise sit right at the rank threshold.
Eigen::Index carrier_dim_oracle(const StarAlgebra& alg, const Mat& density) {
  Eigen::SelfAdjointEigenSolver<Mat> es(density);
  RVec clamped = es.eigenvalues();
  const double top = clamped.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < clamped.size(); ++i)
    clamped(i) = clamped(i) > 1e-12 * top ? std::sqrt(clamped(i)) : 0.0;
  const Mat root = es.eigenvectors() * clamped.cast<Cx>().asDiagonal() *
                   es.eigenvectors().adjoint();
  Mat stacked(alg.ambient_dim() * alg.ambient_dim(), alg.dim());
  for (Eigen::Index k = 0; k < alg.dim(); ++k)
    stacked.col(k) =
        vectorize(alg.basis()[static_cast<std::size_t>(k)] * root);
  Eigen::JacobiSVD<Mat> svd(stacked);
  const double smax = svd.singularValues()(0);
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > 1e-8 * smax) ++r;
  return r;
}

}  // namespace

TEST_CASE("carrier dimensions across faithful, pure and point-mass states") {
  // Full qubit algebra, pure state: rank of vec(G sqrt(D)) is 2.
  const StarAlgebra m2 = full_matrix_algebra(2);
  Mat pure = Mat::Zero(2, 2);
  pure(0, 0) = 1.0;
  CHECK(carrier_dim_oracle(m2, pure) == 2);
  const GnsTriple gp = gns_construct(m2, State{pure});
  CHECK(gp.carrier_dim == 2);

  // Maximally mixed state is faithful: carrier is the whole algebra.
  const Mat mixed = Mat::Identity(2, 2) / 2.0;
  CHECK(carrier_dim_oracle(m2, mixed) == 4);
  const GnsTriple gm = gns_construct(m2, State{mixed});
  CHECK(gm.carrier_dim == 4);

  // Diagonal algebra, point mass: one equivalence class survives.
  const StarAlgebra diag = diagonal_algebra(3);
  Mat point = Mat::Zero(3, 3);
  point(1, 1) = 1.0;
  CHECK(carrier_dim_oracle(diag, point) == 1);
  const GnsTriple gd = gns_construct(diag, State{point});
  CHECK(gd.carrier_dim == 1);
}

TEST_CASE("representation images reproduce left multiplication on M2") {
  const StarAlgebra m2 = full_matrix_algebra(2);
  Rng rng(401);
  const GnsTriple g = gns_construct(m2, State{rng.density(2)});
  const Mat a = rng.ginibre(2, 2), b = rng.ginibre(2, 2);
  // pi is an algebra map on arbitrary elements, not only on basis ones.
  CHECK((gns_rep_of(g, m2, a) * gns_rep_of(g, m2, b) -
         gns_rep_of(g, m2, a * b))
            .norm() < 1e-9);
  CHECK((gns_rep_of(g, m2, a).adjoint() - gns_rep_of(g, m2, a.adjoint()))
            .norm() < 1e-9);
  // Expectations of the state are inner products against the cyclic vector.
  const State rho{rng.density(2)};
  const GnsTriple g2 = gns_construct(m2, rho);
  const Cx lhs = g2.cyclic.dot(gns_rep_of(g2, m2, a) * g2.cyclic);
  CHECK(std::abs(lhs - rho(a)) < 1e-9);
}

TEST_CASE("irreducibility tracks purity of the inducing state") {
  const StarAlgebra m2 = full_matrix_algebra(2);
  Mat pure = Mat::Zero(2, 2);
  pure(0, 0) = 1.0;
  CHECK(is_irreducible(gns_construct(m2, State{pure})));
  CHECK_FALSE(
      is_irreducible(gns_construct(m2, State{Mat::Identity(2, 2) / 2.0})));

  // A vector state on M2 (x) I2 is mixed on the subalgebra: reducible.
  const StarAlgebra m2i = generate_algebra(
      {kron(pauli_x(), Mat::Identity(2, 2)),
       kron(pauli_z(), Mat::Identity(2, 2))},
      4);
  Vec bell(4);
  bell << 1.0 / std::sqrt(2.0), 0.0, 0.0, 1.0 / std::sqrt(2.0);
  CHECK_FALSE(is_irreducible(gns_construct(m2i, State{bell * bell.adjoint()})));
  Vec sep = Vec::Zero(4);
  sep(0) = 1.0;
  CHECK(is_irreducible(gns_construct(m2i, State{sep * sep.adjoint()})));
}

TEST_CASE("ambiguous mixture on the qubit algebra") {
  const StarAlgebra m2 = full_matrix_algebra(2);
  const AmbiguousMixture mix = ambiguous_mixture(m2, 20260823);

  // Both pairs average to the same density; for a qubit block that
  // barycenter is the maximally mixed state.
  CHECK(mix.mixture_residual < 1e-10);
  CHECK((mix.barycenter.density - Mat::Identity(2, 2) / 2.0).norm() < 1e-9);

  // The two decompositions are genuinely different ensembles.
  const double p = transition_probability(mix.omega1, mix.omega_plus, m2);
  CHECK(p == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(transition_probability(mix.omega1, mix.omega2, m2) ==
        doctest::Approx(0.0).epsilon(1e-9));
  CHECK(transition_probability(mix.omega_plus, mix.omega_minus, m2) ==
        doctest::Approx(0.0).epsilon(1e-9));

  CHECK(mix.witness > 1e-6);
  CHECK(mix.gns.carrier_dim == 2);
  CHECK(is_irreducible(mix.gns));
}

TEST_CASE("ambiguous mixture inside a direct sum and a tensor leg") {
  // M2 (+) C: the construction must land in the 2x2 block.
  const StarAlgebra sum = block_diagonal_algebra({{2, 1}, {1, 1}});
  const AmbiguousMixture a = ambiguous_mixture(sum, 7);
  CHECK(a.structure.blocks[a.block_index].irrep_dim == 2);
  CHECK(a.mixture_residual < 1e-9);
  CHECK(transition_probability(a.omega1, a.omega2, sum) ==
        doctest::Approx(0.0).epsilon(1e-8));
  CHECK(transition_probability(a.omega1, a.omega_plus, sum) ==
        doctest::Approx(0.5).epsilon(1e-8));

  // M2 (x) I2: multiplicity two, same statistics on the subalgebra.
  const StarAlgebra m2i = generate_algebra(
      {kron(pauli_x(), Mat::Identity(2, 2)),
       kron(pauli_z(), Mat::Identity(2, 2))},
      4);
  const AmbiguousMixture b = ambiguous_mixture(m2i, 7);
  CHECK(b.structure.blocks[b.block_index].multiplicity == 2);
  CHECK(b.mixture_residual < 1e-9);
  CHECK(state_distance(b.barycenter,
                       State{(b.omega_plus.density + b.omega_minus.density) /
                             2.0},
                       m2i) < 1e-9);
}

TEST_CASE("abelian algebras admit no ambiguous mixtures") {
  CHECK_THROWS_AS(ambiguous_mixture(diagonal_algebra(3), 1), AbelianAlgebra);
}

TEST_CASE("schmidt decomposition against the reduced-density oracle") {
  Rng rng(77);
  const TensorSplit split{3, 4};
  Vec psi = rng.unit_vector(12);
  const SchmidtDecomposition sd = schmidt_decompose(psi, split);

  // Oracle: squared coefficients are eigenvalues of the left reduction.
  const Mat rho_left = partial_trace_right(psi * psi.adjoint(), 3, 4);
  Eigen::SelfAdjointEigenSolver<Mat> es(rho_left);
  for (Eigen::Index k = 0; k < 3; ++k)
    CHECK(sd.coefficients(k) * sd.coefficients(k) ==
          doctest::Approx(es.eigenvalues()(2 - k)).epsilon(1e-10));

  // Reconstruction in the stated convention.
  Vec rebuilt = Vec::Zero(12);
  for (Eigen::Index k = 0; k < sd.coefficients.size(); ++k)
    rebuilt += sd.coefficients(k) * kron(sd.left.col(k), sd.right.col(k));
  CHECK((rebuilt - psi).norm() < 1e-10);

  // Bell vector: two equal coefficients 1/sqrt(2).
  Vec bell(4);
  bell << 1.0 / std::sqrt(2.0), 0.0, 0.0, 1.0 / std::sqrt(2.0);
  const SchmidtDecomposition sb = schmidt_decompose(bell, TensorSplit{2, 2});
  CHECK(sb.coefficients(0) == doctest::Approx(1.0 / std::sqrt(2.0)));
  CHECK(sb.coefficients(1) == doctest::Approx(1.0 / std::sqrt(2.0)));

  // Product vector: single unit coefficient.
  Vec prod = kron(rng.unit_vector(2), rng.unit_vector(3));
  const SchmidtDecomposition sp = schmidt_decompose(prod, TensorSplit{2, 3});
  CHECK(sp.coefficients(0) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(sp.coefficients(1) == doctest::Approx(0.0).epsilon(1e-10));

  CHECK_THROWS_AS(schmidt_decompose(psi, TensorSplit{2, 5}), TensorAlignment);
}
