#include <doctest.h>

#include <algorithm>

#include "cstar/random.hpp"
#include "cstar/wedderburn.hpp"

using namespace cstar;

namespace {

// Sorted (irrep_dim, multiplicity) signature for comparisons.
std::vector<std::pair<Eigen::Index, Eigen::Index>> signature(
    const BlockStructure& bs) {
  std::vector<std::pair<Eigen::Index, Eigen::Index>> out;
  for (const auto& b : bs.blocks) out.push_back({b.irrep_dim, b.multiplicity});
  std::sort(out.begin(), out.end());
  return out;
}

void check_structure(const StarAlgebra& alg, const BlockStructure& bs) {
  Eigen::Index dim_sum = 0, amb_sum = 0;
  for (const auto& b : bs.blocks) {
    dim_sum += b.irrep_dim * b.irrep_dim;
    amb_sum += b.irrep_dim * b.multiplicity;
    CHECK((b.isometry.adjoint() * b.isometry -
           Mat::Identity(b.isometry.cols(), b.isometry.cols()))
              .norm() < 1e-9);
  }
  CHECK(dim_sum == alg.dim());
  CHECK(amb_sum == alg.ambient_dim());
  const Mat u = bs.unitary();
  CHECK((u.adjoint() * u - Mat::Identity(u.rows(), u.cols())).norm() < 1e-9);
  // Every basis element must carry the M (x) I shape in every block.
  for (const Mat& g : alg.basis())
    for (const auto& b : bs.blocks) CHECK_NOTHROW(block_element(g, b, 1e-8));
}

}  // namespace

TEST_CASE("full matrix algebra is a single multiplicity-free block") {
  StarAlgebra alg = full_matrix_algebra(3);
  BlockStructure bs = wedderburn_decompose(alg);
  REQUIRE(bs.blocks.size() == 1);
  CHECK(bs.blocks[0].irrep_dim == 3);
  CHECK(bs.blocks[0].multiplicity == 1);
  check_structure(alg, bs);
}

TEST_CASE("diagonal algebra splits into scalar blocks") {
  StarAlgebra alg = diagonal_algebra(3);
  BlockStructure bs = wedderburn_decompose(alg);
  REQUIRE(bs.blocks.size() == 3);
  for (const auto& b : bs.blocks) {
    CHECK(b.irrep_dim == 1);
    CHECK(b.multiplicity == 1);
  }
  check_structure(alg, bs);
}

TEST_CASE("two-block direct sum with a multiplicity") {
  StarAlgebra alg = block_diagonal_algebra({{2, 1}, {1, 1}});
  BlockStructure bs = wedderburn_decompose(alg);
  CHECK(signature(bs) ==
        std::vector<std::pair<Eigen::Index, Eigen::Index>>{{1, 1}, {2, 1}});
  check_structure(alg, bs);

  StarAlgebra rep = block_diagonal_algebra({{2, 2}});
  BlockStructure bs2 = wedderburn_decompose(rep);
  CHECK(signature(bs2) ==
        std::vector<std::pair<Eigen::Index, Eigen::Index>>{{2, 2}});
  check_structure(rep, bs2);
}

TEST_CASE("decomposition is conjugation covariant") {
  Rng rng(31);
  const Mat u = rng.haar_unitary(4);
  StarAlgebra plain = block_diagonal_algebra({{2, 1}, {1, 2}});
  std::vector<Mat> conj_basis;
  for (const Mat& b : plain.basis()) conj_basis.push_back(u * b * u.adjoint());
  StarAlgebra alg = StarAlgebra::from_orthonormal_basis(conj_basis, conj_basis);
  BlockStructure bs = wedderburn_decompose(alg);
  CHECK(signature(bs) ==
        std::vector<std::pair<Eigen::Index, Eigen::Index>>{{1, 2}, {2, 1}});
  check_structure(alg, bs);
}

TEST_CASE("tensor factor embedding carries its multiplicity") {
  StarAlgebra alg = tensor_embed_left(full_matrix_algebra(2), 3);
  BlockStructure bs = wedderburn_decompose(alg);
  CHECK(signature(bs) ==
        std::vector<std::pair<Eigen::Index, Eigen::Index>>{{2, 3}});
  check_structure(alg, bs);
}

TEST_CASE("block functional identity tr(DA) = sum tr(d_k M_k(A))") {
  Rng rng(32);
  StarAlgebra alg = block_diagonal_algebra({{2, 2}, {1, 1}});
  BlockStructure bs = wedderburn_decompose(alg);
  for (int trial = 0; trial < 20; ++trial) {
    const Mat d = rng.density(5);
    Vec coeff(alg.dim());
    for (Eigen::Index i = 0; i < coeff.size(); ++i) coeff(i) = rng.cnormal();
    const Mat a = alg.element(coeff);

    Cx lhs = (d * a).trace();
    Cx rhs = 0;
    const std::vector<Mat> dk = block_densities(d, bs);
    for (std::size_t k = 0; k < bs.blocks.size(); ++k)
      rhs += (dk[k] * block_element(a, bs.blocks[k], 1e-8)).trace();
    CHECK(std::abs(lhs - rhs) < 1e-10);
  }
}

TEST_CASE("block density embedding round trip") {
  Rng rng(33);
  StarAlgebra alg = block_diagonal_algebra({{2, 2}, {1, 1}});
  BlockStructure bs = wedderburn_decompose(alg);
  std::vector<Mat> dk{0.75 * rng.density(2), 0.25 * Mat::Identity(1, 1)};
  const Mat emb = embed_block_densities(dk, bs);
  CHECK(std::abs(emb.trace().real() - 1.0) < 1e-12);
  const std::vector<Mat> back = block_densities(emb, bs);
  REQUIRE(back.size() == 2);
  CHECK((back[0] - dk[0]).norm() < 1e-10);
  CHECK((back[1] - dk[1]).norm() < 1e-10);
}

TEST_CASE("eigenvalue clustering bands") {
  Eigen::VectorXd clean(3);
  clean << 0.0, 1.0, 2.0;
  auto cl = cluster_eigenvalues(clean);
  CHECK(cl == std::vector<Eigen::Index>{0, 1, 2});

  Eigen::VectorXd tight(3);
  tight << 0.0, 1e-12, 1.0;
  CHECK(cluster_eigenvalues(tight) == std::vector<Eigen::Index>{0, 0, 1});

  Eigen::VectorXd bad(3);
  bad << 0.0, 1e-7, 1.0;
  CHECK_THROWS_AS(cluster_eigenvalues(bad), RankAmbiguity);
}
