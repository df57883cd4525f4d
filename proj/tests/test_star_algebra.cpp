#include <doctest.h>

#include "cstar/random.hpp"
#include "cstar/star_algebra.hpp"

using namespace cstar;

namespace {

// Independent span-rank oracle: stack vectorized matrices, count singular
// values above a relative cut.
Eigen::Index span_rank(const std::vector<Mat>& mats) {
  Mat stack(static_cast<Eigen::Index>(mats.size()),
            mats.front().rows() * mats.front().cols());
  for (std::size_t i = 0; i < mats.size(); ++i)
    stack.row(static_cast<Eigen::Index>(i)) = vectorize(mats[i]);
  Eigen::JacobiSVD<Mat> svd(stack);
  const double cut = 1e-8 * svd.singularValues()(0);
  Eigen::Index r = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()(i) > cut) ++r;
  return r;
}

bool same_span(const StarAlgebra& a, const StarAlgebra& b) {
  if (a.dim() != b.dim()) return false;
  for (const Mat& x : a.basis())
    if (b.membership_residual(x) > 1e-9) return false;
  return true;
}

}  // namespace

TEST_CASE("pauli pair generates the full qubit algebra") {
  // Oracle: brute-force span of all words of length <= 3 in {X, Z}.
  const Mat x = pauli_x(), z = pauli_z();
  std::vector<Mat> words{Mat::Identity(2, 2), x, z};
  for (const Mat& a : {x, z})
    for (const Mat& b : {x, z}) {
      words.push_back(a * b);
      for (const Mat& c : {x, z}) words.push_back(a * b * c);
    }
  REQUIRE(span_rank(words) == 4);

  StarAlgebra alg = generate_algebra({x, z}, 2);
  CHECK(alg.dim() == 4);
  CHECK(same_span(alg, full_matrix_algebra(2)));
}

TEST_CASE("powers of a nondegenerate diagonal span the diagonal") {
  Mat d = Mat::Zero(3, 3);
  d(0, 0) = 1;
  d(1, 1) = 2;
  d(2, 2) = 3;
  // Oracle: Vandermonde rank of {I, D, D^2}.
  REQUIRE(span_rank({Mat::Identity(3, 3), d, d * d}) == 3);

  StarAlgebra alg = generate_algebra({d}, 3);
  CHECK(alg.dim() == 3);
  for (const Mat& b : alg.basis())
    CHECK((b - Mat(b.diagonal().asDiagonal())).norm() < 1e-12);
  CHECK(alg.is_abelian());
}

TEST_CASE("generated span is unital, star-closed and idempotent") {
  Rng rng(21);
  std::vector<Mat> gens{rng.ginibre(4, 4), rng.ginibre(4, 4)};
  StarAlgebra alg = generate_algebra(gens, 4);
  CHECK(alg.contains(Mat::Identity(4, 4)));
  for (const Mat& b : alg.basis()) {
    CHECK(alg.membership_residual(b.adjoint()) < 1e-9);
    for (const Mat& c : alg.basis())
      CHECK(alg.membership_residual(b * c) < 1e-9);
  }
  StarAlgebra again =
      generate_algebra(std::vector<Mat>(alg.basis().begin(), alg.basis().end()), 4);
  CHECK(same_span(alg, again));
}

TEST_CASE("commutant of the diagonal algebra is the diagonal algebra") {
  // Oracle: X E_ii = E_ii X for all i forces X diagonal, so the commutant
  // has dimension exactly 3 and diagonal basis.
  StarAlgebra diag = diagonal_algebra(3);
  StarAlgebra c = commutant(diag);
  CHECK(c.dim() == 3);
  for (const Mat& b : c.basis())
    CHECK((b - Mat(b.diagonal().asDiagonal())).norm() < 1e-9);
}

TEST_CASE("commutant of the full algebra is the scalars") {
  StarAlgebra c = commutant(full_matrix_algebra(3));
  CHECK(c.dim() == 1);
  CHECK((c.basis()[0] * std::sqrt(3.0) -
         c.basis()[0](0, 0) * std::sqrt(3.0) * Mat::Identity(3, 3))
            .norm() < 1e-9);
}

TEST_CASE("commutant of a tensor factor is the other factor") {
  StarAlgebra left = tensor_embed_left(full_matrix_algebra(2), 3);
  StarAlgebra right = tensor_embed_right(full_matrix_algebra(3), 2);
  CHECK(same_span(commutant(left), right));
  CHECK(same_span(commutant(right), left));
}

TEST_CASE("double commutant reproduces the algebra") {
  StarAlgebra alg = block_diagonal_algebra({{2, 1}, {1, 1}});
  CHECK(same_span(commutant(commutant(alg)), alg));

  Rng rng(22);
  Mat h = rng.hermitian(4);
  StarAlgebra gen = generate_algebra({h}, 4);
  CHECK(same_span(commutant(commutant(gen)), gen));
}

TEST_CASE("centers of standard algebras") {
  CHECK(center(full_matrix_algebra(3)).dim() == 1);
  CHECK(center(diagonal_algebra(3)).dim() == 3);
  StarAlgebra two_blocks = block_diagonal_algebra({{2, 1}, {1, 1}});
  StarAlgebra z = center(two_blocks);
  CHECK(z.dim() == 2);
  CHECK(z.is_abelian());
  for (const Mat& b : z.basis()) {
    CHECK(two_blocks.membership_residual(b) < 1e-9);
    for (const Mat& g : two_blocks.basis()) CHECK(comm(b, g).norm() < 1e-9);
  }
}

TEST_CASE("kinematic independence on tensor factors and overlaps") {
  StarAlgebra left = tensor_embed_left(full_matrix_algebra(2), 2);
  StarAlgebra right = tensor_embed_right(full_matrix_algebra(2), 2);
  CHECK(kinematic_independence(left, right));
  CHECK(max_cross_commutator(left, right) < 1e-12);

  StarAlgebra full = full_matrix_algebra(2);
  CHECK_FALSE(kinematic_independence(full, full));

  // The commutant is by definition kinematically independent of its input.
  StarAlgebra alg = block_diagonal_algebra({{2, 1}, {1, 1}});
  CHECK(kinematic_independence(alg, commutant(alg)));
}

TEST_CASE("norm multiplicativity across a tensor split") {
  StarAlgebra left = tensor_embed_left(full_matrix_algebra(2), 3);
  StarAlgebra right = tensor_embed_right(full_matrix_algebra(3), 2);
  auto rep = cstar_independence(left, right, 25, 2024);
  CHECK(rep.independent);
  CHECK(rep.worst_defect < 1e-9);
}

TEST_CASE("shared central support breaks norm multiplicativity") {
  // a = M_2 (+) C block-diagonal in dimension 3, b = its center.  They
  // commute, but A = 0 (+) 1 and B = I_2 (+) 0 multiply to zero.
  StarAlgebra a = block_diagonal_algebra({{2, 1}, {1, 1}});
  StarAlgebra b = center(a);

  Mat wa = Mat::Zero(3, 3);
  wa(2, 2) = 1.0;
  Mat wb = Mat::Zero(3, 3);
  wb(0, 0) = wb(1, 1) = 1.0;
  // Oracle for the witness pair: unit norms, vanishing product.
  REQUIRE(op_norm(wa) == doctest::Approx(1.0));
  REQUIRE(op_norm(wb) == doctest::Approx(1.0));
  REQUIRE(op_norm(wa * wb) == doctest::Approx(0.0));
  REQUIRE(a.contains(wa));
  REQUIRE(b.contains(wb));

  auto rep = cstar_independence(a, b, 25, 2024);
  CHECK_FALSE(rep.independent);
  CHECK(rep.worst_defect > 0.5);
}

TEST_CASE("cstar independence rejects noncommuting inputs") {
  StarAlgebra full = full_matrix_algebra(2);
  CHECK_THROWS_AS(cstar_independence(full, full, 5, 1), NonCommuting);
}

TEST_CASE("constructed bases reject malformed input") {
  CHECK_THROWS_AS(StarAlgebra::from_orthonormal_basis(
                      {pauli_x(), pauli_x()}, {}),
                  std::invalid_argument);  // not orthonormal
  CHECK_THROWS_AS(StarAlgebra::from_orthonormal_basis(
                      {pauli_x() / std::sqrt(2.0)}, {}),
                  std::invalid_argument);  // no identity in span
}
