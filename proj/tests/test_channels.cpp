#include <doctest.h>

#include "cstar/channel.hpp"
#include "cstar/random.hpp"

using namespace cstar;

namespace {

Channel random_nonselective(Rng& rng, Eigen::Index n, int nkraus) {
  // Stack a Ginibre block column and normalize: K_i = A_i (sum A^*A)^{-1/2}.
  std::vector<Mat> a;
  Mat acc = Mat::Zero(n, n);
  for (int i = 0; i < nkraus; ++i) {
    a.push_back(rng.ginibre(n, n));
    acc += a.back().adjoint() * a.back();
  }
  Eigen::SelfAdjointEigenSolver<Mat> es(acc);
  Mat inv_root = es.eigenvectors() *
                 es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
                 es.eigenvectors().adjoint();
  std::vector<Mat> kraus;
  for (const Mat& x : a) kraus.push_back(x * inv_root);
  return make_channel(std::move(kraus));
}

}  // namespace

TEST_CASE("selectivity flag and normalization validation") {
  Mat p = Mat::Zero(2, 2);
  p(0, 0) = 1.0;
  Channel sel = make_channel({p});
  CHECK(sel.selective);
  Channel nonsel = make_channel({p, Mat::Identity(2, 2) - p});
  CHECK_FALSE(nonsel.selective);
  CHECK_THROWS_AS(make_channel({2.0 * Mat::Identity(2, 2)}),
                  std::invalid_argument);
}

TEST_CASE("heisenberg and schrodinger pictures are trace duals") {
  Rng rng(51);
  for (int t = 0; t < 50; ++t) {
    Channel ch = random_nonselective(rng, 3, 3);
    State rho{rng.density(3)};
    Mat a = rng.ginibre(3, 3);
    const Cx lhs = (rho.density * heisenberg_apply(ch, a)).trace();
    const Cx rhs = (schrodinger_apply(ch, rho).density * a).trace();
    CHECK(std::abs(lhs - rhs) < 1e-10);
  }
}

TEST_CASE("selective dual action renormalizes by the outcome weight") {
  Rng rng(52);
  Mat p = Mat::Zero(2, 2);
  p(0, 0) = 1.0;
  Channel sel = make_channel({p});  // A -> PAP
  State rho{rng.density(2)};
  State post = schrodinger_apply(sel, rho);
  // rho(T(A)) / rho(T(I)) against the returned functional.
  Mat a = rng.ginibre(2, 2);
  const Cx lhs = (rho.density * heisenberg_apply(sel, a)).trace() /
                 (rho.density * heisenberg_apply(sel, Mat::Identity(2, 2)))
                     .trace();
  CHECK(std::abs(lhs - (post.density * a).trace()) < 1e-10);

  // Conditioning on an orthogonal outcome is undefined.
  Mat q = Mat::Zero(2, 2);
  q(1, 1) = 1.0;
  State supported_on_p{p};
  Channel sel_q = make_channel({q});
  CHECK_THROWS_AS(schrodinger_apply(sel_q, supported_on_p), NullOutcome);
}

TEST_CASE("projective measurement kills the conjugate observable") {
  Effect p = make_effect([] {
    Mat m = Mat::Zero(2, 2);
    m(0, 0) = 1.0;
    return m;
  }());
  Channel luders = make_luders(p);
  // PXP + (I-P)X(I-P) = 0 for the bit-flip observable.
  CHECK(heisenberg_apply(luders, pauli_x()).norm() ==
        doctest::Approx(0.0).epsilon(1e-14));
  // The measured observable itself is untouched.
  CHECK((heisenberg_apply(luders, pauli_z()) - pauli_z()).norm() < 1e-14);

  Channel trivial = make_luders(make_effect(Mat::Identity(2, 2)));
  CHECK(trivial.kraus.size() == 1);
  CHECK_FALSE(trivial.selective);

  CHECK_THROWS_AS(make_luders(make_effect(Mat::Identity(2, 2) * 0.5)),
                  NotAProjection);
}

TEST_CASE("minimally disturbing instrument of a smeared effect") {
  Mat e = Mat::Zero(2, 2);
  e(0, 0) = 0.9;
  e(1, 1) = 0.1;
  Channel t = make_pov(make_effect(e));
  // sqrt(E) X sqrt(E) + sqrt(I-E) X sqrt(I-E) = 2 sqrt(0.09) X = 0.6 X.
  CHECK((heisenberg_apply(t, pauli_x()) - 0.6 * pauli_x()).norm() < 1e-12);
  CHECK((heisenberg_apply(t, pauli_z()) - pauli_z()).norm() < 1e-12);
  CHECK_FALSE(t.selective);

  // Maximally unsharp effect: the instrument does nothing at all.
  Channel id = make_pov(make_effect(Mat::Identity(2, 2) * 0.5));
  Rng rng(53);
  Mat a = rng.ginibre(2, 2);
  CHECK((heisenberg_apply(id, a) - a).norm() < 1e-12);

  CHECK_THROWS_AS(make_effect(1.5 * Mat::Identity(2, 2)), InvalidEffect);
  CHECK_THROWS_AS(make_effect(pauli_z()), InvalidEffect);
}

TEST_CASE("nonselective instruments need a resolution of the identity") {
  Mat p = Mat::Zero(3, 3);
  p(0, 0) = 1.0;
  Mat q = Mat::Identity(3, 3) - p;
  Channel t = make_nonselective({make_effect(p), make_effect(q)});
  CHECK_FALSE(t.selective);
  Rng rng(54);
  Mat a = rng.ginibre(3, 3);
  const Mat expected = hermitian_sqrt(p, 1e-12) * a * hermitian_sqrt(p, 1e-12) +
                       hermitian_sqrt(q, 1e-12) * a * hermitian_sqrt(q, 1e-12);
  CHECK((heisenberg_apply(t, a) - expected).norm() < 1e-12);

  CHECK_THROWS_AS(make_nonselective({make_effect(p)}), IncompleteResolution);
}

TEST_CASE("unitary channels act by conjugation in both pictures") {
  Rng rng(55);
  Mat u = rng.haar_unitary(3);
  Channel ch = unitary_channel(u);
  Mat a = rng.ginibre(3, 3);
  CHECK((heisenberg_apply(ch, a) - u.adjoint() * a * u).norm() < 1e-12);
  State rho{rng.density(3)};
  CHECK((schrodinger_apply(ch, rho).density - u * rho.density * u.adjoint())
            .norm() < 1e-12);
  CHECK_THROWS_AS(unitary_channel(pauli_x() * 0.5), std::invalid_argument);
}

TEST_CASE("fixed points of a measurement on the other tensor leg") {
  // Measuring an effect of M_2 (x) I nonselectively is invisible to
  // I (x) M_2.
  Mat e01 = Mat::Zero(2, 2);
  e01(0, 0) = 0.7;
  e01(1, 1) = 0.2;
  Effect e = make_effect(kron(e01, Mat::Identity(2, 2)));
  Channel t = make_pov(e);
  StarAlgebra bob = tensor_embed_right(full_matrix_algebra(2), 2);
  CHECK(conveys_no_info(t, bob));
  CHECK(no_info_residual(t, bob) < 1e-12);

  // A noncommuting effect disturbs the other algebra.
  Effect bad = make_effect((Mat::Identity(4, 4) + kron(pauli_x(), pauli_x())) /
                           2.0);
  Channel tb = make_pov(bad);
  CHECK_FALSE(conveys_no_info(tb, bob));

  Mat p = Mat::Zero(4, 4);
  p(0, 0) = 1.0;
  Channel sel = make_channel({p});
  CHECK_THROWS_AS(conveys_no_info(sel, bob), SelectiveChannel);
}
