#include <doctest.h>

#include <cmath>

#include "cstar/random.hpp"
#include "cstar/theorems.hpp"

using namespace cstar;

TEST_CASE("check report bookkeeping") {
  CheckReport rep;
  rep.add("alpha", 0.25);
  rep.add("beta", 3.0);
  CHECK(rep.residual("alpha") == 0.25);
  CHECK(rep.residual("beta") == 3.0);
  CHECK_THROWS_AS(rep.residual("gamma"), std::out_of_range);
  CHECK_THROWS_AS(rep.add("bad", std::nan("")), std::invalid_argument);
  CHECK(to_string(Verdict::Pass) == "pass");
  CHECK(to_string(Verdict::Fail) == "fail");
  CHECK(to_string(Verdict::Evidence) == "evidence");
}

TEST_CASE("oracle: a sharp two-outcome measurement erases a conjugate spin") {
  // E = (I+X)/2 projects onto the Hadamard basis; measuring it takes Z
  // to P+ Z P+ + P- Z P- = 0, a shift of norm |Z| = sqrt(2).
  const Mat e = (Mat::Identity(2, 2) + pauli_x()) / 2.0;
  const Channel t = make_pov(make_effect(e));
  const Mat moved = heisenberg_apply(t, pauli_z());
  CHECK(moved.norm() < 1e-12);
  CHECK((moved - pauli_z()).norm() == doctest::Approx(std::sqrt(2.0)));
}

TEST_CASE("no-signaling equivalence on commuting and clashing pairs") {
  // Tensor factors: operations on one leg are invisible on the other.
  const StarAlgebra left = tensor_embed_left(full_matrix_algebra(2), 2);
  const StarAlgebra right = tensor_embed_right(full_matrix_algebra(2), 2);
  const CheckReport good = check_nosignaling_equivalence(left, right, 10, 11);
  CHECK(good.verdict == Verdict::Pass);
  CHECK(good.residual("kinematically_independent") == 1.0);
  CHECK(good.residual("max_no_info_residual") < 1e-9);

  // The same algebra against itself: measurement must disturb.
  const StarAlgebra m2 = full_matrix_algebra(2);
  const CheckReport bad = check_nosignaling_equivalence(m2, m2, 10, 11);
  CHECK(bad.verdict == Verdict::Pass);
  CHECK(bad.residual("kinematically_independent") == 0.0);
  CHECK(bad.residual("witness_operation_defect") > 0.1);
  CHECK(bad.residual("double_commutator_norm") > 1e-6);
  CHECK_FALSE(bad.witnesses.empty());

  // Scalars signal to nobody.
  const StarAlgebra trivial = generate_algebra({}, 2);
  CHECK(check_nosignaling_equivalence(trivial, m2, 5, 11).verdict ==
        Verdict::Pass);
}

TEST_CASE("classical broadcaster reproduces every diagonal state") {
  const Channel t = classical_broadcaster(2);
  Mat rho = Mat::Zero(2, 2);
  rho(0, 0) = 0.3;
  rho(1, 1) = 0.7;
  Rng rng(5);
  const TensorSplit split{2, 2};
  for (int trial = 0; trial < 5; ++trial) {
    // Ready state arbitrary, even nondiagonal.
    const State sigma{rng.density(2)};
    const State out = schrodinger_apply(t, product_state(State{rho}, sigma));
    CHECK((restrict_state(out, split, Side::Left).density - rho).norm() <
          1e-12);
    CHECK((restrict_state(out, split, Side::Right).density - rho).norm() <
          1e-12);
  }

  // Point masses come out cloned: a pure product.
  Mat pt = Mat::Zero(2, 2);
  pt(1, 1) = 1.0;
  const State cloned =
      schrodinger_apply(t, product_state(State{pt}, State{rho}));
  CHECK((cloned.density - kron(pt, pt)).norm() < 1e-12);

  // Patently irreversible: the ready state is forgotten entirely.
  const State o1 = schrodinger_apply(t, product_state(State{rho}, State{pt}));
  const State o2 =
      schrodinger_apply(t, product_state(State{rho}, State{rng.density(2)}));
  CHECK((o1.density - o2.density).norm() < 1e-12);
}

TEST_CASE("broadcaster heisenberg action multiplies diagonal functions") {
  for (Eigen::Index x = 2; x <= 4; ++x) {
    const Channel t = classical_broadcaster(x);
    for (Eigen::Index i = 0; i < x; ++i)
      for (Eigen::Index j = 0; j < x; ++j) {
        Mat f = Mat::Zero(x, x), g = Mat::Zero(x, x);
        f(i, i) = 1.0;
        g(j, j) = 1.0;
        // Indicator functions: f.g is the indicator of the intersection.
        const Mat fg = f * g;
        const Mat expect = kron(fg, Mat::Identity(x, x));
        CHECK((heisenberg_apply(t, kron(f, g)) - expect).norm() < 1e-12);
      }
  }
}

TEST_CASE("reversible clone is a permutation that copies from the ready point") {
  const Channel t = reversible_classical_clone(2);
  REQUIRE(t.kraus.size() == 1);
  const Mat& u = t.kraus.front();
  CHECK((u.adjoint() * u - Mat::Identity(4, 4)).norm() < 1e-12);
  // (x, y) -> (x, x+y): basis states map as 00->00, 01->01, 10->11, 11->10.
  Vec e10 = Vec::Zero(4), e11 = Vec::Zero(4);
  e10(2) = 1.0;
  e11(3) = 1.0;
  CHECK((u * e10 - e11).norm() < 1e-12);
  CHECK((u * e11 - e10).norm() < 1e-12);

  // Composition with the inverse is the identity channel.
  Rng rng(9);
  const Mat probe = rng.ginibre(4, 4);
  CHECK((u.adjoint() * (u * probe * u.adjoint()) * u - probe).norm() < 1e-12);

  // Broadcasts any diagonal state from ready point 0, mixed included.
  Mat rho = Mat::Zero(2, 2);
  rho(0, 0) = 0.25;
  rho(1, 1) = 0.75;
  Mat ready = Mat::Zero(2, 2);
  ready(0, 0) = 1.0;
  const State out = schrodinger_apply(t, product_state(State{rho}, State{ready}));
  const TensorSplit split{2, 2};
  CHECK((restrict_state(out, split, Side::Left).density - rho).norm() < 1e-12);
  CHECK((restrict_state(out, split, Side::Right).density - rho).norm() < 1e-12);
}

TEST_CASE("broadcasting a commuting pair, cloning an orthogonal one") {
  Mat d0 = Mat::Zero(2, 2), d1 = Mat::Zero(2, 2);
  d0(0, 0) = 1.0;
  d1(1, 1) = 1.0;
  const Channel clone = broadcast_commuting(State{d0}, State{d1});
  Mat ready = Mat::Identity(2, 2) / 2.0;
  for (const Mat& d : {d0, d1}) {
    const State out =
        schrodinger_apply(clone, product_state(State{d}, State{ready}));
    CHECK((out.density - kron(d, d)).norm() < 1e-9);
  }

  // Mixed commuting pair in a rotated basis.
  Rng rng(21);
  const Mat w = rng.haar_unitary(3);
  Mat a = Mat::Zero(3, 3), b = Mat::Zero(3, 3);
  a.diagonal() << 0.5, 0.3, 0.2;
  b.diagonal() << 0.1, 0.6, 0.3;
  const State r0{w * a * w.adjoint()}, r1{w * b * w.adjoint()};
  const Channel t = broadcast_commuting(r0, r1);
  const State sig{Mat(Mat::Identity(3, 3) / 3.0)};
  CHECK(broadcast_fidelity(t, r0, r1, sig) > 1.0 - 1e-9);

  // Noncommuting pair is rejected.
  Mat plus(2, 2);
  plus << 0.5, 0.5, 0.5, 0.5;
  CHECK_THROWS_AS(broadcast_commuting(State{d0}, State{plus}), NonCommuting);
}

TEST_CASE("broadcast search: exact for commuting pairs, gapped for clashing") {
  Mat zero = Mat::Zero(2, 2), one = Mat::Zero(2, 2), plus(2, 2);
  zero(0, 0) = 1.0;
  one(1, 1) = 1.0;
  plus << 0.5, 0.5, 0.5, 0.5;

  // Orthogonal pure pair: the warm start already broadcasts.
  const CheckReport ortho = no_broadcast_search(State{zero}, State{one}, 4, 2, 10, 1);
  CHECK(ortho.verdict == Verdict::Pass);
  CHECK(ortho.residual("best_broadcast_fidelity") >= 1.0 - 1e-6);

  // Commuting mixed pair likewise.
  Mat m0 = Mat::Zero(2, 2), m1 = Mat::Zero(2, 2);
  m0.diagonal() << 0.5, 0.5;
  m1.diagonal() << 0.9, 0.1;
  const CheckReport comm2 = no_broadcast_search(State{m0}, State{m1}, 4, 2, 10, 1);
  CHECK(comm2.verdict == Verdict::Pass);

  // |0> vs |+>: transition probability 1/2; search stays bounded away
  // from 1 (short budget here; the long sweep lives in the acceptance
  // run).
  const CheckReport gap = no_broadcast_search(State{zero}, State{plus}, 4, 3, 60, 1);
  CHECK(gap.verdict == Verdict::Evidence);
  CHECK(gap.residual("transition_probability") ==
        doctest::Approx(0.5).epsilon(1e-10));
  CHECK(gap.residual("doubled_transition_probability") ==
        doctest::Approx(0.25).epsilon(1e-10));
  CHECK(gap.residual("best_broadcast_fidelity") < 1.0 - 1e-3);
  CHECK(gap.residual("best_broadcast_fidelity") > 0.5);
}

TEST_CASE("transition probabilities under duplication and channels") {
  const CheckReport dup = check_duplication_identities(2, 60, 3);
  CHECK(dup.verdict == Verdict::Pass);
  CHECK(dup.residual("product_identity_max_dev") < 1e-8);
  CHECK(dup.residual("square_identity_max_dev") < 1e-8);
  CHECK(dup.residual("mixed_product_identity_max_dev") < 1e-8);

  const CheckReport mono = check_transition_monotonicity(2, 200, 3);
  CHECK(mono.verdict == Verdict::Pass);
  CHECK(mono.residual("min_probability_margin") >= -1e-9);

  // For a nonorthogonal, non-identical pure pair the squared
  // probability is strictly smaller, which is what forbids exact
  // broadcasting.
  Rng rng(31);
  for (int t = 0; t < 20; ++t) {
    const StarAlgebra full = full_matrix_algebra(3);
    const State r0{rng.pure_density(3)}, r1{rng.pure_density(3)};
    const double p = transition_probability(r0, r1, full);
    REQUIRE(p > 1e-6);
    REQUIRE(p < 1.0 - 1e-6);
    CHECK(p * p < p);
  }
}
