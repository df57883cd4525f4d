#include "cstar/gns.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "cstar/random.hpp"

namespace cstar {

GnsTriple gns_construct(const StarAlgebra& alg, const State& rho, double tol) {
  if (rho.dim() != alg.ambient_dim())
    throw std::invalid_argument("gns_construct: dimension mismatch");
  const Eigen::Index d = alg.dim();

  // Gram matrix of the state inner product on the algebra.
  Mat gram(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j)
      gram(i, j) = rho(alg.basis()[static_cast<std::size_t>(i)].adjoint() *
                       alg.basis()[static_cast<std::size_t>(j)]);
  gram = (gram + gram.adjoint()) / 2.0;

  Eigen::SelfAdjointEigenSolver<Mat> es(gram);
  const double lmax = std::max(es.eigenvalues().maxCoeff(), 0.0);
  if (lmax <= 0.0)
    throw std::invalid_argument("gns_construct: zero state form");
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < d; ++i) {
    const double lam = std::max(es.eigenvalues()(i), 0.0);
    if (lam >= 1e-8 * lmax)
      keep.push_back(i);
    else if (lam > 1e-12 * lmax)
      throw RankAmbiguity("gns_construct: form eigenvalue " +
                          std::to_string(lam) +
                          " inside the ambiguity band (max " +
                          std::to_string(lmax) + ")");
  }
  const Eigen::Index r = static_cast<Eigen::Index>(keep.size());

  // class_map W = Lambda^{1/2} V^*: carrier coordinates of coefficient
  // vectors, with W^* W = gram on the non-null part.
  Mat vr(d, r), wr(r, d);
  for (Eigen::Index k = 0; k < r; ++k) {
    vr.col(k) = es.eigenvectors().col(keep[static_cast<std::size_t>(k)]);
    wr.row(k) = std::sqrt(es.eigenvalues()(keep[static_cast<std::size_t>(k)])) *
                vr.col(k).adjoint();
  }
  // Pseudo-inverse W^+ = V Lambda^{-1/2}.
  Mat wpinv(d, r);
  for (Eigen::Index k = 0; k < r; ++k)
    wpinv.col(k) =
        vr.col(k) /
        std::sqrt(es.eigenvalues()(keep[static_cast<std::size_t>(k)]));

  GnsTriple g;
  g.carrier_dim = r;
  g.class_map = wr;

  // Left multiplication in basis coefficients, then conjugated onto the
  // carrier.  Null vectors form a left ideal, so this is well defined.
  for (Eigen::Index k = 0; k < d; ++k) {
    Mat lk(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = 0; j < d; ++j)
        lk(i, j) = hs_inner(alg.basis()[static_cast<std::size_t>(i)],
                            alg.basis()[static_cast<std::size_t>(k)] *
                                alg.basis()[static_cast<std::size_t>(j)]);
    g.rep.push_back(wr * lk * wpinv);
  }

  g.cyclic = wr * alg.coefficients(Mat::Identity(alg.ambient_dim(),
                                                 alg.ambient_dim()));

  // Certification.
  const double scale = 10.0 * tol;
  if (std::abs(g.cyclic.norm() - 1.0) > scale)
    throw RankAmbiguity("gns_construct: cyclic vector is not normalized");
  for (Eigen::Index i = 0; i < d; ++i) {
    const Mat& gi = alg.basis()[static_cast<std::size_t>(i)];
    if ((g.rep[static_cast<std::size_t>(i)].adjoint() -
         gns_rep_of(g, alg, gi.adjoint()))
            .norm() > scale)
      throw RankAmbiguity("gns_construct: representation is not star");
    const Cx expect = g.cyclic.dot(g.rep[static_cast<std::size_t>(i)] *
                                   g.cyclic);  // <O, pi(G) O>
    if (std::abs(expect - rho(gi)) > scale)
      throw RankAmbiguity("gns_construct: state expectation mismatch");
    for (Eigen::Index j = 0; j < d; ++j) {
      const Mat& gj = alg.basis()[static_cast<std::size_t>(j)];
      if ((g.rep[static_cast<std::size_t>(i)] *
               g.rep[static_cast<std::size_t>(j)] -
           gns_rep_of(g, alg, gi * gj))
              .norm() > scale)
        throw RankAmbiguity("gns_construct: homomorphism residual");
    }
  }
  // Cyclicity: the orbit of the cyclic vector spans the carrier.
  Mat orbit(r, d);
  for (Eigen::Index i = 0; i < d; ++i)
    orbit.col(i) = g.rep[static_cast<std::size_t>(i)] * g.cyclic;
  Eigen::JacobiSVD<Mat> osvd(orbit);
  if (osvd.singularValues()(r - 1) < 1e-8 * osvd.singularValues()(0))
    throw RankAmbiguity("gns_construct: cyclic vector fails to generate");

  return g;
}

Mat gns_rep_of(const GnsTriple& g, const StarAlgebra& alg, const Mat& a) {
  if (alg.membership_residual(a) > kTolAlgebra * std::max(1.0, a.norm()))
    throw std::invalid_argument("gns_rep_of: element outside the algebra");
  const Vec c = alg.coefficients(a);
  Mat out = Mat::Zero(g.carrier_dim, g.carrier_dim);
  for (Eigen::Index i = 0; i < c.size(); ++i)
    out += c(i) * g.rep[static_cast<std::size_t>(i)];
  return out;
}

bool is_irreducible(const GnsTriple& g) {
  return matrix_family_commutant(g.rep, g.carrier_dim).size() == 1;
}

State block_vector_state(const Vec& xi, const BlockStructure& bs,
                         std::size_t block_index) {
  std::vector<Mat> dk;
  for (std::size_t k = 0; k < bs.blocks.size(); ++k) {
    const Eigen::Index nk = bs.blocks[k].irrep_dim;
    if (k == block_index) {
      if (xi.size() != nk)
        throw std::invalid_argument("block_vector_state: vector dimension");
      dk.push_back(xi * xi.adjoint() / xi.squaredNorm());
    } else {
      dk.push_back(Mat::Zero(nk, nk));
    }
  }
  return State{embed_block_densities(dk, bs)};
}

AmbiguousMixture ambiguous_mixture(const StarAlgebra& alg, std::uint64_t seed,
                                   double tol) {
  // Noncommutativity witness pair from the self-adjoint spanning set.
  const std::vector<Mat> herms = alg.hermitian_spanning_set();
  double best = 0.0;
  Mat ha, hb;
  for (std::size_t i = 0; i < herms.size(); ++i)
    for (std::size_t j = i + 1; j < herms.size(); ++j) {
      const double c = comm(herms[i], herms[j]).norm();
      if (c > best) {
        best = c;
        ha = herms[i];
        hb = herms[j];
      }
    }
  if (best <= tol)
    throw AbelianAlgebra(
        "ambiguous_mixture: algebra is abelian, no ambiguous mixtures exist");

  const BlockStructure bs = wedderburn_decompose(alg);
  const Mat commutator = comm(ha, hb);
  constexpr double kWitnessFloor = 1e-6;

  // A pure state of the algebra that sees the commutator: random ambient
  // vectors first, then eigenvectors of the (self-adjoint) i[A,B].
  auto try_vector = [&](const Vec& v) -> bool {
    const Cx w = v.dot(commutator * v);
    if (std::abs(w) <= kWitnessFloor) return false;
    return is_pure_on(State{v * v.adjoint()}, bs, 1e-7);
  };
  Vec winner;
  bool found = false;
  Rng rng(derive_seed(seed, 0xA1B));
  for (int attempt = 0; attempt < 1000 && !found; ++attempt) {
    Vec v = rng.unit_vector(alg.ambient_dim());
    if (try_vector(v)) {
      winner = v;
      found = true;
    }
  }
  if (!found) {
    Eigen::SelfAdjointEigenSolver<Mat> es(Cx(0, 1) * commutator);
    std::vector<Eigen::Index> order(static_cast<std::size_t>(
        alg.ambient_dim()));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
      return std::abs(es.eigenvalues()(a)) > std::abs(es.eigenvalues()(b));
    });
    for (Eigen::Index idx : order) {
      Vec v = es.eigenvectors().col(idx);
      if (try_vector(v)) {
        winner = v;
        found = true;
        break;
      }
    }
  }
  if (!found)
    throw SearchFailed(
        "ambiguous_mixture: no pure state with a commutator witness found "
        "(1000 random vectors and all commutator eigenvectors tried; "
        "max commutator norm " + std::to_string(best) + ")");

  AmbiguousMixture mix;
  mix.structure = bs;
  mix.witness = std::abs(winner.dot(commutator * winner));

  // Locate the block carrying the state and its irrep-factor vector.
  const std::vector<Mat> dks =
      block_densities(winner * winner.adjoint(), bs);
  std::size_t blk = 0;
  double mass = -1.0;
  for (std::size_t k = 0; k < dks.size(); ++k) {
    const double m = dks[k].trace().real();
    if (m > mass) {
      mass = m;
      blk = k;
    }
  }
  mix.block_index = blk;
  const Eigen::Index nk = bs.blocks[blk].irrep_dim;
  if (nk < 2)
    throw SearchFailed("ambiguous_mixture: witness landed in a scalar block");
  Eigen::SelfAdjointEigenSolver<Mat> des(dks[blk]);
  mix.xi1 = des.eigenvectors().col(nk - 1);  // top eigenvector, rank-one d_k

  // Deterministic orthogonal partner: the standard basis direction most
  // orthogonal to xi1, projected and normalized.
  Eigen::Index pick = 0;
  double smallest = 2.0;
  for (Eigen::Index i = 0; i < nk; ++i) {
    const double ov = std::abs(mix.xi1(i));
    if (ov < smallest) {
      smallest = ov;
      pick = i;
    }
  }
  Vec e = Vec::Zero(nk);
  e(pick) = 1.0;
  mix.xi2 = e - mix.xi1.dot(e) * mix.xi1;
  mix.xi2 /= mix.xi2.norm();

  const Vec xp = (mix.xi1 + mix.xi2) / std::sqrt(2.0);
  const Vec xm = (mix.xi1 - mix.xi2) / std::sqrt(2.0);
  mix.omega1 = block_vector_state(mix.xi1, bs, blk);
  mix.omega2 = block_vector_state(mix.xi2, bs, blk);
  mix.omega_plus = block_vector_state(xp, bs, blk);
  mix.omega_minus = block_vector_state(xm, bs, blk);
  mix.barycenter =
      State{(mix.omega1.density + mix.omega2.density) / 2.0};
  mix.mixture_residual =
      ((mix.omega1.density + mix.omega2.density) / 2.0 -
       (mix.omega_plus.density + mix.omega_minus.density) / 2.0)
          .norm();
  if (mix.mixture_residual > tol)
    throw SearchFailed("ambiguous_mixture: mixture identity residual " +
                       std::to_string(mix.mixture_residual));
  for (const State* s : {&mix.omega1, &mix.omega2, &mix.omega_plus,
                         &mix.omega_minus})
    if (!is_pure_on(*s, bs, 1e-7))
      throw SearchFailed("ambiguous_mixture: constructed state is not pure");

  mix.gns = gns_construct(alg, mix.omega1, tol);
  if (mix.gns.carrier_dim != nk)
    throw SearchFailed("ambiguous_mixture: carrier dimension " +
                       std::to_string(mix.gns.carrier_dim) +
                       " does not match the block irrep " +
                       std::to_string(nk));
  return mix;
}

SchmidtDecomposition schmidt_decompose(const Vec& psi,
                                       const TensorSplit& split) {
  if (psi.size() != split.left * split.right)
    throw TensorAlignment("schmidt_decompose: vector does not match split");
  const Mat m = unvectorize(psi, split.left, split.right);
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::Index r = std::min(split.left, split.right);
  SchmidtDecomposition out;
  out.coefficients = svd.singularValues().head(r);
  out.left = svd.matrixU().leftCols(r);
  out.right = svd.matrixV().conjugate().leftCols(r);
  return out;
}

}  // namespace cstar
