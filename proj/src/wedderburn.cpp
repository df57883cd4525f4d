#include "cstar/wedderburn.hpp"

#include <algorithm>
#include <string>

#include "cstar/random.hpp"

namespace cstar {
namespace {

// A generic self-adjoint element of an algebra, drawn with real normal
// coefficients against the hermitian spanning set.
Mat random_hermitian_element(const std::vector<Mat>& herm_basis, Rng& rng) {
  Mat acc = Mat::Zero(herm_basis.front().rows(), herm_basis.front().cols());
  for (const Mat& h : herm_basis) acc += rng.normal() * h;
  return acc;
}

// Orthonormal span of the compressions V^* G V of the algebra basis.
std::vector<Mat> compressed_basis(const StarAlgebra& a, const Mat& v) {
  const Eigen::Index d = v.cols();
  std::vector<Mat> out;
  std::vector<Vec> rows;
  for (const Mat& g : a.basis()) {
    Mat c = v.adjoint() * g * v;
    double nrm = c.norm();
    if (nrm < 1e-12) continue;
    Vec vec = vectorize(c) / nrm;
    for (const Vec& r : rows) vec -= r.dot(vec) * r;
    for (const Vec& r : rows) vec -= r.dot(vec) * r;
    double res = vec.norm();
    if (res <= 1e-10) continue;
    if (res < 1e-6)
      throw RankAmbiguity("wedderburn: compressed span residual " +
                          std::to_string(res) + " in the ambiguity band");
    vec /= res;
    rows.push_back(vec);
    out.push_back(unvectorize(vec, d, d));
  }
  return out;
}

}  // namespace

// Commutant of a matrix family inside M_d, via the certified kernel of
// the normal operator (same scheme as commutant() but for a raw family).
std::vector<Mat> matrix_family_commutant(const std::vector<Mat>& fam,
                                         Eigen::Index d) {
  const Eigen::Index dd = d * d;
  Mat normal = Mat::Zero(dd, dd);
  for (Eigen::Index p = 0; p < d; ++p)
    for (Eigen::Index q = 0; q < d; ++q) {
      Mat x = Mat::Zero(d, d);
      x(p, q) = 1.0;
      Mat acc = Mat::Zero(d, d);
      for (const Mat& g : fam) {
        const Mat y = x * g - g * x;
        acc += y * g.adjoint() - g.adjoint() * y;
      }
      normal.col(p * d + q) = vectorize(acc);
    }
  normal = (normal + normal.adjoint()) / 2.0;

  Eigen::SelfAdjointEigenSolver<Mat> es(normal);
  const double lmax = std::max(es.eigenvalues().maxCoeff(), 0.0);
  std::vector<Mat> out;
  for (Eigen::Index k = 0; k < dd; ++k) {
    const double lam = std::max(es.eigenvalues()(k), 0.0);
    if (lmax < 1e-12 || lam <= 1e-10 * lmax) {
      Mat x = unvectorize(es.eigenvectors().col(k), d, d);
      double worst = 0.0;
      for (const Mat& g : fam) worst = std::max(worst, comm(x, g).norm());
      if (worst > kTolAlgebra)
        throw RankAmbiguity("wedderburn: commutant certification failed");
      out.push_back(std::move(x));
    } else if (lam < 1e-4 * lmax) {
      throw RankAmbiguity("wedderburn: commutant eigenvalue in ambiguity band");
    }
  }
  return out;
}

namespace {

std::vector<Mat> hermitian_span(const std::vector<Mat>& fam) {
  std::vector<Mat> out;
  auto push = [&](Mat h) {
    for (const Mat& p : out) h -= hs_inner(p, h).real() * p;
    for (const Mat& p : out) h -= hs_inner(p, h).real() * p;
    double nrm = h.norm();
    if (nrm > 1e-8) out.push_back(h / nrm);
  };
  for (const Mat& b : fam) {
    push((b + b.adjoint()) / 2.0);
    push(Cx(0, 1) * (b - b.adjoint()) / 2.0);
  }
  return out;
}

// Unique (up to phase) intertwiner between two equivalent irreducible
// representations given on a common basis, normalized to a unitary.
Mat irrep_intertwiner(const std::vector<Mat>& pi_ref,
                      const std::vector<Mat>& pi_other, double tol) {
  const Eigen::Index r = pi_ref.front().rows();
  const Eigen::Index rr = r * r;
  // Constraints S pi_ref(G) - pi_other(G) S = 0 stacked into the normal
  // operator on vec(S).
  Mat normal = Mat::Zero(rr, rr);
  for (Eigen::Index p = 0; p < r; ++p)
    for (Eigen::Index q = 0; q < r; ++q) {
      Mat s = Mat::Zero(r, r);
      s(p, q) = 1.0;
      Mat acc = Mat::Zero(r, r);
      for (std::size_t g = 0; g < pi_ref.size(); ++g) {
        const Mat y = s * pi_ref[g] - pi_other[g] * s;
        acc += y * pi_ref[g].adjoint() - pi_other[g].adjoint() * y;
      }
      normal.col(p * r + q) = vectorize(acc);
    }
  normal = (normal + normal.adjoint()) / 2.0;

  Eigen::SelfAdjointEigenSolver<Mat> es(normal);
  Mat s = unvectorize(es.eigenvectors().col(0), r, r);
  // Schur: S^* S is scalar for equivalent irreps.
  const double c = (s.adjoint() * s).trace().real() / static_cast<double>(r);
  if (c < 1e-12)
    throw RankAmbiguity("wedderburn: degenerate intertwiner");
  s /= std::sqrt(c);
  if ((s.adjoint() * s - Mat::Identity(r, r)).norm() > tol * 1e3)
    throw RankAmbiguity("wedderburn: intertwiner is not unitary");
  double worst = 0.0;
  for (std::size_t g = 0; g < pi_ref.size(); ++g)
    worst = std::max(worst, (s * pi_ref[g] - pi_other[g] * s).norm());
  if (worst > tol * 1e3)
    throw RankAmbiguity("wedderburn: intertwiner residual " +
                        std::to_string(worst));
  return s;
}

}  // namespace

std::vector<Eigen::Index> cluster_eigenvalues(const Eigen::VectorXd& ev,
                                              double rel_gap) {
  const Eigen::Index n = ev.size();
  std::vector<Eigen::Index> cluster(static_cast<std::size_t>(n), 0);
  if (n == 0) return cluster;
  const double scale = std::max({1.0, std::abs(ev(0)), std::abs(ev(n - 1))});
  Eigen::Index current = 0;
  for (Eigen::Index i = 1; i < n; ++i) {
    const double gap = ev(i) - ev(i - 1);
    if (gap > 100.0 * rel_gap * scale)
      ++current;
    else if (gap > 0.01 * rel_gap * scale)
      throw RankAmbiguity("cluster_eigenvalues: gap " + std::to_string(gap) +
                          " inside the ambiguity band");
    cluster[static_cast<std::size_t>(i)] = current;
  }
  return cluster;
}

Mat BlockStructure::unitary() const {
  Mat u(ambient_dim, ambient_dim);
  Eigen::Index col = 0;
  for (const WedderburnBlock& b : blocks) {
    u.middleCols(col, b.isometry.cols()) = b.isometry;
    col += b.isometry.cols();
  }
  if (col != ambient_dim)
    throw std::logic_error("BlockStructure: isometries do not fill ambient");
  return u;
}

BlockStructure wedderburn_decompose(const StarAlgebra& a, double tol,
                                    std::uint64_t seed) {
  const Eigen::Index n = a.ambient_dim();
  const StarAlgebra z = center(a);

  // Minimal central projections: eigenspaces of a generic self-adjoint
  // central element.  A degenerate draw (cluster count below dim Z) is
  // retried on a derived seed.
  const std::vector<Mat> zherm = z.hermitian_spanning_set();
  std::vector<std::vector<Eigen::Index>> central_cols;
  Mat zvecs;
  for (int attempt = 0;; ++attempt) {
    if (attempt == 8)
      throw RankAmbiguity("wedderburn: no generic central element found");
    Rng rng(derive_seed(seed, 0x3E0 + static_cast<std::uint64_t>(attempt)));
    Eigen::SelfAdjointEigenSolver<Mat> es(
        random_hermitian_element(zherm, rng));
    std::vector<Eigen::Index> cl;
    try {
      cl = cluster_eigenvalues(es.eigenvalues());
    } catch (const RankAmbiguity&) {
      continue;
    }
    const Eigen::Index nclusters = cl.back() + 1;
    if (nclusters != z.dim()) continue;
    central_cols.assign(static_cast<std::size_t>(nclusters), {});
    for (Eigen::Index i = 0; i < n; ++i)
      central_cols[static_cast<std::size_t>(cl[static_cast<std::size_t>(i)])]
          .push_back(i);
    zvecs = es.eigenvectors();
    break;
  }

  BlockStructure bs;
  bs.ambient_dim = n;
  Eigen::Index dim_check = 0, amb_check = 0;

  for (std::size_t k = 0; k < central_cols.size(); ++k) {
    const auto& cols = central_cols[k];
    const Eigen::Index dk = static_cast<Eigen::Index>(cols.size());
    Mat vk(n, dk);
    for (Eigen::Index c = 0; c < dk; ++c)
      vk.col(c) = zvecs.col(cols[static_cast<std::size_t>(c)]);

    const std::vector<Mat> factor = compressed_basis(a, vk);
    const Eigen::Index fdim = static_cast<Eigen::Index>(factor.size());
    const Eigen::Index nk =
        static_cast<Eigen::Index>(std::llround(std::sqrt(double(fdim))));
    if (nk * nk != fdim)
      throw RankAmbiguity("wedderburn: factor dimension " +
                          std::to_string(fdim) + " is not a square");
    if (dk % nk != 0)
      throw RankAmbiguity("wedderburn: block dimension not divisible");
    const Eigen::Index mk = dk / nk;

    // Multiplicity splitting: eigenspaces of a generic self-adjoint
    // element of the factor's commutant are algebra-invariant subspaces of
    // dimension n_k carrying equivalent irreducibles.
    const std::vector<Mat> com = matrix_family_commutant(factor, dk);
    if (static_cast<Eigen::Index>(com.size()) != mk * mk)
      throw RankAmbiguity("wedderburn: commutant dimension mismatch");
    const std::vector<Mat> cherm = hermitian_span(com);

    std::vector<Mat> w;  // dk x nk eigenspace isometries
    for (int attempt = 0;; ++attempt) {
      if (attempt == 8)
        throw RankAmbiguity("wedderburn: no generic multiplicity element");
      Rng rng(derive_seed(seed, 0x9B0 + 16 * k +
                                    static_cast<std::uint64_t>(attempt)));
      Eigen::SelfAdjointEigenSolver<Mat> es(
          random_hermitian_element(cherm, rng));
      std::vector<Eigen::Index> cl;
      try {
        cl = cluster_eigenvalues(es.eigenvalues());
      } catch (const RankAmbiguity&) {
        continue;
      }
      if (cl.back() + 1 != mk) continue;
      std::vector<std::vector<Eigen::Index>> groups(
          static_cast<std::size_t>(mk));
      for (Eigen::Index i = 0; i < dk; ++i)
        groups[static_cast<std::size_t>(cl[static_cast<std::size_t>(i)])]
            .push_back(i);
      bool ok = true;
      for (const auto& g : groups)
        ok = ok && static_cast<Eigen::Index>(g.size()) == nk;
      if (!ok) continue;
      w.clear();
      for (const auto& g : groups) {
        Mat wj(dk, nk);
        for (Eigen::Index c = 0; c < nk; ++c)
          wj.col(c) = es.eigenvectors().col(g[static_cast<std::size_t>(c)]);
        w.push_back(std::move(wj));
      }
      break;
    }

    // Reference irrep from copy 0, intertwiners aligning the others.
    std::vector<std::vector<Mat>> reps(static_cast<std::size_t>(mk));
    for (Eigen::Index j = 0; j < mk; ++j)
      for (const Mat& f : factor)
        reps[static_cast<std::size_t>(j)].push_back(
            w[static_cast<std::size_t>(j)].adjoint() * f *
            w[static_cast<std::size_t>(j)]);

    WedderburnBlock blk;
    blk.irrep_dim = nk;
    blk.multiplicity = mk;
    blk.isometry.resize(n, nk * mk);
    for (Eigen::Index j = 0; j < mk; ++j) {
      Mat s = (j == 0) ? Mat::Identity(nk, nk)
                       : irrep_intertwiner(reps[0],
                                           reps[static_cast<std::size_t>(j)],
                                           tol);
      const Mat cols = vk * w[static_cast<std::size_t>(j)] * s;  // n x nk
      for (Eigen::Index i = 0; i < nk; ++i)
        blk.isometry.col(i * mk + j) = cols.col(i);
    }
    dim_check += nk * nk;
    amb_check += nk * mk;
    bs.blocks.push_back(std::move(blk));
  }

  if (dim_check != a.dim() || amb_check != n)
    throw RankAmbiguity("wedderburn: dimension bookkeeping failed");

  // Deterministic block order: by the first ambient coordinate the block
  // has support on.  Block-diagonal inputs keep their layout order.
  std::sort(bs.blocks.begin(), bs.blocks.end(),
            [](const WedderburnBlock& x, const WedderburnBlock& y) {
              auto first_row = [](const WedderburnBlock& b) {
                for (Eigen::Index i = 0; i < b.isometry.rows(); ++i)
                  if (b.isometry.row(i).norm() > 1e-6) return i;
                return b.isometry.rows();
              };
              return first_row(x) < first_row(y);
            });

  // Certify: every basis element must conjugate to (+)_k M_k (x) I_{m_k}.
  double worst = 0.0;
  for (const Mat& g : a.basis()) {
    Mat recon = Mat::Zero(n, n);
    for (const WedderburnBlock& b : bs.blocks) {
      const Mat mk = block_element(g, b, 1e300);  // residual handled below
      recon += b.isometry *
               kron(mk, Mat::Identity(b.multiplicity, b.multiplicity)) *
               b.isometry.adjoint();
    }
    worst = std::max(worst, (g - recon).norm());
  }
  if (worst > tol * 1e2)
    throw RankAmbiguity("wedderburn: certification residual " +
                        std::to_string(worst));
  return bs;
}

Mat block_element(const Mat& a, const WedderburnBlock& blk, double tol) {
  const Mat comp = blk.isometry.adjoint() * a * blk.isometry;
  const Eigen::Index nk = blk.irrep_dim, mk = blk.multiplicity;
  Mat m = Mat::Zero(nk, nk);
  for (Eigen::Index i = 0; i < nk; ++i)
    for (Eigen::Index j = 0; j < nk; ++j) {
      Cx acc = 0;
      for (Eigen::Index c = 0; c < mk; ++c) acc += comp(i * mk + c, j * mk + c);
      m(i, j) = acc / static_cast<double>(mk);
    }
  const double res =
      (comp - kron(m, Mat::Identity(mk, mk))).norm();
  if (res > tol)
    throw std::invalid_argument("block_element: operator is not of M (x) I "
                                "shape in this block, residual " +
                                std::to_string(res));
  return m;
}

std::vector<Mat> block_densities(const Mat& density,
                                 const BlockStructure& bs) {
  std::vector<Mat> out;
  for (const WedderburnBlock& b : bs.blocks) {
    const Mat comp = b.isometry.adjoint() * density * b.isometry;
    out.push_back(partial_trace_right(comp, b.irrep_dim, b.multiplicity));
  }
  return out;
}

Mat embed_block_densities(const std::vector<Mat>& dk,
                          const BlockStructure& bs) {
  if (dk.size() != bs.blocks.size())
    throw std::invalid_argument("embed_block_densities: block count");
  Mat out = Mat::Zero(bs.ambient_dim, bs.ambient_dim);
  for (std::size_t k = 0; k < dk.size(); ++k) {
    const WedderburnBlock& b = bs.blocks[k];
    if (dk[k].rows() != b.irrep_dim || dk[k].cols() != b.irrep_dim)
      throw std::invalid_argument(
          "embed_block_densities: block " + std::to_string(k) +
          " expects dimension " + std::to_string(b.irrep_dim));
    const Mat inner =
        kron(dk[k], Mat::Identity(b.multiplicity, b.multiplicity) /
                        static_cast<double>(b.multiplicity));
    out += b.isometry * inner * b.isometry.adjoint();
  }
  return out;
}

}  // namespace cstar
