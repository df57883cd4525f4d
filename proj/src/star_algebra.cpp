#include "cstar/star_algebra.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "cstar/random.hpp"

namespace cstar {
namespace {

// Span-membership decisions: a unit candidate either projects into the
// span up to roundoff or sticks out by a macroscopic residual.  Residuals
// between the two cuts mean the rank decision is numerically unsafe.
constexpr double kInSpanCut = 1e-10;
constexpr double kNewDirectionCut = 1e-6;

// Orthonormal extension bookkeeping shared by generate_algebra.
struct SpanBuilder {
  Eigen::Index n;
  std::vector<Mat> basis;
  std::vector<Vec> rows;  // vectorized basis

  Vec residual_vec(const Vec& v) const {
    Vec r = v;
    for (const Vec& b : rows) r -= b.dot(r) * b;  // Eigen dot conjugates b
    return r;
  }

  // Returns true when the candidate added a direction.
  bool push(const Mat& cand) {
    double scale = cand.norm();
    if (scale < 1e-14) return false;
    Vec v = vectorize(cand) / scale;
    Vec r = residual_vec(residual_vec(v));  // re-orthogonalize once
    double res = r.norm();
    if (res <= kInSpanCut) return false;
    if (res < kNewDirectionCut)
      throw RankAmbiguity("generate_algebra: span residual " +
                          std::to_string(res) + " inside the ambiguity band");
    r /= r.norm();
    rows.push_back(r);
    basis.push_back(unvectorize(r, n, n));
    return true;
  }
};

Mat matrix_unit(Eigen::Index n, Eigen::Index i, Eigen::Index j) {
  Mat e = Mat::Zero(n, n);
  e(i, j) = 1.0;
  return e;
}

}  // namespace

StarAlgebra::StarAlgebra(Eigen::Index n, std::vector<Mat> basis,
                         std::vector<Mat> gens)
    : n_(n), basis_(std::move(basis)), generators_(std::move(gens)) {
  stacked_.resize(dim(), n_ * n_);
  for (Eigen::Index i = 0; i < dim(); ++i)
    stacked_.row(i) = vectorize(basis_[static_cast<std::size_t>(i)]);
}

StarAlgebra StarAlgebra::from_orthonormal_basis(std::vector<Mat> basis,
                                                std::vector<Mat> generators,
                                                double tol) {
  if (basis.empty())
    throw std::invalid_argument("StarAlgebra: empty basis");
  const Eigen::Index n = basis.front().rows();
  for (const Mat& b : basis)
    if (b.rows() != n || b.cols() != n)
      throw std::invalid_argument("StarAlgebra: mixed ambient dimensions");

  StarAlgebra alg(n, std::move(basis), std::move(generators));
  const Eigen::Index d = alg.dim();

  Mat gram = alg.stacked_.conjugate() * alg.stacked_.transpose();
  if ((gram - Mat::Identity(d, d)).cwiseAbs().maxCoeff() > tol)
    throw std::invalid_argument("StarAlgebra: basis is not orthonormal");

  if (alg.membership_residual(Mat::Identity(n, n)) >
      tol * std::sqrt(static_cast<double>(n)))
    throw std::invalid_argument("StarAlgebra: identity not in span");
  for (const Mat& b : alg.basis_)
    if (alg.membership_residual(b.adjoint()) > tol)
      throw std::invalid_argument("StarAlgebra: span not adjoint-closed");

  // Product closure.  Above 4096 pairs an exhaustive check would dominate
  // construction time, so fall back to every diagonal pair plus a
  // deterministic pseudo-random sample.
  auto check_pair = [&](Eigen::Index i, Eigen::Index j) {
    const Mat p = alg.basis_[static_cast<std::size_t>(i)] *
                  alg.basis_[static_cast<std::size_t>(j)];
    if (alg.membership_residual(p) > tol)
      throw std::invalid_argument(
          "StarAlgebra: span not closed under products");
  };
  if (d * d <= 4096) {
    for (Eigen::Index i = 0; i < d; ++i)
      for (Eigen::Index j = 0; j < d; ++j) check_pair(i, j);
  } else {
    Rng rng(0xC105u);
    for (Eigen::Index i = 0; i < d; ++i) check_pair(i, i);
    for (int s = 0; s < 4096; ++s)
      check_pair(static_cast<Eigen::Index>(rng.integer(d)),
                 static_cast<Eigen::Index>(rng.integer(d)));
  }
  return alg;
}

Vec StarAlgebra::coefficients(const Mat& x) const {
  return stacked_.conjugate() * vectorize(x);
}

Mat StarAlgebra::element(const Vec& coeffs) const {
  if (coeffs.size() != dim())
    throw std::invalid_argument("StarAlgebra::element: coefficient size");
  return unvectorize(stacked_.transpose() * coeffs, n_, n_);
}

Mat StarAlgebra::project(const Mat& x) const {
  return element(coefficients(x));
}

double StarAlgebra::membership_residual(const Mat& x) const {
  return (x - project(x)).norm();
}

bool StarAlgebra::contains(const Mat& x, double tol) const {
  return membership_residual(x) <= tol * std::max(1.0, x.norm());
}

bool StarAlgebra::is_abelian(double tol) const {
  for (std::size_t i = 0; i < basis_.size(); ++i)
    for (std::size_t j = i + 1; j < basis_.size(); ++j)
      if (comm(basis_[i], basis_[j]).norm() > tol) return false;
  return true;
}

std::vector<Mat> StarAlgebra::hermitian_spanning_set() const {
  std::vector<Mat> out;
  auto push = [&](Mat h) {
    for (const Mat& p : out) h -= hs_inner(p, h).real() * p;
    for (const Mat& p : out) h -= hs_inner(p, h).real() * p;
    double nrm = h.norm();
    if (nrm > kNewDirectionCut) out.push_back(h / nrm);
  };
  for (const Mat& b : basis_) {
    push((b + b.adjoint()) / 2.0);
    push(Cx(0, 1) * (b - b.adjoint()) / 2.0);
  }
  return out;
}

StarAlgebra generate_algebra(const std::vector<Mat>& generators,
                             Eigen::Index ambient_dim, double /*tol*/) {
  SpanBuilder sb{ambient_dim, {}, {}};
  sb.push(Mat::Identity(ambient_dim, ambient_dim));
  for (const Mat& g : generators) {
    if (g.rows() != ambient_dim || g.cols() != ambient_dim)
      throw std::invalid_argument("generate_algebra: generator dimension");
    sb.push(g);
    sb.push(g.adjoint());
  }

  // Worklist closure: every ordered pair of basis elements is multiplied
  // once.  Since the seed set is adjoint-closed, the resulting span is a
  // unital *-algebra; dimension is capped by ambient_dim^2 so this
  // terminates.
  std::size_t processed = 0;
  while (processed < sb.basis.size()) {
    const std::size_t upto = sb.basis.size();
    for (std::size_t i = 0; i < upto; ++i)
      for (std::size_t j = 0; j < upto; ++j) {
        if (i < processed && j < processed) continue;
        sb.push(sb.basis[i] * sb.basis[j]);
      }
    processed = upto;
  }
  return StarAlgebra::from_orthonormal_basis(sb.basis, generators);
}

StarAlgebra commutant(const StarAlgebra& a, double /*tol*/) {
  const Eigen::Index n = a.ambient_dim();
  const Eigen::Index nn = n * n;

  // Normal operator of X -> ([X,G])_G assembled column by column; its
  // kernel is the commutant.  Candidate kernel vectors are certified
  // against the direct commutator residual afterwards, so the squared
  // conditioning of the normal matrix cannot silently misclassify.
  Mat normal = Mat::Zero(nn, nn);
  for (Eigen::Index p = 0; p < n; ++p)
    for (Eigen::Index q = 0; q < n; ++q) {
      const Mat x = matrix_unit(n, p, q);
      Mat acc = Mat::Zero(n, n);
      for (const Mat& g : a.basis()) {
        const Mat y = x * g - g * x;
        acc += y * g.adjoint() - g.adjoint() * y;
      }
      normal.col(p * n + q) = vectorize(acc);
    }
  normal = (normal + normal.adjoint()) / 2.0;

  Eigen::SelfAdjointEigenSolver<Mat> es(normal);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("commutant: eigensolver failed");
  const double lmax = std::max(es.eigenvalues().maxCoeff(), 0.0);

  std::vector<Mat> basis;
  if (lmax < 1e-12) {
    // Everything commutes with a subset of the scalars.
    return full_matrix_algebra(n);
  }
  for (Eigen::Index k = 0; k < nn; ++k) {
    const double lam = std::max(es.eigenvalues()(k), 0.0);
    if (lam <= 1e-10 * lmax) {
      Mat x = unvectorize(es.eigenvectors().col(k), n, n);
      double worst = 0.0;
      for (const Mat& g : a.basis())
        worst = std::max(worst, comm(x, g).norm());
      if (worst > kTolAlgebra)
        throw RankAmbiguity(
            "commutant: kernel candidate fails direct certification, "
            "residual " + std::to_string(worst));
      basis.push_back(std::move(x));
    } else if (lam < 1e-4 * lmax) {
      throw RankAmbiguity("commutant: eigenvalue " + std::to_string(lam) +
                          " inside the ambiguity band (max " +
                          std::to_string(lmax) + ")");
    }
  }
  return StarAlgebra::from_orthonormal_basis(basis, basis);
}

StarAlgebra center(const StarAlgebra& a, double tol) {
  const StarAlgebra c = commutant(a, tol);

  // Principal angles between the two spans; cosines near one are common
  // directions.  Each candidate is certified by direct membership in both
  // spans before acceptance.
  Mat overlap(a.dim(), c.dim());
  for (Eigen::Index i = 0; i < a.dim(); ++i)
    for (Eigen::Index j = 0; j < c.dim(); ++j)
      overlap(i, j) = hs_inner(a.basis()[static_cast<std::size_t>(i)],
                               c.basis()[static_cast<std::size_t>(j)]);
  Eigen::JacobiSVD<Mat> svd(overlap, Eigen::ComputeFullU);

  std::vector<Mat> basis;
  for (Eigen::Index k = 0; k < svd.singularValues().size(); ++k) {
    const double sigma = svd.singularValues()(k);
    if (sigma >= 1.0 - 1e-10) {
      Vec coeff = svd.matrixU().col(k);
      Mat x = a.element(coeff);
      if (a.membership_residual(x) > kTolAlgebra ||
          c.membership_residual(x) > kTolAlgebra)
        throw RankAmbiguity("center: principal vector fails certification");
      basis.push_back(std::move(x));
    } else if (sigma > 1.0 - 1e-6) {
      throw RankAmbiguity("center: principal angle cosine " +
                          std::to_string(sigma) +
                          " inside the ambiguity band");
    }
  }
  return StarAlgebra::from_orthonormal_basis(basis, basis);
}

double max_cross_commutator(const StarAlgebra& a, const StarAlgebra& b) {
  if (a.ambient_dim() != b.ambient_dim())
    throw std::invalid_argument("max_cross_commutator: ambient mismatch");
  double worst = 0.0;
  for (const Mat& x : a.basis())
    for (const Mat& y : b.basis())
      worst = std::max(worst, comm(x, y).norm());
  return worst;
}

bool kinematic_independence(const StarAlgebra& a, const StarAlgebra& b,
                            double tol) {
  return max_cross_commutator(a, b) <= tol;
}

CStarIndependenceReport cstar_independence(const StarAlgebra& a,
                                           const StarAlgebra& b, int samples,
                                           std::uint64_t seed, double tol) {
  if (!kinematic_independence(a, b, tol))
    throw NonCommuting("cstar_independence: algebras do not commute");

  CStarIndependenceReport rep;
  auto consider = [&](const Mat& x, const Mat& y) {
    const double nx = op_norm(x), ny = op_norm(y);
    if (nx * ny < 1e-14) return;
    const double defect = std::abs(op_norm(x * y) - nx * ny) / (nx * ny);
    if (defect > rep.worst_defect) {
      rep.worst_defect = defect;
      rep.witness_a = x;
      rep.witness_b = y;
    }
  };

  for (const Mat& x : a.basis())
    for (const Mat& y : b.basis()) consider(x, y);
  Rng rng(derive_seed(seed, 0x657A));
  for (int s = 0; s < samples; ++s) {
    Vec ca(a.dim()), cb(b.dim());
    for (Eigen::Index i = 0; i < ca.size(); ++i) ca(i) = rng.cnormal();
    for (Eigen::Index i = 0; i < cb.size(); ++i) cb(i) = rng.cnormal();
    consider(a.element(ca), b.element(cb));
  }
  rep.independent = rep.worst_defect <= tol;
  return rep;
}

StarAlgebra full_matrix_algebra(Eigen::Index n) {
  std::vector<Mat> basis;
  basis.reserve(static_cast<std::size_t>(n * n));
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) basis.push_back(matrix_unit(n, i, j));
  return StarAlgebra::from_orthonormal_basis(basis, basis);
}

StarAlgebra diagonal_algebra(Eigen::Index n) {
  std::vector<Mat> basis;
  for (Eigen::Index i = 0; i < n; ++i) basis.push_back(matrix_unit(n, i, i));
  return StarAlgebra::from_orthonormal_basis(basis, basis);
}

StarAlgebra block_diagonal_algebra(
    const std::vector<std::pair<Eigen::Index, Eigen::Index>>& blocks) {
  Eigen::Index total = 0;
  for (auto [nk, mk] : blocks) {
    if (nk <= 0 || mk <= 0)
      throw std::invalid_argument("block_diagonal_algebra: bad block");
    total += nk * mk;
  }
  std::vector<Mat> basis;
  Eigen::Index offset = 0;
  for (auto [nk, mk] : blocks) {
    const double w = 1.0 / std::sqrt(static_cast<double>(mk));
    for (Eigen::Index i = 0; i < nk; ++i)
      for (Eigen::Index j = 0; j < nk; ++j) {
        Mat e = Mat::Zero(total, total);
        for (Eigen::Index c = 0; c < mk; ++c)
          e(offset + i * mk + c, offset + j * mk + c) = w;
        basis.push_back(std::move(e));
      }
    offset += nk * mk;
  }
  return StarAlgebra::from_orthonormal_basis(basis, basis);
}

StarAlgebra tensor_embed_left(const StarAlgebra& a, Eigen::Index right_dim) {
  const Mat eye = Mat::Identity(right_dim, right_dim) /
                  std::sqrt(static_cast<double>(right_dim));
  std::vector<Mat> basis, gens;
  for (const Mat& b : a.basis()) basis.push_back(kron(b, eye));
  for (const Mat& g : a.generators())
    gens.push_back(kron(g, Mat::Identity(right_dim, right_dim)));
  return StarAlgebra::from_orthonormal_basis(basis, gens);
}

StarAlgebra tensor_embed_right(const StarAlgebra& a, Eigen::Index left_dim) {
  const Mat eye = Mat::Identity(left_dim, left_dim) /
                  std::sqrt(static_cast<double>(left_dim));
  std::vector<Mat> basis, gens;
  for (const Mat& b : a.basis()) basis.push_back(kron(eye, b));
  for (const Mat& g : a.generators())
    gens.push_back(kron(Mat::Identity(left_dim, left_dim), g));
  return StarAlgebra::from_orthonormal_basis(basis, gens);
}

}  // namespace cstar
