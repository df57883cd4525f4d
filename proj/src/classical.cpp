#include "cstar/classical.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace cstar {
namespace {

std::vector<std::string> index_labels(Eigen::Index n) {
  std::vector<std::string> out;
  out.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) out.push_back(std::to_string(i));
  return out;
}

void check_subset(Eigen::Index n, const std::vector<Eigen::Index>& subset,
                  const char* caller) {
  for (Eigen::Index i : subset) {
    if (i < 0 || i >= n)
      throw std::invalid_argument(std::string(caller) +
                                  ": point index out of range");
  }
}

}  // namespace

FinitePhaseSpace make_phase_space(Eigen::Index n) {
  return make_phase_space(index_labels(n));
}

FinitePhaseSpace make_phase_space(std::vector<std::string> points) {
  if (points.empty())
    throw std::invalid_argument("make_phase_space: need at least one point");
  std::set<std::string> distinct(points.begin(), points.end());
  if (distinct.size() != points.size())
    throw std::invalid_argument("make_phase_space: duplicate point label");
  const Eigen::Index n = static_cast<Eigen::Index>(points.size());
  return FinitePhaseSpace{std::move(points), diagonal_algebra(n)};
}

double Measure::operator()(const RVec& g) const {
  if (g.size() != weights.size())
    throw std::invalid_argument("Measure: function size mismatch");
  return weights.dot(g);
}

Measure make_measure(RVec weights, double tol) {
  if (weights.size() == 0)
    throw std::invalid_argument("make_measure: empty weight vector");
  for (Eigen::Index i = 0; i < weights.size(); ++i) {
    if (weights(i) < -tol)
      throw std::invalid_argument("make_measure: negative weight " +
                                  std::to_string(weights(i)));
    if (weights(i) < 0) weights(i) = 0.0;
  }
  if (std::abs(weights.sum() - 1.0) > tol)
    throw std::invalid_argument("make_measure: total weight " +
                                std::to_string(weights.sum()));
  return Measure{std::move(weights)};
}

RVec indicator(Eigen::Index n, const std::vector<Eigen::Index>& subset) {
  check_subset(n, subset, "indicator");
  RVec chi = RVec::Zero(n);
  for (Eigen::Index i : subset) chi(i) = 1.0;
  return chi;
}

Measure conditional_measure(const Measure& mu,
                            const std::vector<Eigen::Index>& event,
                            double tol) {
  const RVec chi = indicator(mu.size(), event);
  const double weight = mu(chi);
  if (weight <= tol)
    throw ZeroProbabilityEvent("conditional_measure: event has weight " +
                               std::to_string(weight));
  return Measure{(mu.weights.array() * chi.array() / weight).matrix()};
}

double conditional_update(const Measure& mu,
                          const std::vector<Eigen::Index>& event, const RVec& g,
                          double tol) {
  // rho(chi g chi) / rho(chi); the indicator is idempotent, so the
  // numerator is the expectation of g cut down to the event.
  const RVec chi = indicator(mu.size(), event);
  const double weight = mu(chi);
  if (weight <= tol)
    throw ZeroProbabilityEvent("conditional_update: event has weight " +
                               std::to_string(weight));
  return mu((chi.array() * g.array() * chi.array()).matrix()) / weight;
}

Channel flow_automorphism(const std::vector<Eigen::Index>& perm) {
  const Eigen::Index n = static_cast<Eigen::Index>(perm.size());
  if (n == 0) throw std::invalid_argument("flow_automorphism: empty map");
  check_subset(n, perm, "flow_automorphism");
  std::vector<bool> hit(static_cast<std::size_t>(n), false);
  for (Eigen::Index i : perm) {
    if (hit[static_cast<std::size_t>(i)])
      throw std::invalid_argument("flow_automorphism: map is not a bijection");
    hit[static_cast<std::size_t>(i)] = true;
  }
  // Columns: U e_j = e_{perm(j)}, so U^* diag(f) U = diag(f o perm).
  Mat u = Mat::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) u(perm[static_cast<std::size_t>(j)], j) = 1.0;
  return unitary_channel(u);
}

RVec GelfandTransform::function_of(const Mat& a) const {
  const Eigen::Index k = static_cast<Eigen::Index>(projections.size());
  RVec values(k);
  double imag = 0.0;
  for (Eigen::Index j = 0; j < k; ++j) {
    const Cx v = (projections[static_cast<std::size_t>(j)] * a).trace() /
                 projections[static_cast<std::size_t>(j)].trace();
    values(j) = std::real(v);
    imag = std::max(imag, std::abs(std::imag(v)));
  }
  if (imag > 1e-9 * std::max(1.0, a.norm()))
    throw std::invalid_argument(
        "GelfandTransform::function_of: element is not self-adjoint");
  return values;
}

Mat GelfandTransform::element_of(const RVec& f) const {
  const Eigen::Index k = static_cast<Eigen::Index>(projections.size());
  if (f.size() != k)
    throw std::invalid_argument("GelfandTransform::element_of: size mismatch");
  Mat out = Mat::Zero(unitary.rows(), unitary.cols());
  for (Eigen::Index j = 0; j < k; ++j)
    out += f(j) * projections[static_cast<std::size_t>(j)];
  return out;
}

GelfandTransform gelfand_transform(const StarAlgebra& abelian, double tol) {
  if (!abelian.is_abelian(tol))
    throw NotAbelian("gelfand_transform: algebra is not abelian");
  const Eigen::Index n = abelian.ambient_dim();

  // Refine the ambient space into joint eigenspaces of a self-adjoint
  // spanning family; every element is scalar on each sector.
  std::vector<Mat> sectors{Mat::Identity(n, n)};
  for (const Mat& h : abelian.hermitian_spanning_set()) {
    std::vector<Mat> next;
    for (const Mat& q : sectors) {
      if (q.cols() == 1) {
        next.push_back(q);
        continue;
      }
      Eigen::SelfAdjointEigenSolver<Mat> es(Mat(q.adjoint() * h * q));
      if (es.info() != Eigen::Success)
        throw std::runtime_error("gelfand_transform: eigensolver failed");
      const std::vector<Eigen::Index> cluster =
          cluster_eigenvalues(es.eigenvalues());
      const Eigen::Index parts = cluster.empty() ? 0 : cluster.back() + 1;
      for (Eigen::Index c = 0; c < parts; ++c) {
        std::vector<Eigen::Index> cols;
        for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
          if (cluster[static_cast<std::size_t>(i)] == c) cols.push_back(i);
        Mat sub(q.rows(), static_cast<Eigen::Index>(cols.size()));
        for (std::size_t i = 0; i < cols.size(); ++i)
          sub.col(static_cast<Eigen::Index>(i)) =
              q * es.eigenvectors().col(cols[i]);
        next.push_back(sub);
      }
    }
    sectors = std::move(next);
  }

  if (static_cast<Eigen::Index>(sectors.size()) != abelian.dim())
    throw RankAmbiguity(
        "gelfand_transform: found " + std::to_string(sectors.size()) +
        " characters for an algebra of dimension " +
        std::to_string(abelian.dim()));

  // Deterministic layout: sectors by first supported ambient coordinate
  // (stable, so ties keep the ascending-eigenvalue refinement order),
  // columns phase-fixed; an already-diagonal algebra gets the identity.
  std::stable_sort(sectors.begin(), sectors.end(), [](const Mat& x, const Mat& y) {
    auto first_row = [](const Mat& q) {
      for (Eigen::Index i = 0; i < q.rows(); ++i)
        if (q.row(i).norm() > 1e-6) return i;
      return q.rows();
    };
    return first_row(x) < first_row(y);
  });
  for (Mat& q : sectors) {
    for (Eigen::Index c = 0; c < q.cols(); ++c) {
      for (Eigen::Index i = 0; i < q.rows(); ++i) {
        const Cx v = q(i, c);
        if (std::abs(v) > 1e-6) {
          q.col(c) *= std::conj(v) / std::abs(v);
          break;
        }
      }
    }
  }

  GelfandTransform out{make_phase_space(
                           static_cast<Eigen::Index>(sectors.size())),
                       Mat(n, n),
                       {}};
  Eigen::Index col = 0;
  for (const Mat& q : sectors) {
    out.unitary.middleCols(col, q.cols()) = q;
    out.projections.push_back(q * q.adjoint());
    col += q.cols();
  }

  // Certify the isomorphism: projections belong to the algebra and
  // resolve the identity, and every basis element round-trips through
  // its function values.
  Mat resolve = Mat::Zero(n, n);
  for (const Mat& p : out.projections) {
    if (abelian.membership_residual(p) > tol)
      throw RankAmbiguity(
          "gelfand_transform: character projection leaves the algebra");
    resolve += p;
  }
  if ((resolve - Mat::Identity(n, n)).norm() > 1e-10 * n)
    throw RankAmbiguity("gelfand_transform: projections do not resolve I");
  for (const Mat& b : abelian.basis()) {
    Mat rebuilt = Mat::Zero(n, n);
    for (const Mat& p : out.projections)
      rebuilt += (p * b).trace() / p.trace() * p;
    if ((rebuilt - b).norm() > 1e-10 * std::max(1.0, b.norm()))
      throw RankAmbiguity("gelfand_transform: round trip failed on a basis "
                          "element");
  }
  return out;
}

}  // namespace cstar
