#include "cstar/optimize.hpp"

#include <cmath>
#include <stdexcept>

namespace cstar {

RVec finite_difference_gradient(const Objective& f, const RVec& x,
                                double step) {
  RVec g(x.size());
  RVec probe = x;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double xi = x(i);
    probe(i) = xi + step;
    const double fp = f(probe);
    probe(i) = xi - step;
    const double fm = f(probe);
    probe(i) = xi;
    g(i) = (fp - fm) / (2.0 * step);
  }
  return g;
}

OptimResult adam_minimize(const Objective& f, RVec x0,
                          const AdamOptions& opt) {
  RVec m = RVec::Zero(x0.size());
  RVec v = RVec::Zero(x0.size());
  OptimResult best;
  best.value = f(x0);
  best.x = std::move(x0);
  RVec x = best.x;
  for (int t = 1; t <= opt.max_iters; ++t) {
    const RVec g = finite_difference_gradient(f, x, opt.fd_step);
    best.iterations = t;
    if (g.cwiseAbs().maxCoeff() < opt.grad_tol) {
      best.converged = true;
      break;
    }
    m = opt.beta1 * m + (1.0 - opt.beta1) * g;
    v = opt.beta2 * v + (1.0 - opt.beta2) * g.cwiseProduct(g).eval();
    const double bc1 = 1.0 - std::pow(opt.beta1, t);
    const double bc2 = 1.0 - std::pow(opt.beta2, t);
    x -= (opt.learning_rate / bc1) *
         (m.array() / ((v.array() / bc2).sqrt() + opt.epsilon)).matrix();
    const double val = f(x);
    if (val < best.value) {
      best.value = val;
      best.x = x;
    }
    if (best.value <= opt.value_tol) {
      best.converged = true;
      break;
    }
  }
  return best;
}

std::vector<Mat> kraus_from_parameters(const RVec& params, int count,
                                       Eigen::Index dim_out,
                                       Eigen::Index dim_in) {
  if (params.size() != kraus_parameter_count(count, dim_out, dim_in))
    throw std::invalid_argument("kraus_from_parameters: parameter count");
  // The stacked family must be an isometry on dim_in, which needs at
  // least dim_in rows in total.
  if (count * dim_out < dim_in)
    throw std::invalid_argument(
        "kraus_from_parameters: count * dim_out < dim_in admits no trace "
        "preserving family");
  std::vector<Mat> raw;
  Eigen::Index p = 0;
  for (int k = 0; k < count; ++k) {
    Mat a(dim_out, dim_in);
    for (Eigen::Index i = 0; i < dim_out; ++i)
      for (Eigen::Index j = 0; j < dim_in; ++j) {
        a(i, j) = Cx(params(p), params(p + 1));
        p += 2;
      }
    raw.push_back(std::move(a));
  }
  Mat s = Mat::Zero(dim_in, dim_in);
  for (const Mat& a : raw) s += a.adjoint() * a;
  Eigen::SelfAdjointEigenSolver<Mat> es(s);
  // Floor keeps the map defined on the (measure-zero) singular set; the
  // resulting family then fails trace preservation and scores badly.
  const double floor_val =
      std::max(es.eigenvalues().maxCoeff(), 0.0) * 1e-12 + 1e-300;
  Mat inv_root = Mat::Zero(dim_in, dim_in);
  for (Eigen::Index i = 0; i < dim_in; ++i)
    inv_root += es.eigenvectors().col(i) * es.eigenvectors().col(i).adjoint() /
                std::sqrt(std::max(es.eigenvalues()(i), floor_val));
  std::vector<Mat> out;
  out.reserve(raw.size());
  for (const Mat& a : raw) out.push_back(a * inv_root);
  return out;
}

}  // namespace cstar
