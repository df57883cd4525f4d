// Dense complex matrix helpers shared by every module.
//
// Conventions: operators live in M_n(C) as Eigen::MatrixXcd; the inner
// product on operator space is <X,Y> = tr(X^* Y), so an orthonormal family
// under `hs_inner` spans with Frobenius-unit elements.
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <vector>

namespace cstar {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;
using Cx = std::complex<double>;

inline Mat dagger(const Mat& a) { return a.adjoint(); }

inline Mat comm(const Mat& a, const Mat& b) { return a * b - b * a; }

inline Cx hs_inner(const Mat& x, const Mat& y) {
  return (x.adjoint() * y).trace();
}

inline double fro_norm(const Mat& a) { return a.norm(); }

// Operator norm = largest singular value.
inline double op_norm(const Mat& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0.0;
  return a.jacobiSvd().singularValues()(0);
}

// Trace norm = sum of singular values.
inline double trace_norm(const Mat& a) {
  if (a.rows() == 0 || a.cols() == 0) return 0.0;
  return a.jacobiSvd().singularValues().sum();
}

inline bool is_hermitian(const Mat& a, double tol) {
  return (a - a.adjoint()).norm() <= tol;
}

inline Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// Column-stacking of the rows: vec(A)(i*cols+j) = A(i,j).  Any fixed
// convention works as long as it is used consistently; this one makes
// vec(kron-free) reshaping of bipartite vectors trivial.
inline Vec vectorize(const Mat& a) {
  Vec v(a.rows() * a.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) v(i * a.cols() + j) = a(i, j);
  return v;
}

inline Mat unvectorize(const Vec& v, Eigen::Index rows, Eigen::Index cols) {
  if (v.size() != rows * cols)
    throw std::invalid_argument("unvectorize: size mismatch");
  Mat a(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) a(i, j) = v(i * cols + j);
  return a;
}

// Hermitian square root with eigenvalue clamping; eigenvalues below -tol
// are a caller error.
inline Mat hermitian_sqrt(const Mat& a, double tol) {
  Eigen::SelfAdjointEigenSolver<Mat> es(a);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("hermitian_sqrt: eigensolver failed");
  Eigen::VectorXd ev = es.eigenvalues();
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) < -tol)
      throw std::invalid_argument("hermitian_sqrt: negative eigenvalue " +
                                  std::to_string(ev(i)));
    if (ev(i) < 0) ev(i) = 0;
  }
  return es.eigenvectors() * ev.cwiseSqrt().asDiagonal() *
         es.eigenvectors().adjoint();
}

// Partial traces of an operator on C^{dl} (x) C^{dr}; composite index
// (i,a) = i*dr + a matches kron().
inline Mat partial_trace_right(const Mat& a, Eigen::Index dl, Eigen::Index dr) {
  if (a.rows() != dl * dr || a.cols() != dl * dr)
    throw std::invalid_argument("partial_trace_right: dimension mismatch");
  Mat out = Mat::Zero(dl, dl);
  for (Eigen::Index i = 0; i < dl; ++i)
    for (Eigen::Index j = 0; j < dl; ++j)
      for (Eigen::Index k = 0; k < dr; ++k)
        out(i, j) += a(i * dr + k, j * dr + k);
  return out;
}

inline Mat partial_trace_left(const Mat& a, Eigen::Index dl, Eigen::Index dr) {
  if (a.rows() != dl * dr || a.cols() != dl * dr)
    throw std::invalid_argument("partial_trace_left: dimension mismatch");
  Mat out = Mat::Zero(dr, dr);
  for (Eigen::Index i = 0; i < dr; ++i)
    for (Eigen::Index j = 0; j < dr; ++j)
      for (Eigen::Index k = 0; k < dl; ++k)
        out(i, j) += a(k * dr + i, k * dr + j);
  return out;
}

// Fixed 2x2 constants used throughout tests and scenario builders.
inline Mat pauli_x() {
  Mat m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}
inline Mat pauli_y() {
  Mat m(2, 2);
  m << Cx(0, 0), Cx(0, -1), Cx(0, 1), Cx(0, 0);
  return m;
}
inline Mat pauli_z() {
  Mat m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

}  // namespace cstar
