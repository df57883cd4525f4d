// Deterministic randomness.
//
// All stochastic code in the workbench draws from Rng, which wraps
// mt19937_64 but implements its own uniform/normal transforms.  The
// std::*_distribution classes are implementation-defined, so using them
// would break the byte-identical-reports guarantee across toolchains.
// Substreams are derived by hashing (seed, index) so per-round randomness
// never depends on evaluation order.
#pragma once

#include <cstdint>
#include <random>

#include "cstar/matrix.hpp"

namespace cstar {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  return splitmix64(splitmix64(seed) ^ stream);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  // Uniform on [0,1) with 53 bits of mantissa.
  double uniform() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  std::uint64_t integer(std::uint64_t n) {  // uniform on {0,...,n-1}
    return gen_() % n;
  }

  // Marsaglia polar method; deterministic given the generator stream.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double m = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * m;
    have_spare_ = true;
    return u * m;
  }

  Cx cnormal() { return Cx(normal(), normal()); }

  Vec ginibre_vector(Eigen::Index n) {
    Vec v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = cnormal();
    return v;
  }

  Vec unit_vector(Eigen::Index n) {
    Vec v = ginibre_vector(n);
    return v / v.norm();
  }

  Mat ginibre(Eigen::Index r, Eigen::Index c) {
    Mat m(r, c);
    for (Eigen::Index i = 0; i < r; ++i)
      for (Eigen::Index j = 0; j < c; ++j) m(i, j) = cnormal();
    return m;
  }

  Mat hermitian(Eigen::Index n) {
    Mat g = ginibre(n, n);
    return (g + g.adjoint()) / 2.0;
  }

  // Haar unitary via QR of a Ginibre matrix with phase fix on R's diagonal.
  Mat haar_unitary(Eigen::Index n) {
    Mat g = ginibre(n, n);
    Eigen::HouseholderQR<Mat> qr(g);
    Mat q = qr.householderQ();
    Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index i = 0; i < n; ++i) {
      Cx d = r(i, i);
      double ad = std::abs(d);
      q.col(i) *= (ad > 0) ? d / ad : Cx(1, 0);
    }
    return q;
  }

  // Full-rank random density matrix, G G^* normalized.
  Mat density(Eigen::Index n) {
    Mat g = ginibre(n, n);
    Mat d = g * g.adjoint();
    return d / d.trace().real();
  }

  Mat pure_density(Eigen::Index n) {
    Vec v = unit_vector(n);
    return v * v.adjoint();
  }

  std::mt19937_64& raw() { return gen_; }

 private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace cstar
