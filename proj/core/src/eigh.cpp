#include "thetalab/eigh.hpp"

#include <lapacke.h>

#include <cmath>
#include <mutex>
#include <string>

#include "thetalab/errors.hpp"

extern "C" void openblas_set_num_threads(int);

namespace thetalab::rmt {

namespace {
// Trials parallelize across threads; BLAS stays single-threaded inside so
// results do not depend on the thread count.
void pin_blas_threads() {
  static std::once_flag flag;
  std::call_once(flag, [] { openblas_set_num_threads(1); });
}
}  // namespace

SpectralDecomposition eigh(const SymmetricMatrix& a) {
  pin_blas_threads();
  const int n = a.n();
  if (!a.mat().allFinite())
    throw InvalidInput("eigh: matrix has non-finite entries");

  Matrix v = a.mat();  // overwritten with eigenvectors, column-major
  Vector w(n);
  const lapack_int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'L', n,
                                         v.data(), n, w.data());
  if (info != 0)
    throw NumericalFailure("eigh: dsyevd failed (n=" + std::to_string(n) +
                           ", info=" + std::to_string(info) + ")");

  // LAPACK returns ascending order; flip to descending.
  SpectralDecomposition d;
  d.eigenvalues = w.reverse();
  d.eigenvectors = v.rowwise().reverse();
  d.source_frobenius = a.frobenius_norm();

  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      const double x = d.eigenvectors(i, k);
      if (x != 0.0) {
        if (x < 0.0) d.eigenvectors.col(k) = -d.eigenvectors.col(k);
        break;
      }
    }
  }
  return d;
}

std::pair<SymmetricMatrix, SymmetricMatrix> spectral_split(
    const SpectralDecomposition& d, int cut) {
  const int n = d.n();
  if (cut < 0 || cut > n) throw InvalidInput("spectral_split: cut out of range");

  const auto part = [&](int lo, int hi) {
    if (lo == hi) return SymmetricMatrix::symmetrized(Matrix::Zero(n, n));
    const auto u = d.eigenvectors.middleCols(lo, hi - lo);
    Matrix m = u * d.eigenvalues.segment(lo, hi - lo).asDiagonal() * u.transpose();
    return SymmetricMatrix::symmetrized(m);
  };
  return {part(0, cut), part(cut, n)};
}

}  // namespace thetalab::rmt
