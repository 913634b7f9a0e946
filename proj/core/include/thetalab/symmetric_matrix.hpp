#pragma once

#include <Eigen/Dense>
#include <utility>

#include "thetalab/errors.hpp"

namespace thetalab::rmt {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Dense real symmetric matrix. Entries (i,j) and (j,i) are bit-identical:
// constructors either verify that or enforce it by averaging.
class SymmetricMatrix {
 public:
  SymmetricMatrix() = default;

  // Takes a matrix that is already exactly symmetric; throws otherwise.
  static SymmetricMatrix checked(Matrix m) {
    if (m.rows() != m.cols()) throw InvalidInput("SymmetricMatrix: not square");
    if (m.rows() < 1) throw InvalidInput("SymmetricMatrix: n must be >= 1");
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      for (Eigen::Index i = 0; i < j; ++i)
        if (m(i, j) != m(j, i))
          throw InvalidInput("SymmetricMatrix: entries not bit-symmetric");
    return SymmetricMatrix(std::move(m));
  }

  // Symmetrizes by copying the lower triangle over the upper one.
  static SymmetricMatrix from_lower(Matrix m) {
    if (m.rows() != m.cols()) throw InvalidInput("SymmetricMatrix: not square");
    if (m.rows() < 1) throw InvalidInput("SymmetricMatrix: n must be >= 1");
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      for (Eigen::Index i = 0; i < j; ++i) m(i, j) = m(j, i);
    return SymmetricMatrix(std::move(m));
  }

  // Symmetrizes by averaging, for products like U diag(a) U^T that are
  // symmetric only up to roundoff.
  static SymmetricMatrix symmetrized(const Matrix& m) {
    if (m.rows() != m.cols()) throw InvalidInput("SymmetricMatrix: not square");
    if (m.rows() < 1) throw InvalidInput("SymmetricMatrix: n must be >= 1");
    Matrix s = 0.5 * (m + m.transpose());
    return SymmetricMatrix(std::move(s));
  }

  int n() const { return static_cast<int>(mat_.rows()); }
  double operator()(int i, int j) const { return mat_(i, j); }
  const Matrix& mat() const { return mat_; }
  Matrix& mat_unchecked() { return mat_; }  // caller keeps symmetry

  double frobenius_norm() const { return mat_.norm(); }
  double trace() const { return mat_.trace(); }

 private:
  explicit SymmetricMatrix(Matrix m) : mat_(std::move(m)) {}
  Matrix mat_;
};

}  // namespace thetalab::rmt
