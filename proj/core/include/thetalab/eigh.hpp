#pragma once

#include <utility>

#include "thetalab/symmetric_matrix.hpp"

namespace thetalab::rmt {

// Eigenvalues in descending order plus an orthonormal eigenbasis.
// Sign convention: the first nonzero coordinate of each eigenvector is
// positive, so repeated runs are bit-identical.
struct SpectralDecomposition {
  Vector eigenvalues;       // descending
  Matrix eigenvectors;      // column k pairs with eigenvalues[k]
  double source_frobenius = 0.0;

  int n() const { return static_cast<int>(eigenvalues.size()); }
};

SpectralDecomposition eigh(const SymmetricMatrix& a);

// Top `cut` eigenpairs and the remaining n-cut eigenpairs as matrices;
// their sum reconstructs the source.
std::pair<SymmetricMatrix, SymmetricMatrix> spectral_split(
    const SpectralDecomposition& d, int cut);

inline int default_cut(int n) { return n / 2; }

}  // namespace thetalab::rmt
