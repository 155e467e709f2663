#pragma once

#include <vector>

#include "qschur/qmatrix.hpp"

namespace qschur {

struct EigenSystem {
  /** Eigenvector matrix, one eigenvector per column. */
  QMatrix x;
  /** Standardized eigenvalues, X(:,k) paired with lambdas[k]. */
  std::vector<Complex> lambdas;
};

/**
 * @brief Right eigenvectors of an upper triangular T with standardized
 * diagonal by back substitution; the result is upper triangular with
 * X(k,k) = 1 (or the rescue scale when the overflow guard fired, so that
 * T X(:,k) = X(:,k) lambda_k always holds to roundoff). Throws
 * nondistinct_spectrum_error when two diagonal classes coincide within
 * eps * (|l_i| + |l_k| + 1).
 */
EigenSystem triangular_eigenvectors(const QMatrix& t, bool normalize = false);

/**
 * @brief Eigenvectors of the matrix behind a decomposition A = U T U^H:
 * columns of U * X_tri, eigenvalues carried over.
 */
EigenSystem full_eigenvectors(const QMatrix& u, const EigenSystem& tri);

}  // namespace qschur
