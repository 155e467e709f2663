#pragma once

#include <vector>

#include "qschur/qmatrix.hpp"
#include "qschur/quaternion.hpp"

namespace qschur {

/**
 * @brief True when the similarity classes of alpha and beta coincide within
 * eps * (|alpha| + |beta|), i.e. alpha is that close to beta or to conj(beta).
 */
bool sylvester_degenerate(const Complex& alpha, const Complex& beta);

/**
 * @brief Unique chi with alpha * chi - chi * beta = gamma for complex alpha,
 * beta. Splitting chi = chi1 + chi2 * j decouples the equation into
 * (alpha - beta) * chi1 = gamma1 and (alpha - conj(beta)) * chi2 = gamma2.
 * Raises degenerate_sylvester_error when the classes coincide.
 */
Quaternion solve_scalar(const Complex& alpha, const Complex& beta, const Quaternion& gamma);

/**
 * @brief Independent route for the same scalar equation with fully quaternion
 * coefficients: chi -> alpha * chi - chi * beta as a real 4x4 system, solved by
 * Gaussian elimination with partial pivoting. A numerically singular system
 * raises degenerate_sylvester_error.
 */
Quaternion oracle_scalar(const Quaternion& alpha, const Quaternion& beta,
                         const Quaternion& gamma);

/** @brief Solution of T * x - x * lambda = scale * b, T upper triangular. */
struct TriangularSylvesterSolution {
  std::vector<Quaternion> x;
  /** Downscale factor in (0, 1]; 1 unless the growth guard fired. */
  double scale = 1.0;
};

/**
 * @brief Back substitution for T * x - x * lambda = b with complex diagonal
 * entries. A diagonal entry whose class matches lambda raises
 * eigenvalue_collision_error with the offending index; potential overflow
 * triggers a global downscale reported through the scale field.
 */
TriangularSylvesterSolution solve_triu(const QMatrix& t, const Complex& lambda,
                                       std::vector<Quaternion> b);

}  // namespace qschur
