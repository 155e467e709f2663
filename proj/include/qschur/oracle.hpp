#pragma once

#include <complex>
#include <vector>

#include "qschur/qmatrix.hpp"

namespace qschur {

/** @brief Minimal column-major complex matrix for the verification path. */
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(int rows, int cols) : rows_(rows), cols_(cols), d_(size_t(rows) * cols) {}
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  Complex& operator()(int i, int j) { return d_[i + size_t(rows_) * j]; }
  const Complex& operator()(int i, int j) const { return d_[i + size_t(rows_) * j]; }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<Complex> d_;
};

/**
 * @brief Complex form of a quaternion matrix: writing A = A1 + A2 j with
 * complex n x n blocks, returns the 2n x 2n matrix [[A1, A2], [-conj A2,
 * conj A1]]. The map is a ring homomorphism, and every right eigenvalue class
 * of A contributes a conjugate pair to the complex spectrum.
 */
ComplexMatrix complex_adjoint(const QMatrix& a);

/**
 * @brief Eigenvalues of a complex matrix by a self-contained Hessenberg QR
 * iteration (Givens reduction, Wilkinson single shift). The computed unitary
 * is verified against the input; a residual above 1e-10 * ||M||_F raises
 * convergence_error, so a returned spectrum is always certified. Supports
 * dimensions up to 128.
 */
std::vector<Complex> reference_spectrum(const ComplexMatrix& m);

/**
 * @brief One representative per conjugate pair of a conjugation-closed
 * spectrum, folded into the closed upper half-plane and sorted by (Re, Im).
 * The input size must be even. near_real_count, when given, receives the
 * number of representatives with |Im| <= 1e-8.
 */
std::vector<Complex> cplus_representatives(const std::vector<Complex>& eigs,
                                           int* near_real_count = nullptr);

/**
 * @brief Worst pair distance of a greedy nearest-neighbour matching between
 * two equally sized multisets of complex numbers.
 */
double match_spectra(const std::vector<Complex>& a, const std::vector<Complex>& b);

/** @brief ||U^H U - I||_F / sqrt(n). */
double unitarity_error(const QMatrix& u);

/** @brief ||U^H A U - T||_F / ||A||_F (absolute if A is zero). */
double similarity_error(const QMatrix& a, const QMatrix& u, const QMatrix& t);

/**
 * @brief ||A X - X diag(lambda)||_F / ((||A||_F + ||diag(lambda)||_F) ||X||_F),
 * with columns of X acting as right eigenvectors.
 */
double eigenpair_error(const QMatrix& a, const QMatrix& x, const std::vector<Complex>& lambdas);

}  // namespace qschur
