#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qschur/errors.hpp"
#include "qschur/qmatrix.hpp"
#include "qschur/reorder.hpp"

namespace qschur {

/** @brief Real quadratic z*z + p1*z + p0 whose roots span the shift class. */
struct ShiftPoly {
  double p1 = 0.0;
  double p0 = 0.0;
};

/** @brief Wall-clock attribution, in seconds. */
struct PhaseTimers {
  double q_seconds = 0.0;    ///< accumulation of transforms into U
  double aed_seconds = 0.0;  ///< time inside aed_step
};

struct SchurOptions {
  bool use_aed = true;
  AedConfig aed;
  /** 0 selects the default budget of 30 * n sweeps. */
  int max_sweeps = 0;
  /** Optional phase timing sink; may be null. */
  PhaseTimers* timers = nullptr;
};

struct SchurDecomposition {
  QMatrix u;  ///< unitary
  QMatrix t;  ///< upper triangular, diagonal standardized into the closed upper half-plane
  /** QR sweeps run by this invocation's own main loop (window sweeps excluded). */
  int sweeps = 0;
  std::optional<AedStats> aed_stats;  ///< engaged when use_aed was set
};

/** @brief Thrown when the sweep budget runs out; carries the partial reduction. */
class schur_convergence_error : public convergence_error {
 public:
  schur_convergence_error(const std::string& what, SchurDecomposition partial)
      : convergence_error(what), partial_(std::move(partial)) {}
  /** Unconverged state: t is still Hessenberg-like, u holds the work so far. */
  const SchurDecomposition& partial() const { return partial_; }

 private:
  SchurDecomposition partial_;
};

struct HessenbergResult {
  QMatrix h;
  QMatrix u;
};

/**
 * @brief Reduces a square A to upper Hessenberg form by Householder
 * reflections, H = U^H A U with entries below the subdiagonal exactly zero.
 * For n <= 2 returns H = A, U = I bitwise.
 */
HessenbergResult hessenberg_reduce(const QMatrix& a, PhaseTimers* timers = nullptr);

/**
 * @brief Standardized representative (closed upper half-plane) of one right
 * eigenvalue class of a 2x2 quaternion matrix, picked as the root closest to
 * the class of the trailing entry. The zero matrix yields 0.
 */
Complex eig2x2(const QMatrix& b);

/** @brief Shift polynomial from the trailing 2x2 of the window [lo, hi]. */
ShiftPoly make_shift(const QMatrix& h, int lo, int hi);

/**
 * @brief One implicit double-step QR sweep on the unreduced window [lo, hi] of
 * the Hessenberg H, chasing the bulge of the real polynomial p. U receives the
 * same transforms on the right. Requires hi > lo.
 */
void qr_sweep(QMatrix& h, QMatrix& u, int lo, int hi, const ShiftPoly& p,
              PhaseTimers* timers = nullptr);

/**
 * @brief Zeroes every negligible subdiagonal entry in [lo, hi]; an entry is
 * negligible below eps * (|H(i,i)| + |H(i+1,i+1)|), floored at the smallest
 * normal double. Returns the indices i whose H(i+1, i) is now exactly zero.
 */
std::vector<int> deflation_scan(QMatrix& h, int lo, int hi);

/**
 * @brief Rotates every diagonal entry of the triangular T into the closed
 * upper half-plane by a two-sided unit-quaternion similarity, updating the
 * affected row and column of T and column of U. Entries already complex with
 * nonnegative imaginary part are left bitwise intact.
 */
void standardize_diagonal(QMatrix& t, QMatrix& u);

/**
 * @brief Schur decomposition A = U T U^H of a square quaternion matrix: U
 * unitary, T upper triangular with standardized diagonal. Implicit QR with
 * real quadratic shifts; aggressive early deflation per opts. Throws
 * schur_convergence_error (with partial results) if the sweep budget runs out.
 */
SchurDecomposition schur_decompose(const QMatrix& a, const SchurOptions& opts = {});

}  // namespace qschur
