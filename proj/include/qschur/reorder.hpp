#pragma once

#include <vector>

#include "qschur/qmatrix.hpp"

namespace qschur {

/** @brief Tuning knobs for aggressive early deflation. */
struct AedConfig {
  /** 0 selects the built-in size schedule; otherwise the requested window. */
  int window_override = 0;
  /** Skip the QR sweep following a step that deflates at least this share. */
  double nibble_percent = 14.0;
  enum class SpikeRule { standard, never_deflate };
  /** never_deflate drives every spike test to fail (diagnostics only). */
  SpikeRule spike_rule = SpikeRule::standard;
};

struct AedOutcome {
  int n_deflated = 0;
  int n_undeflatable = 0;
  /** Spike vector after the window reduction, before any convergence test. */
  std::vector<Quaternion> spike;
};

/** @brief Aggregate over the aed_step calls of one decomposition. */
struct AedStats {
  int calls = 0;
  int deflated = 0;
  int undeflatable = 0;
  int sweeps_skipped = 0;
};

/**
 * @brief Exchanges the eigenvalue classes at positions k and k+1 of the upper
 * triangular T (standardized diagonal) by a unitary rotation, updating rows and
 * columns of T outside the 2x2 block and columns k, k+1 of Q. The diagonal
 * entries are exchanged by copy, so they are preserved bitwise. Equal classes
 * (within the Sylvester degeneracy tolerance) return the identity rotation and
 * leave T untouched. Returns the rotation used.
 */
Rotation2 swap_adjacent(QMatrix& t, QMatrix& q, int k);

/**
 * @brief Moves the selected eigenvalues to the leading positions of T with a
 * stable bubble pass of adjacent swaps; select indexes the .input. diagonal
 * positions. Returns p with p[new_pos] = old_pos.
 */
std::vector<int> reorder_selected(QMatrix& t, QMatrix& q, const std::vector<bool>& select);

/**
 * @brief Deflation window size for an active range of size n: 0 below n = 12
 * (disabled), then a step schedule (4 / 6 / 10 / 24 / 64), always at most
 * n - 1 so a spike column exists.
 */
int aed_window_size(int n, const AedConfig& cfg);

/**
 * @brief One aggressive-early-deflation step on the active range [lo, hi] of
 * the Hessenberg H: Schur-reduces the trailing window, tests the spike bottom
 * up, rotates undeflatable eigenvalues to the window top, and restores the
 * Hessenberg form. Deflated diagonal entries are standardized and the active
 * range never grows. U receives every transform applied to H.
 */
AedOutcome aed_step(QMatrix& h, QMatrix& u, int lo, int hi, const AedConfig& cfg);

namespace detail {
/** @brief swap_adjacent that also rotates one extra column (the AED spike). */
Rotation2 swap_with_spike(QMatrix& t, QMatrix* q, int k, int spike_col);
}  // namespace detail

}  // namespace qschur
