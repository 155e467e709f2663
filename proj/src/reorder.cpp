#include "qschur/reorder.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <numeric>

#include "qschur/errors.hpp"
#include "qschur/schur.hpp"
#include "qschur/sylvester.hpp"

namespace qschur {

namespace {
constexpr double kEps = std::numeric_limits<double>::epsilon();
}

namespace detail {

Rotation2 swap_with_spike(QMatrix& t, QMatrix* q, int k, int spike_col) {
  const int n = t.rows();
  assert(k >= 0 && k + 1 < n);
  const Complex t11 = to_complex(t(k, k));
  const Complex t22 = to_complex(t(k + 1, k + 1));
  if (sylvester_degenerate(t11, t22)) {
    // Same eigenvalue class on both sides; the exchange is vacuous.
    return Rotation2{Quaternion(1.0), 0.0};
  }
  const Quaternion chi = solve_scalar(t11, t22, -t(k, k + 1));
  const double s = 1.0 / std::hypot(1.0, abs(chi));
  const Rotation2 g{chi * s, s};

  // The 2x2 block transforms analytically: the diagonal entries trade places
  // bitwise and the coupling entry has a closed form.
  const Quaternion chic = conj(chi);
  const Quaternion t12 = t22 * chic - chic * t11;
  const Quaternion d = t(k, k);
  t(k, k) = t(k + 1, k + 1);
  t(k + 1, k + 1) = d;
  t(k, k + 1) = t12;
  t(k + 1, k) = Quaternion();

  apply_rotation_left(g, t, k, k + 2, n);
  if (spike_col >= 0) apply_rotation_left(g, t, k, spike_col, spike_col + 1);
  apply_rotation_right(g, t, k, 0, k);
  if (q) apply_rotation_right(g, *q, k, 0, q->rows());
  return g;
}

}  // namespace detail

Rotation2 swap_adjacent(QMatrix& t, QMatrix& q, int k) {
  if (t.rows() != t.cols()) throw dimension_error("swap_adjacent expects a square matrix");
  if (k < 0 || k + 1 >= t.rows()) throw dimension_error("swap_adjacent position out of range");
  return detail::swap_with_spike(t, &q, k, -1);
}

std::vector<int> reorder_selected(QMatrix& t, QMatrix& q, const std::vector<bool>& select) {
  const int n = t.rows();
  if (t.cols() != n) throw dimension_error("reorder_selected expects a square matrix");
  if (int(select.size()) != n) throw dimension_error("reorder_selected mask size mismatch");
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  int inserted = 0;
  for (int pos = 0; pos < n; ++pos) {
    if (!select[perm[pos]]) continue;
    for (int k = pos - 1; k >= inserted; --k) {
      detail::swap_with_spike(t, &q, k, -1);
      std::swap(perm[k], perm[k + 1]);
    }
    ++inserted;
  }
  return perm;
}

int aed_window_size(int n, const AedConfig& cfg) {
  if (n < 12) return 0;
  int w;
  if (cfg.window_override > 0) {
    w = cfg.window_override;
  } else if (n < 30) {
    w = 4;
  } else if (n < 60) {
    w = 6;
  } else if (n < 150) {
    w = 10;
  } else if (n < 590) {
    w = 24;
  } else {
    w = 64;
  }
  return std::min(w, n - 1);
}

AedOutcome aed_step(QMatrix& h, QMatrix& u, int lo, int hi, const AedConfig& cfg) {
  const int n = h.rows();
  AedOutcome out;
  const int active = hi - lo + 1;
  const int nwin = aed_window_size(active, cfg);
  assert(nwin >= 2 && nwin <= active - 1);
  const int ws = hi - nwin + 1;  // window start; column ws - 1 carries the spike

  // Reduce the trailing window on its own; on nonconvergence report an empty
  // harvest and leave H untouched.
  SchurDecomposition wd;
  {
    SchurOptions wopts;
    wopts.use_aed = false;
    try {
      wd = schur_decompose(block(h, ws, ws, nwin, nwin), wopts);
    } catch (const schur_convergence_error&) {
      return out;
    }
  }
  const double wnorm = frob_norm(wd.t);
  const Quaternion source = h(ws, ws - 1);

  // Fold the window transform into H and U; the subdiagonal entry at the
  // window edge smears into the spike column.
  set_block(h, ws, ws, wd.t);
  for (int i = 0; i < nwin; ++i) h(ws + i, ws - 1) = conj(wd.u(0, i)) * source;
  if (hi + 1 < n) {
    set_block(h, ws, hi + 1, matmul(adjoint(wd.u), block(h, ws, hi + 1, nwin, n - hi - 1)));
  }
  if (ws > 0) {
    set_block(h, 0, ws, matmul(block(h, 0, ws, ws, nwin), wd.u));
  }
  set_block(u, 0, ws, matmul(block(u, 0, ws, u.rows(), nwin), wd.u));

  out.spike.resize(nwin);
  for (int i = 0; i < nwin; ++i) out.spike[i] = h(ws + i, ws - 1);

  // Bottom-up convergence tests: a small spike entry deflates in place, an
  // undeflatable eigenvalue rotates up to the top of the window.
  int top = ws;
  int bot = hi;
  while (bot >= top) {
    bool deflatable = false;
    if (cfg.spike_rule == AedConfig::SpikeRule::standard) {
      const double thr =
          std::max(kEps * abs(h(bot, bot)), kEps * wnorm / double(nwin));
      deflatable = abs(h(bot, ws - 1)) <= thr;
    }
    if (deflatable) {
      h(bot, ws - 1) = Quaternion();
      --bot;
    } else {
      for (int k = bot - 1; k >= top; --k) detail::swap_with_spike(h, &u, k, ws - 1);
      ++top;
    }
  }
  out.n_deflated = hi - bot;
  out.n_undeflatable = top - ws;

  // Restore the Hessenberg shape over the undeflatable block and its spike.
  for (int c = ws - 1; c + 3 <= top; ++c) {
    const int len = top - 1 - c;  // rows c+1 .. top-1
    std::vector<Quaternion> col(len);
    for (int t = 0; t < len; ++t) col[t] = h(c + 1 + t, c);
    const auto [refl, beta] = make_reflector(col.data(), len);
    apply_reflector_left(refl, h, c + 1, c + 1, n);
    h(c + 1, c) = Quaternion(beta);
    for (int r = c + 2; r < top; ++r) h(r, c) = Quaternion();
    apply_reflector_right(refl, h, c + 1, 0, top);
    apply_reflector_right(refl, u, c + 1, 0, u.rows());
  }
  return out;
}

}  // namespace qschur
