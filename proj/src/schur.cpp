#include "qschur/schur.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <chrono>
#include <cmath>
#include <limits>

namespace qschur {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

/** 4x4 complex, column major. */
using C4 = std::array<Complex, 16>;

Complex& at4(C4& m, int i, int j) { return m[i + 4 * j]; }
const Complex& at4(const C4& m, int i, int j) { return m[i + 4 * j]; }

C4 mul4(const C4& a, const C4& b) {
  C4 r{};
  for (int j = 0; j < 4; ++j)
    for (int k = 0; k < 4; ++k) {
      const Complex bkj = at4(b, k, j);
      if (bkj == Complex()) continue;
      for (int i = 0; i < 4; ++i) at4(r, i, j) += at4(a, i, k) * bkj;
    }
  return r;
}

Complex trace4(const C4& m) { return at4(m, 0, 0) + at4(m, 1, 1) + at4(m, 2, 2) + at4(m, 3, 3); }

/**
 * Real coefficients of det(zI - M) = z^4 + c[3] z^3 + c[2] z^2 + c[1] z + c[0]
 * by the Faddeev-LeVerrier recurrence. M must be conjugation-closed so the
 * exact coefficients are real; imaginary roundoff is dropped.
 */
std::array<double, 4> charpoly4(const C4& m) {
  std::array<double, 4> c{};
  const double c3 = -trace4(m).real();
  C4 n = m;
  at4(n, 0, 0) += c3;
  at4(n, 1, 1) += c3;
  at4(n, 2, 2) += c3;
  at4(n, 3, 3) += c3;
  n = mul4(m, n);
  const double c2 = -trace4(n).real() / 2.0;
  at4(n, 0, 0) += c2;
  at4(n, 1, 1) += c2;
  at4(n, 2, 2) += c2;
  at4(n, 3, 3) += c2;
  n = mul4(m, n);
  const double c1 = -trace4(n).real() / 3.0;
  at4(n, 0, 0) += c1;
  at4(n, 1, 1) += c1;
  at4(n, 2, 2) += c1;
  at4(n, 3, 3) += c1;
  n = mul4(m, n);
  const double c0 = -trace4(n).real() / 4.0;
  c[3] = c3;
  c[2] = c2;
  c[1] = c1;
  c[0] = c0;
  return c;
}

/** All four roots of z^4 + c[3] z^3 + ... + c[0] by Durand-Kerner. */
std::array<Complex, 4> quartic_roots(const std::array<double, 4>& c) {
  auto eval = [&c](Complex z) {
    return (((z + c[3]) * z + c[2]) * z + c[1]) * z + c[0];
  };
  std::array<Complex, 4> r;
  const Complex seed(0.4, 0.9);
  Complex p(1.0, 0.0);
  for (int k = 0; k < 4; ++k) {
    p *= seed;
    r[k] = p;
  }
  for (int iter = 0; iter < 200; ++iter) {
    double step = 0.0;
    double size = 1.0;
    for (int k = 0; k < 4; ++k) {
      Complex den(1.0, 0.0);
      for (int j = 0; j < 4; ++j) {
        if (j == k) continue;
        Complex d = r[k] - r[j];
        if (d == Complex()) d = Complex(1e-12, 1e-12);
        den *= d;
      }
      const Complex delta = eval(r[k]) / den;
      r[k] -= delta;
      step = std::max(step, std::abs(delta));
      size = std::max(size, std::abs(r[k]));
    }
    if (step <= 1e-15 * size) break;
  }
  return r;
}

void chase_zeros(QMatrix& h, int col, int row0, int row1) {
  for (int i = row0; i < row1; ++i) h(i, col) = Quaternion();
}

}  // namespace

Complex eig2x2(const QMatrix& b) {
  if (b.rows() != 2 || b.cols() != 2) throw dimension_error("eig2x2 expects a 2x2 matrix");
  // Triangular block: the trailing class is exact and the quartic would only
  // blur it (a doubled root caps the root finder near sqrt(eps)).
  if (b(1, 0) == Quaternion()) return standardize(b(1, 1)).value;
  // Complex form [[B1, B2], [-conj(B2), conj(B1)]] of B = B1 + B2 j.
  C4 m{};
  double scale = 0.0;
  for (int j = 0; j < 2; ++j)
    for (int i = 0; i < 2; ++i) {
      const ComplexPair p = split(b(i, j));
      at4(m, i, j) = p.c1;
      at4(m, i, j + 2) = p.c2;
      at4(m, i + 2, j) = -std::conj(p.c2);
      at4(m, i + 2, j + 2) = std::conj(p.c1);
      scale = std::max({scale, std::abs(p.c1.real()), std::abs(p.c1.imag()),
                        std::abs(p.c2.real()), std::abs(p.c2.imag())});
    }
  if (scale == 0.0) return Complex(0.0, 0.0);
  for (auto& e : m) e /= scale;
  const std::array<double, 4> c = charpoly4(m);
  const std::array<Complex, 4> roots = quartic_roots(c);
  // The spectrum is closed under conjugation; fold every root into the upper
  // half-plane and pick the class nearest the trailing entry's class.
  const Complex target = standardize(b(1, 1)).value;
  Complex best(0.0, 0.0);
  double best_dist = std::numeric_limits<double>::infinity();
  for (const Complex& z : roots) {
    const Complex cand = Complex(z.real(), std::abs(z.imag())) * scale;
    const double d = std::abs(cand - target);
    if (d < best_dist) {
      best_dist = d;
      best = cand;
    }
  }
  return best;
}

ShiftPoly make_shift(const QMatrix& h, int lo, int hi) {
  assert(hi - lo >= 1);
  (void)lo;
  const Complex lam = eig2x2(block(h, hi - 1, hi - 1, 2, 2));
  return ShiftPoly{-2.0 * lam.real(), std::norm(lam)};
}

namespace {
HessenbergResult hessenberg_impl(const QMatrix& a, PhaseTimers* timers) {
  const int n = a.rows();
  HessenbergResult res{a, QMatrix::identity(n)};
  QMatrix& h = res.h;
  QMatrix& u = res.u;
  std::vector<Quaternion> col;
  for (int k = 0; k + 2 < n; ++k) {
    const int len = n - 1 - k;
    col.resize(len);
    for (int t = 0; t < len; ++t) col[t] = h(k + 1 + t, k);
    const auto [refl, beta] = make_reflector(col.data(), len);
    apply_reflector_left(refl, h, k + 1, k + 1, n);
    h(k + 1, k) = Quaternion(beta);
    chase_zeros(h, k, k + 2, n);
    apply_reflector_right(refl, h, k + 1, 0, n);
    if (timers) {
      const auto t0 = Clock::now();
      apply_reflector_right(refl, u, k + 1, 0, n);
      timers->q_seconds += seconds_since(t0);
    } else {
      apply_reflector_right(refl, u, k + 1, 0, n);
    }
  }
  return res;
}
}  // namespace

HessenbergResult hessenberg_reduce(const QMatrix& a, PhaseTimers* timers) {
  if (a.rows() != a.cols()) throw dimension_error("hessenberg_reduce expects a square matrix");
  return hessenberg_impl(a, timers);
}

void qr_sweep(QMatrix& h, QMatrix& u, int lo, int hi, const ShiftPoly& p, PhaseTimers* timers) {
  const int n = h.rows();
  assert(0 <= lo && lo < hi && hi < n);
  auto accumulate = [&](const Reflector& refl, int col) {
    if (timers) {
      const auto t0 = Clock::now();
      apply_reflector_right(refl, u, col, 0, u.rows());
      timers->q_seconds += seconds_since(t0);
    } else {
      apply_reflector_right(refl, u, col, 0, u.rows());
    }
  };

  // First column of H*H + p1*H + p0*I on the window; rows below lo + 2 vanish.
  Quaternion x[3];
  const int len0 = std::min(3, hi - lo + 1);
  {
    const Quaternion h00 = h(lo, lo);
    const Quaternion h10 = h(lo + 1, lo);
    x[0] = h00 * h00 + h(lo, lo + 1) * h10 + p.p1 * h00 + Quaternion(p.p0);
    x[1] = h10 * h00 + h(lo + 1, lo + 1) * h10 + p.p1 * h10;
    if (len0 == 3) x[2] = h(lo + 2, lo + 1) * h10;
  }
  {
    const auto [refl, beta] = make_reflector(x, len0);
    (void)beta;
    apply_reflector_left(refl, h, lo, lo, n);
    apply_reflector_right(refl, h, lo, 0, std::min(lo + len0 + 1, hi + 1));
    accumulate(refl, lo);
  }

  // Chase the bulge down the window.
  for (int k = lo; k + 2 <= hi; ++k) {
    const int len = std::min(3, hi - k);  // rows k+1 .. k+len
    Quaternion col[3];
    for (int t = 0; t < len; ++t) col[t] = h(k + 1 + t, k);
    const auto [refl, beta] = make_reflector(col, len);
    apply_reflector_left(refl, h, k + 1, k + 1, n);
    h(k + 1, k) = Quaternion(beta);
    chase_zeros(h, k, k + 2, k + 1 + len);
    apply_reflector_right(refl, h, k + 1, 0, std::min(k + len + 2, hi + 1));
    accumulate(refl, k + 1);
  }
}

std::vector<int> deflation_scan(QMatrix& h, int lo, int hi) {
  std::vector<int> points;
  for (int i = lo; i < hi; ++i) {
    const Quaternion sub = h(i + 1, i);
    if (sub == Quaternion()) {
      points.push_back(i);
      continue;
    }
    const double thr = std::max(kEps * (abs(h(i, i)) + abs(h(i + 1, i + 1))),
                                std::numeric_limits<double>::min());
    if (abs(sub) <= thr) {
      h(i + 1, i) = Quaternion();
      points.push_back(i);
    }
  }
  return points;
}

void standardize_diagonal(QMatrix& t, QMatrix& u) {
  const int n = t.rows();
  for (int k = 0; k < n; ++k) {
    const Standardized s = standardize(t(k, k));
    if (s.omega == Quaternion(1.0)) continue;  // already in the upper half-plane
    t(k, k) = from_complex(s.value);
    const Quaternion om = s.omega;
    const Quaternion omc = conj(om);
    for (int j = k + 1; j < n; ++j) t(k, j) = omc * t(k, j);
    for (int i = 0; i < k; ++i) t(i, k) = t(i, k) * om;
    for (int i = 0; i < u.rows(); ++i) u(i, k) = u(i, k) * om;
  }
}

SchurDecomposition schur_decompose(const QMatrix& a, const SchurOptions& opts) {
  const int n = a.rows();
  if (a.cols() != n) throw dimension_error("schur_decompose expects a square matrix");

  auto [h, u] = hessenberg_impl(a, opts.timers);
  const int max_sweeps = opts.max_sweeps > 0 ? opts.max_sweeps : 30 * n;

  SchurDecomposition out{QMatrix(0, 0), QMatrix(0, 0), 0, std::nullopt};
  AedStats stats;
  int sweeps = 0;
  int hi = n - 1;
  int stall = 0;
  int last_lo = -1;
  int last_hi = -1;

  while (hi > 0) {
    // Find the top of the unreduced block ending at hi, zeroing the first
    // negligible subdiagonal met on the way down.
    int lo = hi;
    while (lo > 0) {
      Quaternion& sub = h(lo, lo - 1);
      if (sub == Quaternion()) break;
      const double thr = std::max(kEps * (abs(h(lo - 1, lo - 1)) + abs(h(lo, lo))),
                                  std::numeric_limits<double>::min());
      if (abs(sub) <= thr) {
        sub = Quaternion();
        break;
      }
      --lo;
    }
    if (lo == hi) {
      --hi;
      stall = 0;
      continue;
    }
    if (lo != last_lo || hi != last_hi) {
      stall = 0;
      last_lo = lo;
      last_hi = hi;
    }

    if (opts.use_aed) {
      const int nwin = aed_window_size(hi - lo + 1, opts.aed);
      if (nwin >= 2) {
        AedOutcome aed;
        if (opts.timers) {
          const auto t0 = Clock::now();
          aed = aed_step(h, u, lo, hi, opts.aed);
          opts.timers->aed_seconds += seconds_since(t0);
        } else {
          aed = aed_step(h, u, lo, hi, opts.aed);
        }
        stats.calls += 1;
        stats.deflated += aed.n_deflated;
        stats.undeflatable += aed.n_undeflatable;
        if (aed.n_deflated > 0) {
          hi -= aed.n_deflated;
          stall = 0;
          last_hi = hi;
          const int nwin_used = aed.n_deflated + aed.n_undeflatable;
          // A rich enough harvest skips the sweep; go straight to the next
          // scan and deflation pass.
          if (nwin_used > 0 &&
              100.0 * double(aed.n_deflated) / double(nwin_used) >= opts.aed.nibble_percent) {
            stats.sweeps_skipped += 1;
            continue;
          }
        }
        if (hi <= lo) continue;
      }
    }

    if (sweeps >= max_sweeps) {
      SchurDecomposition partial{std::move(u), std::move(h), sweeps, std::nullopt};
      if (opts.use_aed) partial.aed_stats = stats;
      throw schur_convergence_error("QR iteration did not converge within the sweep budget",
                                    std::move(partial));
    }
    ShiftPoly poly;
    if (stall > 0 && stall % 10 == 0) {
      // Exceptional shift: draw on the leading 2x2 of the window instead.
      const Complex lam = eig2x2(block(h, lo, lo, 2, 2));
      poly = ShiftPoly{-2.0 * lam.real(), std::norm(lam)};
    } else {
      poly = make_shift(h, lo, hi);
    }
    qr_sweep(h, u, lo, hi, poly, opts.timers);
    ++sweeps;
    ++stall;
  }

  standardize_diagonal(h, u);
  for (int j = 0; j < n; ++j) chase_zeros(h, j, j + 1, n);

  out.u = std::move(u);
  out.t = std::move(h);
  out.sweeps = sweeps;
  if (opts.use_aed) out.aed_stats = stats;
  return out;
}

}  // namespace qschur
