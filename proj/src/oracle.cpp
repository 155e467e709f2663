#include "qschur/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qschur/errors.hpp"

namespace qschur {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

/** Plane rotation [[c, s], [-conj(s), c]] with real c. */
struct GivensC {
  double c = 1.0;
  Complex s{0.0, 0.0};
};

GivensC make_givens(const Complex& f, const Complex& g, Complex& r) {
  GivensC giv;
  if (g == Complex()) {
    r = f;
    return giv;
  }
  const double ag = std::abs(g);
  if (f == Complex()) {
    giv.c = 0.0;
    giv.s = std::conj(g) / ag;
    r = Complex(ag, 0.0);
    return giv;
  }
  const double af = std::abs(f);
  const double d = std::hypot(af, ag);
  const Complex phase = f / af;
  giv.c = af / d;
  giv.s = phase * std::conj(g) / d;
  r = phase * d;
  return giv;
}

/** rows (k, k+1) of cols [col0, col1) <- G * rows */
void lrot(const GivensC& g, ComplexMatrix& m, int k, int col0, int col1) {
  for (int j = col0; j < col1; ++j) {
    const Complex t0 = m(k, j);
    const Complex t1 = m(k + 1, j);
    m(k, j) = g.c * t0 + g.s * t1;
    m(k + 1, j) = -std::conj(g.s) * t0 + g.c * t1;
  }
}

/** cols (k, k+1) of rows [row0, row1) <- cols * G^H */
void rrot(const GivensC& g, ComplexMatrix& m, int k, int row0, int row1) {
  for (int i = row0; i < row1; ++i) {
    const Complex t0 = m(i, k);
    const Complex t1 = m(i, k + 1);
    m(i, k) = g.c * t0 + std::conj(g.s) * t1;
    m(i, k + 1) = -g.s * t0 + g.c * t1;
  }
}

ComplexMatrix cmatmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix r(a.rows(), b.cols());
  for (int j = 0; j < b.cols(); ++j)
    for (int k = 0; k < a.cols(); ++k) {
      const Complex bkj = b(k, j);
      if (bkj == Complex()) continue;
      for (int i = 0; i < a.rows(); ++i) r(i, j) += a(i, k) * bkj;
    }
  return r;
}

double cfrob(const ComplexMatrix& m) {
  double mx = 0.0;
  for (int j = 0; j < m.cols(); ++j)
    for (int i = 0; i < m.rows(); ++i)
      mx = std::max({mx, std::abs(m(i, j).real()), std::abs(m(i, j).imag())});
  if (mx == 0.0) return 0.0;
  double s = 0.0;
  for (int j = 0; j < m.cols(); ++j)
    for (int i = 0; i < m.rows(); ++i) {
      const double re = m(i, j).real() / mx;
      const double im = m(i, j).imag() / mx;
      s += re * re + im * im;
    }
  return mx * std::sqrt(s);
}

}  // namespace

ComplexMatrix complex_adjoint(const QMatrix& a) {
  const int nr = a.rows();
  const int nc = a.cols();
  ComplexMatrix m(2 * nr, 2 * nc);
  for (int j = 0; j < nc; ++j)
    for (int i = 0; i < nr; ++i) {
      const ComplexPair p = split(a(i, j));
      m(i, j) = p.c1;
      m(i, j + nc) = p.c2;
      m(i + nr, j) = -std::conj(p.c2);
      m(i + nr, j + nc) = std::conj(p.c1);
    }
  return m;
}

std::vector<Complex> reference_spectrum(const ComplexMatrix& m0) {
  const int n = m0.rows();
  if (m0.cols() != n) throw dimension_error("reference_spectrum expects a square matrix");
  if (n > 128) throw dimension_error("reference_spectrum supports dimensions up to 128");
  if (n == 0) return {};

  ComplexMatrix m = m0;
  ComplexMatrix q(n, n);
  for (int i = 0; i < n; ++i) q(i, i) = Complex(1.0, 0.0);

  // Hessenberg reduction by Givens rotations.
  for (int j = 0; j + 2 < n; ++j)
    for (int i = n - 1; i >= j + 2; --i) {
      if (m(i, j) == Complex()) continue;
      Complex r;
      const GivensC giv = make_givens(m(i - 1, j), m(i, j), r);
      m(i - 1, j) = r;
      m(i, j) = Complex();
      lrot(giv, m, i - 1, j + 1, n);
      rrot(giv, m, i - 1, 0, n);
      rrot(giv, q, i - 1, 0, n);
    }

  // Wilkinson-shifted QR iteration.
  const int budget = 40 * n;
  int its = 0;
  int hi = n - 1;
  int stall = 0;
  int last_lo = -1;
  int last_hi = -1;
  while (hi > 0) {
    int lo = hi;
    while (lo > 0) {
      const Complex sub = m(lo, lo - 1);
      if (sub == Complex()) break;
      const double thr = std::max(kEps * (std::abs(m(lo - 1, lo - 1)) + std::abs(m(lo, lo))),
                                  std::numeric_limits<double>::min());
      if (std::abs(sub) <= thr) {
        m(lo, lo - 1) = Complex();
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
    if (its >= budget) throw convergence_error("reference eigensolver ran out of sweeps");

    Complex mu;
    {
      const Complex a = m(hi - 1, hi - 1);
      const Complex b = m(hi - 1, hi);
      const Complex c = m(hi, hi - 1);
      const Complex d = m(hi, hi);
      if (stall > 0 && stall % 10 == 0) {
        mu = d + 0.75 * std::abs(c);
      } else {
        const Complex delta = 0.5 * (a - d);
        const Complex root = std::sqrt(delta * delta + b * c);
        const Complex den =
            (std::abs(delta + root) >= std::abs(delta - root)) ? delta + root : delta - root;
        mu = (den == Complex()) ? d : d - b * c / den;
      }
    }

    Complex f = m(lo, lo) - mu;
    Complex g = m(lo + 1, lo);
    for (int k = lo; k < hi; ++k) {
      Complex r;
      const GivensC giv = make_givens(f, g, r);
      if (k > lo) {
        m(k, k - 1) = r;
        m(k + 1, k - 1) = Complex();
      }
      lrot(giv, m, k, k, n);
      rrot(giv, m, k, 0, std::min(k + 3, hi + 1));
      rrot(giv, q, k, 0, n);
      if (k + 1 < hi) {
        f = m(k + 1, k);
        g = m(k + 2, k);
      }
    }
    ++its;
    ++stall;
  }

  // Certify: the accumulated unitary must reproduce the input.
  ComplexMatrix t(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i <= j; ++i) t(i, j) = m(i, j);
  const ComplexMatrix lhs = cmatmul(m0, q);
  const ComplexMatrix rhs = cmatmul(q, t);
  ComplexMatrix diff(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) diff(i, j) = lhs(i, j) - rhs(i, j);
  const double ref = cfrob(m0);
  if (cfrob(diff) > 1e-10 * (ref > 0.0 ? ref : 1.0))
    throw convergence_error("reference eigensolver failed its residual certificate");

  std::vector<Complex> eigs(n);
  for (int i = 0; i < n; ++i) eigs[i] = t(i, i);
  return eigs;
}

std::vector<Complex> cplus_representatives(const std::vector<Complex>& eigs,
                                           int* near_real_count) {
  if (eigs.size() % 2 != 0)
    throw dimension_error("cplus_representatives expects an even spectrum");
  std::vector<Complex> folded(eigs.size());
  for (size_t i = 0; i < eigs.size(); ++i)
    folded[i] = Complex(eigs[i].real(), std::abs(eigs[i].imag()));
  std::sort(folded.begin(), folded.end(), [](const Complex& a, const Complex& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  std::vector<Complex> reps;
  reps.reserve(eigs.size() / 2);
  int near_real = 0;
  for (size_t i = 0; i < folded.size(); i += 2) {
    reps.push_back(folded[i]);
    if (folded[i].imag() <= 1e-8) ++near_real;
  }
  if (near_real_count) *near_real_count = near_real;
  return reps;
}

double match_spectra(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  if (a.size() != b.size()) throw dimension_error("match_spectra size mismatch");
  std::vector<bool> used(b.size(), false);
  double worst = 0.0;
  for (const Complex& x : a) {
    int pick = -1;
    double best = std::numeric_limits<double>::infinity();
    for (size_t j = 0; j < b.size(); ++j) {
      if (used[j]) continue;
      const double d = std::abs(x - b[j]);
      if (d < best) {
        best = d;
        pick = int(j);
      }
    }
    used[pick] = true;
    worst = std::max(worst, best);
  }
  return worst;
}

double unitarity_error(const QMatrix& u) {
  const int n = u.cols();
  QMatrix g = matmul(adjoint(u), u);
  for (int i = 0; i < n; ++i) g(i, i) -= Quaternion(1.0);
  return frob_norm(g) / std::sqrt(double(n > 0 ? n : 1));
}

double similarity_error(const QMatrix& a, const QMatrix& u, const QMatrix& t) {
  QMatrix d = matmul(adjoint(u), matmul(a, u));
  for (int j = 0; j < d.cols(); ++j)
    for (int i = 0; i < d.rows(); ++i) d(i, j) -= t(i, j);
  const double ref = frob_norm(a);
  return frob_norm(d) / (ref > 0.0 ? ref : 1.0);
}

double eigenpair_error(const QMatrix& a, const QMatrix& x, const std::vector<Complex>& lambdas) {
  if (int(lambdas.size()) != x.cols()) throw dimension_error("eigenpair_error size mismatch");
  QMatrix d = matmul(a, x);
  double lam_norm_sq = 0.0;
  for (int k = 0; k < x.cols(); ++k) {
    const Quaternion lk = from_complex(lambdas[k]);
    for (int i = 0; i < x.rows(); ++i) d(i, k) -= x(i, k) * lk;
    lam_norm_sq += std::norm(lambdas[k]);
  }
  const double denom = (frob_norm(a) + std::sqrt(lam_norm_sq)) * frob_norm(x);
  return frob_norm(d) / (denom > 0.0 ? denom : 1.0);
}

}  // namespace qschur
