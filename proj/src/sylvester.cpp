#include "qschur/sylvester.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

namespace qschur {

namespace {
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kBig = 0x1p512;  // products below kBig^2 stay finite
}  // namespace

bool sylvester_degenerate(const Complex& alpha, const Complex& beta) {
  const double tol = kEps * (std::abs(alpha) + std::abs(beta));
  return std::abs(alpha - beta) <= tol || std::abs(alpha - std::conj(beta)) <= tol;
}

Quaternion solve_scalar(const Complex& alpha, const Complex& beta, const Quaternion& gamma) {
  if (sylvester_degenerate(alpha, beta))
    throw degenerate_sylvester_error("solve_scalar: alpha and beta share a similarity class");
  const ComplexPair g = split(gamma);
  return join({g.c1 / (alpha - beta), g.c2 / (alpha - std::conj(beta))});
}

Quaternion oracle_scalar(const Quaternion& alpha, const Quaternion& beta,
                         const Quaternion& gamma) {
  // chi -> alpha*chi and chi -> chi*beta as real 4x4 matrices on (w, x, y, z).
  const double a = alpha.w, b = alpha.x, c = alpha.y, d = alpha.z;
  const double e = beta.w, f = beta.x, g = beta.y, h = beta.z;
  double m[4][5] = {
      {a - e, -b + f, -c + g, -d + h, gamma.w},
      {b - f, a - e, -d - h, c + g, gamma.x},
      {c - g, d + h, a - e, -b - f, gamma.y},
      {d - h, -c - g, b + f, a - e, gamma.z},
  };

  double scale = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) scale = std::max(scale, std::fabs(m[i][j]));
  const double tiny = 16.0 * kEps * scale;

  for (int k = 0; k < 4; ++k) {
    int piv = k;
    for (int i = k + 1; i < 4; ++i)
      if (std::fabs(m[i][k]) > std::fabs(m[piv][k])) piv = i;
    if (std::fabs(m[piv][k]) <= tiny)
      throw degenerate_sylvester_error(
          "oracle_scalar: singular system, alpha and beta share a similarity class");
    if (piv != k)
      for (int j = k; j < 5; ++j) std::swap(m[piv][j], m[k][j]);
    for (int i = k + 1; i < 4; ++i) {
      const double l = m[i][k] / m[k][k];
      m[i][k] = 0.0;
      for (int j = k + 1; j < 5; ++j) m[i][j] -= l * m[k][j];
    }
  }
  double sol[4];
  for (int i = 3; i >= 0; --i) {
    double acc = m[i][4];
    for (int j = i + 1; j < 4; ++j) acc -= m[i][j] * sol[j];
    sol[i] = acc / m[i][i];
  }
  return {sol[0], sol[1], sol[2], sol[3]};
}

TriangularSylvesterSolution solve_triu(const QMatrix& t, const Complex& lambda,
                                       std::vector<Quaternion> b) {
  const int n = t.rows();
  if (t.cols() != n) throw dimension_error("solve_triu: T must be square");
  if (static_cast<int>(b.size()) != n)
    throw dimension_error("solve_triu: right-hand side length mismatch");

  std::vector<double> cnorm(n, 0.0);
  for (int j = 0; j < n; ++j) {
    double m = 0.0;
    for (int i = 0; i < j; ++i) m = std::max(m, abs(t(i, j)));
    cnorm[j] = m;
  }

  double scale = 1.0;
  for (int i = n - 1; i >= 0; --i) {
    const Complex tii = to_complex(t(i, i));
    if (sylvester_degenerate(tii, lambda))
      throw eigenvalue_collision_error(
          i, "solve_triu: diagonal entry " + std::to_string(i) +
                 " shares a similarity class with lambda");

    // Guard the division itself, then the column update products.
    const double den =
        std::min(std::abs(tii - lambda), std::abs(tii - std::conj(lambda)));
    const double bn = abs(b[i]);
    if (bn > den * kBig) {
      const double s = (den * kBig * 0.5) / bn;
      for (Quaternion& q : b) q *= s;
      scale *= s;
    }
    Quaternion chi = solve_scalar(tii, lambda, b[i]);
    const double cn = abs(chi);
    if (cn > 1.0 && cnorm[i] > kBig / cn) {
      const double s = (kBig * 0.5) / (cnorm[i] * cn);
      for (Quaternion& q : b) q *= s;
      chi *= s;
      scale *= s;
    }
    b[i] = chi;
    for (int r = 0; r < i; ++r) b[r] -= t(r, i) * chi;
  }
  return {std::move(b), scale};
}

}  // namespace qschur
