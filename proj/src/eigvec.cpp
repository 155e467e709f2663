#include "qschur/eigvec.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "qschur/errors.hpp"
#include "qschur/sylvester.hpp"

namespace qschur {

namespace {
constexpr double kEps = std::numeric_limits<double>::epsilon();

double column_norm(const QMatrix& x, int j) {
  double m = 0.0;
  for (int i = 0; i < x.rows(); ++i) m = std::max(m, abs(x(i, j)));
  if (m == 0.0) return 0.0;
  double s = 0.0;
  for (int i = 0; i < x.rows(); ++i) {
    const double r = abs(x(i, j)) / m;
    s += r * r;
  }
  return m * std::sqrt(s);
}
}  // namespace

EigenSystem triangular_eigenvectors(const QMatrix& t, bool normalize) {
  const int n = t.rows();
  if (t.cols() != n) throw dimension_error("triangular_eigenvectors expects a square matrix");

  EigenSystem es{QMatrix(n, n), {}};
  es.lambdas.resize(n);
  for (int k = 0; k < n; ++k) es.lambdas[k] = to_complex(t(k, k));
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < k; ++i) {
      const double tol = kEps * (std::abs(es.lambdas[i]) + std::abs(es.lambdas[k]) + 1.0);
      if (std::abs(es.lambdas[i] - es.lambdas[k]) <= tol ||
          std::abs(es.lambdas[i] - std::conj(es.lambdas[k])) <= tol)
        throw nondistinct_spectrum_error(i, k);
    }

  if (n > 0) es.x(0, 0) = Quaternion(1.0);
  std::vector<Quaternion> b;
  for (int k = 1; k < n; ++k) {
    b.resize(k);
    for (int i = 0; i < k; ++i) b[i] = -t(i, k);
    const TriangularSylvesterSolution sol = solve_triu(block(t, 0, 0, k, k), es.lambdas[k], b);
    for (int i = 0; i < k; ++i) es.x(i, k) = sol.x[i];
    es.x(k, k) = Quaternion(sol.scale);
  }

  if (normalize) {
    for (int k = 0; k < n; ++k) {
      const double nrm = column_norm(es.x, k);
      if (nrm == 0.0) continue;
      for (int i = 0; i <= k; ++i) es.x(i, k) /= nrm;
    }
  }
  return es;
}

EigenSystem full_eigenvectors(const QMatrix& u, const EigenSystem& tri) {
  if (u.cols() != tri.x.rows()) throw dimension_error("full_eigenvectors dimension mismatch");
  return EigenSystem{matmul(u, tri.x), tri.lambdas};
}

}  // namespace qschur
