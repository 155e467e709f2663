#pragma once

#include <algorithm>
#include <cmath>
#include <complex>

namespace qschur {

using Complex = std::complex<double>;

/** @brief Quaternion w + x*i + y*j + z*k with double components. */
struct Quaternion {
  double w = 0.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Quaternion() = default;
  constexpr Quaternion(double real) : w(real) {}
  constexpr Quaternion(double w_, double x_, double y_, double z_)
      : w(w_), x(x_), y(y_), z(z_) {}

  constexpr Quaternion& operator+=(const Quaternion& r) {
    w += r.w;
    x += r.x;
    y += r.y;
    z += r.z;
    return *this;
  }
  constexpr Quaternion& operator-=(const Quaternion& r) {
    w -= r.w;
    x -= r.x;
    y -= r.y;
    z -= r.z;
    return *this;
  }
  constexpr Quaternion& operator*=(double s) {
    w *= s;
    x *= s;
    y *= s;
    z *= s;
    return *this;
  }
  constexpr Quaternion& operator/=(double s) { return *this *= 1.0 / s; }

  constexpr bool operator==(const Quaternion& r) const {
    return w == r.w && x == r.x && y == r.y && z == r.z;
  }
  constexpr bool operator!=(const Quaternion& r) const { return !(*this == r); }
};

constexpr Quaternion operator+(Quaternion a, const Quaternion& b) { return a += b; }
constexpr Quaternion operator-(Quaternion a, const Quaternion& b) { return a -= b; }
constexpr Quaternion operator-(const Quaternion& q) { return {-q.w, -q.x, -q.y, -q.z}; }
constexpr Quaternion operator*(Quaternion q, double s) { return q *= s; }
constexpr Quaternion operator*(double s, Quaternion q) { return q *= s; }
constexpr Quaternion operator/(Quaternion q, double s) { return q /= s; }

/** @brief Hamilton product (non-commutative). */
constexpr Quaternion operator*(const Quaternion& a, const Quaternion& b) {
  return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
          a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
          a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
          a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
}

/** @brief Product with a complex scalar on the right, q * (a + b*i). */
constexpr Quaternion operator*(const Quaternion& q, const Complex& c) {
  const double a = c.real(), b = c.imag();
  return {q.w * a - q.x * b, q.w * b + q.x * a, q.y * a + q.z * b, q.z * a - q.y * b};
}

/** @brief Product with a complex scalar on the left, (a + b*i) * q. */
constexpr Quaternion operator*(const Complex& c, const Quaternion& q) {
  const double a = c.real(), b = c.imag();
  return {a * q.w - b * q.x, a * q.x + b * q.w, a * q.y - b * q.z, a * q.z + b * q.y};
}

constexpr Quaternion conj(const Quaternion& q) { return {q.w, -q.x, -q.y, -q.z}; }

/** @brief Squared norm w^2 + x^2 + y^2 + z^2. May overflow for huge components. */
constexpr double abs_sq(const Quaternion& q) {
  return q.w * q.w + q.x * q.x + q.y * q.y + q.z * q.z;
}

/** @brief Euclidean norm, two-pass scaled so components near DBL_MAX do not overflow. */
inline double abs(const Quaternion& q) {
  const double aw = std::fabs(q.w), ax = std::fabs(q.x);
  const double ay = std::fabs(q.y), az = std::fabs(q.z);
  const double m = std::max(std::max(aw, ax), std::max(ay, az));
  if (m == 0.0 || !std::isfinite(m)) return m;
  const double s = 1.0 / m;
  const double ws = q.w * s, xs = q.x * s, ys = q.y * s, zs = q.z * s;
  return m * std::sqrt(ws * ws + xs * xs + ys * ys + zs * zs);
}

/** @brief Norm of the pure part (x, y, z), scaled like abs(). */
inline double pure_abs(const Quaternion& q) {
  const double ax = std::fabs(q.x), ay = std::fabs(q.y), az = std::fabs(q.z);
  const double m = std::max(ax, std::max(ay, az));
  if (m == 0.0 || !std::isfinite(m)) return m;
  const double s = 1.0 / m;
  const double xs = q.x * s, ys = q.y * s, zs = q.z * s;
  return m * std::sqrt(xs * xs + ys * ys + zs * zs);
}

/** @brief Multiplicative inverse conj(q) / |q|^2, overflow-guarded. */
inline Quaternion inv(const Quaternion& q) {
  const double m = std::max(std::max(std::fabs(q.w), std::fabs(q.x)),
                            std::max(std::fabs(q.y), std::fabs(q.z)));
  const Quaternion qs = q / m;
  return conj(qs) / (abs_sq(qs) * m);
}

inline bool is_finite(const Quaternion& q) {
  return std::isfinite(q.w) && std::isfinite(q.x) && std::isfinite(q.y) && std::isfinite(q.z);
}

/** @brief The complex pair (c1, c2) with q = c1 + c2*j. */
struct ComplexPair {
  Complex c1;
  Complex c2;
};

constexpr ComplexPair split(const Quaternion& q) {
  return {Complex(q.w, q.x), Complex(q.y, q.z)};
}

constexpr Quaternion join(const ComplexPair& p) {
  return {p.c1.real(), p.c1.imag(), p.c2.real(), p.c2.imag()};
}

/** @brief Embeds a complex scalar as the quaternion with zero j, k parts. */
constexpr Quaternion from_complex(const Complex& c) { return {c.real(), c.imag(), 0.0, 0.0}; }

/** @brief The complex part (w, x) of q; the caller asserts the j, k parts are negligible. */
constexpr Complex to_complex(const Quaternion& q) { return {q.w, q.x}; }

/**
 * @brief Standardized representative of the similarity class of q.
 *
 * value is the unique class member in the closed upper half-plane,
 * Re(value) = q.w and Im(value) = |pure part|. omega is a unit quaternion
 * with conj(omega) * q * omega = value; omega = 1 exactly when q is already
 * complex with non-negative imaginary part.
 */
struct Standardized {
  Complex value;
  Quaternion omega;
};

inline Standardized standardize(const Quaternion& q) {
  const double pn = pure_abs(q);
  if (pn == 0.0) return {Complex(q.w, 0.0), Quaternion(1.0)};
  const double ux = q.x / pn, uy = q.y / pn, uz = q.z / pn;
  Quaternion omega;
  if (ux >= 0.0) {
    // Rotation taking the unit pure direction u onto i, written as a half-angle
    // quaternion; exact identity when u is already i.
    const double s = std::sqrt(2.0 * (1.0 + ux));
    omega = {(1.0 + ux) / s, 0.0, -uz / s, uy / s};
  } else {
    // Stable for u near -i: rotate u onto -i first, then -i onto i via j.
    const double s = std::sqrt(2.0 * (1.0 - ux));
    omega = {-uz / s, uy / s, (1.0 - ux) / s, 0.0};
  }
  return {Complex(q.w, pn), omega};
}

}  // namespace qschur
