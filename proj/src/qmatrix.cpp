#include "qschur/qmatrix.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace qschur {

QMatrix matmul(const QMatrix& a, const QMatrix& b) {
  if (a.cols() != b.rows())
    throw dimension_error("matmul: inner dimensions disagree");
  QMatrix c(a.rows(), b.cols());
  for (int j = 0; j < b.cols(); ++j) {
    for (int k = 0; k < a.cols(); ++k) {
      const Quaternion bkj = b(k, j);
      if (bkj == Quaternion()) continue;
      for (int i = 0; i < a.rows(); ++i) c(i, j) += a(i, k) * bkj;
    }
  }
  return c;
}

QMatrix adjoint(const QMatrix& a) {
  QMatrix b(a.cols(), a.rows());
  for (int j = 0; j < a.cols(); ++j)
    for (int i = 0; i < a.rows(); ++i) b(j, i) = conj(a(i, j));
  return b;
}

double frob_norm(const QMatrix& a) {
  double m = 0.0;
  for (int j = 0; j < a.cols(); ++j)
    for (int i = 0; i < a.rows(); ++i) {
      const Quaternion& q = a(i, j);
      m = std::max(m, std::max(std::max(std::fabs(q.w), std::fabs(q.x)),
                               std::max(std::fabs(q.y), std::fabs(q.z))));
    }
  if (m == 0.0 || !std::isfinite(m)) return m;
  const double s = 1.0 / m;
  double acc = 0.0;
  for (int j = 0; j < a.cols(); ++j)
    for (int i = 0; i < a.rows(); ++i) {
      const Quaternion& q = a(i, j);
      const double ws = q.w * s, xs = q.x * s, ys = q.y * s, zs = q.z * s;
      acc += ws * ws + xs * xs + ys * ys + zs * zs;
    }
  return m * std::sqrt(acc);
}

QMatrix block(const QMatrix& a, int r0, int c0, int nr, int nc) {
  assert(r0 >= 0 && c0 >= 0 && r0 + nr <= a.rows() && c0 + nc <= a.cols());
  QMatrix b(nr, nc);
  for (int j = 0; j < nc; ++j)
    for (int i = 0; i < nr; ++i) b(i, j) = a(r0 + i, c0 + j);
  return b;
}

void set_block(QMatrix& a, int r0, int c0, const QMatrix& b) {
  assert(r0 >= 0 && c0 >= 0 && r0 + b.rows() <= a.rows() && c0 + b.cols() <= a.cols());
  for (int j = 0; j < b.cols(); ++j)
    for (int i = 0; i < b.rows(); ++i) a(r0 + i, c0 + j) = b(i, j);
}

std::pair<Reflector, double> make_reflector(const Quaternion* x, int n) {
  assert(n >= 1);
  Reflector r;
  r.v.assign(static_cast<std::size_t>(n), Quaternion());
  r.v[0] = Quaternion(1.0);
  r.tau = Quaternion();

  double m = 0.0;
  for (int i = 0; i < n; ++i) {
    const Quaternion& q = x[i];
    m = std::max(m, std::max(std::max(std::fabs(q.w), std::fabs(q.x)),
                             std::max(std::fabs(q.y), std::fabs(q.z))));
  }
  if (m == 0.0) return {std::move(r), 0.0};

  // Work on x / m so squared sums cannot overflow.
  const double s = 1.0 / m;
  std::vector<Quaternion> xs(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) xs[i] = x[i] * s;

  double tail_sq = 0.0;
  for (int i = 1; i < n; ++i) tail_sq += abs_sq(xs[i]);
  const Quaternion alpha = xs[0];
  const double pure_sq = alpha.x * alpha.x + alpha.y * alpha.y + alpha.z * alpha.z;
  const double xi = std::sqrt(abs_sq(alpha) + tail_sq);

  if (tail_sq == 0.0 && pure_sq == 0.0 && alpha.w >= 0.0)
    return {std::move(r), m * alpha.w};

  // v = xs - xi * e1; the first entry is rationalized when alpha.w > 0 to
  // avoid cancellation against xi.
  Quaternion v0;
  if (alpha.w <= 0.0) {
    v0 = alpha;
    v0.w -= xi;
  } else {
    v0 = Quaternion(-(pure_sq + tail_sq) / (alpha.w + xi), alpha.x, alpha.y, alpha.z);
  }
  r.v[0] = v0;
  for (int i = 1; i < n; ++i) r.v[i] = xs[i];

  // With sv = v^H * xs, the transform (I - v * (1/sv) * v^H) maps xs to xi*e1;
  // the left application uses conj(tau), so tau = conj(1/sv) = sv / |sv|^2.
  const Quaternion sv = conj(v0) * alpha + Quaternion(tail_sq);
  r.tau = sv / abs_sq(sv);
  return {std::move(r), m * xi};
}

std::pair<Reflector, double> make_reflector(const std::vector<Quaternion>& x) {
  return make_reflector(x.data(), static_cast<int>(x.size()));
}

void apply_reflector_left(const Reflector& r, QMatrix& a, int row0, int col0, int col1) {
  if (r.tau == Quaternion()) return;
  const int len = static_cast<int>(r.v.size());
  assert(row0 >= 0 && row0 + len <= a.rows());
  assert(col0 >= 0 && col1 <= a.cols());
  const Quaternion taub = conj(r.tau);
  for (int j = col0; j < col1; ++j) {
    Quaternion acc;
    for (int t = 0; t < len; ++t) acc += conj(r.v[t]) * a(row0 + t, j);
    acc = taub * acc;
    for (int t = 0; t < len; ++t) a(row0 + t, j) -= r.v[t] * acc;
  }
}

void apply_reflector_right(const Reflector& r, QMatrix& a, int col0, int row0, int row1) {
  if (r.tau == Quaternion()) return;
  const int len = static_cast<int>(r.v.size());
  assert(col0 >= 0 && col0 + len <= a.cols());
  assert(row0 >= 0 && row1 <= a.rows());
  for (int i = row0; i < row1; ++i) {
    Quaternion acc;
    for (int t = 0; t < len; ++t) acc += a(i, col0 + t) * r.v[t];
    acc = acc * r.tau;
    for (int t = 0; t < len; ++t) a(i, col0 + t) -= acc * conj(r.v[t]);
  }
}

void apply_rotation_left(const Rotation2& g, QMatrix& a, int k, int col0, int col1) {
  assert(k >= 0 && k + 1 < a.rows());
  const Quaternion cb = conj(g.c);
  for (int j = col0; j < col1; ++j) {
    const Quaternion t0 = a(k, j), t1 = a(k + 1, j);
    a(k, j) = cb * t0 + t1 * g.s;
    a(k + 1, j) = g.c * t1 - t0 * g.s;
  }
}

void apply_rotation_right(const Rotation2& g, QMatrix& a, int k, int row0, int row1) {
  assert(k >= 0 && k + 1 < a.cols());
  const Quaternion cb = conj(g.c);
  for (int i = row0; i < row1; ++i) {
    const Quaternion t0 = a(i, k), t1 = a(i, k + 1);
    a(i, k) = t0 * g.c + t1 * g.s;
    a(i, k + 1) = t1 * cb - t0 * g.s;
  }
}

double QuatRng::uniform01() {
  return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
}

double QuatRng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = 1.0 - uniform01();
  const double u2 = uniform01();
  const double rad = std::sqrt(-2.0 * std::log(u1));
  const double ang = 2.0 * 3.14159265358979323846 * u2;
  spare_ = rad * std::sin(ang);
  has_spare_ = true;
  return rad * std::cos(ang);
}

Quaternion QuatRng::unit_quaternion() {
  for (;;) {
    Quaternion q(normal(), normal(), normal(), normal());
    const double n = abs(q);
    if (n > 1e-150) return q / n;
  }
}

QMatrix fullrand(int n, std::uint64_t seed) {
  QuatRng rng(seed);
  QMatrix a(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      const Quaternion u = rng.unit_quaternion();
      a(i, j) = u * rng.uniform01();
    }
  return a;
}

QMatrix hessrand(int n, std::uint64_t seed) {
  QuatRng rng(seed);
  QMatrix a(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < std::min(j + 2, n); ++i) {
      const Quaternion u = rng.unit_quaternion();
      a(i, j) = u * rng.uniform01();
    }
  return a;
}

namespace {

void format_component(std::string& out, double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  out.append(buf, res.ptr);
}

double parse_component(const char*& p, const char* end, const std::string& path) {
  while (p < end && (*p == ' ' || *p == '\t')) ++p;
  double v = 0.0;
  const auto res = std::from_chars(p, end, v);
  if (res.ec != std::errc())
    throw io_error(path + ": malformed numeric field");
  p = res.ptr;
  return v;
}

}  // namespace

void write_qmatrix(const QMatrix& a, const std::string& path) {
  std::string out;
  out.reserve(static_cast<std::size_t>(a.rows()) * a.cols() * 80 + 32);
  out += "QMAT ";
  out += std::to_string(a.rows());
  out += ' ';
  out += std::to_string(a.cols());
  out += '\n';
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      const Quaternion& q = a(i, j);
      if (!is_finite(q)) throw io_error(path + ": non-finite entry");
      format_component(out, q.w);
      out += ' ';
      format_component(out, q.x);
      out += ' ';
      format_component(out, q.y);
      out += ' ';
      format_component(out, q.z);
      out += '\n';
    }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw io_error(path + ": cannot open for writing");
  f.write(out.data(), static_cast<std::streamsize>(out.size()));
  if (!f) throw io_error(path + ": write failed");
}

QMatrix read_qmatrix(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw io_error(path + ": cannot open");
  std::string line;
  if (!std::getline(f, line)) throw io_error(path + ": empty file");
  std::istringstream header(line);
  std::string magic;
  long long rows = -1, cols = -1;
  header >> magic >> rows >> cols;
  if (magic != "QMAT" || rows < 0 || cols < 0 || header.fail())
    throw io_error(path + ": bad header, expected 'QMAT <rows> <cols>'");
  std::string tail;
  if (header >> tail) throw io_error(path + ": trailing tokens in header");
  if (rows > 100000 || cols > 100000) throw io_error(path + ": unreasonable dimensions");

  QMatrix a(static_cast<int>(rows), static_cast<int>(cols));
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      if (!std::getline(f, line))
        throw io_error(path + ": fewer entry lines than rows*cols");
      const char* p = line.data();
      const char* end = line.data() + line.size();
      Quaternion q;
      q.w = parse_component(p, end, path);
      q.x = parse_component(p, end, path);
      q.y = parse_component(p, end, path);
      q.z = parse_component(p, end, path);
      while (p < end && (*p == ' ' || *p == '\t' || *p == '\r')) ++p;
      if (p != end) throw io_error(path + ": trailing tokens on entry line");
      if (!is_finite(q)) throw io_error(path + ": non-finite entry");
      a(i, j) = q;
    }
  while (std::getline(f, line)) {
    for (char ch : line)
      if (ch != ' ' && ch != '\t' && ch != '\r')
        throw io_error(path + ": extra entry lines after rows*cols");
  }
  return a;
}

}  // namespace qschur
