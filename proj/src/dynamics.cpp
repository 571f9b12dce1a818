#include "gaplab/dynamics.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace gaplab {

namespace {

long long det_int(const std::vector<std::vector<long long>>& A) {
  // Fraction-free expansion; d <= 8 so cofactor recursion is fine.
  const int d = static_cast<int>(A.size());
  if (d == 1) return A[0][0];
  long long det = 0;
  long long sign = 1;
  for (int j = 0; j < d; ++j) {
    std::vector<std::vector<long long>> minor;
    minor.reserve(d - 1);
    for (int r = 1; r < d; ++r) {
      std::vector<long long> row;
      row.reserve(d - 1);
      for (int c = 0; c < d; ++c)
        if (c != j) row.push_back(A[r][c]);
      minor.push_back(std::move(row));
    }
    det += sign * A[0][j] * det_int(minor);
    sign = -sign;
  }
  return det;
}

// Integer inverse of a unimodular matrix: adjugate / det with det = +-1.
std::vector<std::vector<long long>> unimodular_inverse(
    const std::vector<std::vector<long long>>& A) {
  const int d = static_cast<int>(A.size());
  const long long det = det_int(A);
  std::vector<std::vector<long long>> inv(d, std::vector<long long>(d, 0));
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      std::vector<std::vector<long long>> minor;
      for (int r = 0; r < d; ++r) {
        if (r == j) continue;
        std::vector<long long> row;
        for (int c = 0; c < d; ++c)
          if (c != i) row.push_back(A[r][c]);
        minor.push_back(std::move(row));
      }
      long long cof = (d == 1) ? 1 : det_int(minor);
      if ((i + j) % 2 != 0) cof = -cof;
      inv[i][j] = cof * det;  // det = +-1, so division is multiplication
    }
  }
  return inv;
}

void check_point(const SystemSpec& sys, const PhasePoint& pt) {
  if (sys.kind == SystemKind::Solenoid) {
    if (pt.torus.size() != 1 || !pt.has_disk)
      throw DimensionMismatch("solenoid point must carry (angle, x, y)");
  } else {
    if (static_cast<int>(pt.torus.size()) != sys.torus_dim() || pt.has_disk)
      throw DimensionMismatch("point dimension does not match system");
  }
}

PhasePoint affine_step(const SystemSpec& sys, const PhasePoint& pt,
                       const std::vector<std::vector<long long>>& M,
                       const std::vector<double>& shift) {
  const int d = sys.dim;
  PhasePoint out;
  out.torus.resize(d);
  for (int i = 0; i < d; ++i) {
    double v = shift[i];
    for (int j = 0; j < d; ++j) v += static_cast<double>(M[i][j]) * pt.torus[j];
    out.torus[i] = mod1(v);
  }
  return out;
}

PhasePoint solenoid_step(const SystemSpec& sys, const PhasePoint& pt) {
  PhasePoint out;
  const double w = pt.torus[0];
  out.torus = {mod1(2.0 * w)};
  out.has_disk = true;
  out.x = sys.lambda * pt.x + 0.5 * std::cos(2.0 * std::numbers::pi * w);
  out.y = sys.lambda * pt.y + 0.5 * std::sin(2.0 * std::numbers::pi * w);
  return out;
}

}  // namespace

double mod1(double v) {
  double r = v - std::floor(v);
  if (r >= 1.0) r = 0.0;  // floor rounding at exact integers
  return r;
}

SystemSpec SystemSpec::affine_torus(std::vector<std::vector<long long>> A,
                                    std::vector<double> b) {
  SystemSpec s;
  s.kind = SystemKind::AffineTorus;
  s.dim = static_cast<int>(A.size());
  for (const auto& row : A)
    if (static_cast<int>(row.size()) != s.dim)
      throw ConfigError("affine torus matrix must be square");
  if (static_cast<int>(b.size()) != s.dim)
    throw ConfigError("translation dimension mismatch");
  const long long det = det_int(A);
  if (det != 1 && det != -1)
    throw ConfigError("affine torus matrix must have determinant +-1");
  s.A = std::move(A);
  s.b.resize(b.size());
  for (std::size_t i = 0; i < b.size(); ++i) s.b[i] = mod1(b[i]);
  return s;
}

SystemSpec SystemSpec::rotation(double alpha) {
  return affine_torus({{1}}, {alpha});
}

SystemSpec SystemSpec::skew_shift(double alpha) {
  return affine_torus({{1, 0}, {1, 1}}, {alpha, 0.0});
}

SystemSpec SystemSpec::cat_map() {
  return affine_torus({{2, 1}, {1, 1}}, {0.0, 0.0});
}

SystemSpec SystemSpec::doubling(long long m) {
  if (m < 2) throw ConfigError("doubling multiplier must be >= 2");
  SystemSpec s;
  s.kind = SystemKind::Doubling;
  s.dim = 1;
  s.multiplier = m;
  return s;
}

SystemSpec SystemSpec::solenoid(double lambda) {
  if (!(lambda > 0.0 && lambda < 0.5))
    throw ConfigError("solenoid contraction must lie in (0, 1/2)");
  SystemSpec s;
  s.kind = SystemKind::Solenoid;
  s.dim = 1;
  s.lambda = lambda;
  return s;
}

PhasePoint iterate(const SystemSpec& sys, const PhasePoint& pt, long long n) {
  check_point(sys, pt);
  if (n < 0 && !sys.invertible())
    throw NonInvertible("backward iteration requires an invertible system");
  if (std::llabs(n) > (1LL << 52))
    throw Error("orbit length exceeds exactly representable range");

  PhasePoint cur = pt;
  if (sys.kind == SystemKind::AffineTorus) {
    if (n >= 0) {
      for (long long i = 0; i < n; ++i) cur = affine_step(sys, cur, sys.A, sys.b);
    } else {
      const auto inv = unimodular_inverse(sys.A);
      // T^{-1}(w) = A^{-1}(w - b)
      std::vector<double> shift(sys.dim, 0.0);
      for (int i = 0; i < sys.dim; ++i)
        for (int j = 0; j < sys.dim; ++j)
          shift[i] -= static_cast<double>(inv[i][j]) * sys.b[j];
      for (long long i = 0; i < -n; ++i) cur = affine_step(sys, cur, inv, shift);
    }
  } else if (sys.kind == SystemKind::Doubling) {
    for (long long i = 0; i < n; ++i)
      cur.torus[0] = mod1(static_cast<double>(sys.multiplier) * cur.torus[0]);
  } else {
    for (long long i = 0; i < n; ++i) cur = solenoid_step(sys, cur);
  }
  return cur;
}

std::vector<PhasePoint> sample_points(const SystemSpec& sys, std::uint64_t seed,
                                      int count, int solenoid_depth) {
  if (count < 1) throw ConfigError("sample count must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<PhasePoint> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    PhasePoint pt;
    if (sys.kind == SystemKind::Solenoid) {
      // Pull a random backward symbol sequence through F to land on the
      // attractor at the sampled angle.
      const double angle = unif(rng);
      // Symbols come from a derived stream so the angle sequence matches the
      // doubling-map sampler draw for draw (their densities of states must
      // then agree byte for byte).
      std::mt19937_64 symbols(seed * 0x9e3779b97f4a7c15ULL +
                              static_cast<std::uint64_t>(i) + 1);
      double back = angle;
      for (int k = 0; k < solenoid_depth; ++k) {
        const double s = (symbols() & 1) ? 1.0 : 0.0;
        back = (back + s) / 2.0;
      }
      PhasePoint cur;
      cur.torus = {back};
      cur.has_disk = true;
      cur.x = 0.0;
      cur.y = 0.0;
      for (int k = 0; k < solenoid_depth; ++k) cur = solenoid_step(sys, cur);
      cur.torus[0] = angle;  // pin the angle exactly; doubling is exact here
      pt = cur;
    } else {
      pt.torus.resize(sys.torus_dim());
      for (double& c : pt.torus) c = unif(rng);
    }
    out.push_back(std::move(pt));
  }
  return out;
}

}  // namespace gaplab
