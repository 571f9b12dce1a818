#include "gaplab/cocycle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace gaplab {

namespace {

constexpr int kRenormStride = 32;

double norm2(const std::array<Complex, 2>& v) {
  return std::sqrt(std::norm(v[0]) + std::norm(v[1]));
}

void normalize(std::array<Complex, 2>& v) {
  const double n = norm2(v);
  if (n > 0.0) {
    v[0] /= n;
    v[1] /= n;
  }
}

// Right singular vectors of M from the Hermitian form M^H M.
std::pair<ProjectivePoint, ProjectivePoint> right_singular_dirs(
    const Matrix2c& M) {
  // H = [[a, b], [conj(b), c]] with real a, c.
  const Complex m00 = M.at(0, 0), m01 = M.at(0, 1), m10 = M.at(1, 0),
                m11 = M.at(1, 1);
  const double a = std::norm(m00) + std::norm(m10);
  const double c = std::norm(m01) + std::norm(m11);
  const Complex b = std::conj(m00) * m01 + std::conj(m10) * m11;
  const double tr = a + c;
  const double disc = std::sqrt(std::max(0.0, (a - c) * (a - c) + 4.0 * std::norm(b)));
  const double l1 = 0.5 * (tr + disc);  // larger eigenvalue
  // Eigenvector for l1: (b, l1 - a) or (l1 - c, conj(b)).
  ProjectivePoint top, bottom;
  if (std::abs(b) > 1e-300) {
    top = ProjectivePoint::from(b, Complex{l1 - a, 0.0});
  } else {
    top = (a >= c) ? ProjectivePoint::from(1.0, 0.0)
                   : ProjectivePoint::from(0.0, 1.0);
  }
  // The other singular direction is orthogonal.
  bottom = ProjectivePoint::from(-std::conj(top.v[1]), std::conj(top.v[0]));
  return {top, bottom};
}

}  // namespace

Matrix2c Matrix2c::operator*(const Matrix2c& o) const {
  Matrix2c r;
  r.at(0, 0) = at(0, 0) * o.at(0, 0) + at(0, 1) * o.at(1, 0);
  r.at(0, 1) = at(0, 0) * o.at(0, 1) + at(0, 1) * o.at(1, 1);
  r.at(1, 0) = at(1, 0) * o.at(0, 0) + at(1, 1) * o.at(1, 0);
  r.at(1, 1) = at(1, 0) * o.at(0, 1) + at(1, 1) * o.at(1, 1);
  return r;
}

std::array<Complex, 2> Matrix2c::apply(const std::array<Complex, 2>& v) const {
  return {at(0, 0) * v[0] + at(0, 1) * v[1], at(1, 0) * v[0] + at(1, 1) * v[1]};
}

Matrix2c Matrix2c::inverse() const {
  const Complex d = det();
  if (std::abs(d) == 0.0) throw SingularCocycle("matrix is singular");
  Matrix2c r;
  r.at(0, 0) = at(1, 1) / d;
  r.at(0, 1) = -at(0, 1) / d;
  r.at(1, 0) = -at(1, 0) / d;
  r.at(1, 1) = at(0, 0) / d;
  return r;
}

double Matrix2c::max_abs() const {
  double m = 0.0;
  for (const Complex& c : e) m = std::max(m, std::abs(c));
  return m;
}

std::pair<double, double> Matrix2c::singular_values() const {
  double f2 = 0.0;
  for (const Complex& c : e) f2 += std::norm(c);
  const double d = std::abs(det());
  const double disc = std::sqrt(std::max(0.0, f2 * f2 - 4.0 * d * d));
  const double s1 = std::sqrt(0.5 * (f2 + disc));
  const double s2 = (s1 > 0.0) ? d / s1 : 0.0;
  return {s1, s2};
}

ProjectivePoint ProjectivePoint::from(Complex a, Complex b) {
  ProjectivePoint p;
  p.v = {a, b};
  normalize(p.v);
  return p;
}

double ProjectivePoint::angle() const {
  // Real representative
  const double x = v[0].real();
  const double y = v[1].real();
  double t = std::atan2(y, x);
  while (t < 0.0) t += std::numbers::pi;
  while (t >= std::numbers::pi) t -= std::numbers::pi;
  return t;
}

double ProjectivePoint::distance(const ProjectivePoint& other) const {
  // sin of the angle as a normalized 2x2 determinant; exact near 0, unlike
  // sqrt(1 - cos^2) which bottoms out at sqrt(eps).
  const double cross = std::abs(v[0] * other.v[1] - v[1] * other.v[0]);
  const double nu = std::sqrt(std::norm(v[0]) + std::norm(v[1]));
  const double nw = std::sqrt(std::norm(other.v[0]) + std::norm(other.v[1]));
  return std::min(1.0, cross / (nu * nw));
}

Matrix2c cocycle_matrix(double E, const SystemSpec& sys, const SamplingFn& p,
                        const SamplingFn& q, const PhasePoint& pt,
                        bool shifted) {
  Matrix2c B;
  if (!shifted) {
    if (!sys.invertible())
      throw NonInvertible("standard cocycle needs T^{-1}; use the shifted form");
    const PhasePoint prev = iterate(sys, pt, -1);
    B.at(0, 0) = Complex{E, 0.0} - eval(q, sys, pt);
    B.at(0, 1) = -std::conj(eval(p, sys, prev));
    B.at(1, 0) = eval(p, sys, pt);
    B.at(1, 1) = Complex{0.0, 0.0};
  } else {
    // Arguments advanced by one step (half-line form for non-invertible T).
    const PhasePoint next = iterate(sys, pt, 1);
    B.at(0, 0) = Complex{E, 0.0} - eval(q, sys, next);
    B.at(0, 1) = -std::conj(eval(p, sys, pt));
    B.at(1, 0) = eval(p, sys, next);
    B.at(1, 1) = Complex{0.0, 0.0};
  }
  return B;
}

ScaledMatrix cocycle_iterate(double E, const SystemSpec& sys,
                             const SamplingFn& p, const SamplingFn& q,
                             const PhasePoint& pt, long long n, bool shifted) {
  if (n < 0) throw ConfigError("cocycle_iterate requires n >= 0");
  ScaledMatrix out;
  PhasePoint cur = pt;
  for (long long i = 0; i < n; ++i) {
    out.m = cocycle_matrix(E, sys, p, q, cur, shifted) * out.m;
    if ((i + 1) % kRenormStride == 0) {
      const double s = out.m.max_abs();
      if (s > 0.0) {
        for (Complex& c : out.m.e) c /= s;
        out.log_scale += std::log(s);
      }
    }
    cur = iterate(sys, cur, 1);
  }
  return out;
}

std::optional<std::pair<double, double>> solution_action(
    double E, const JacobiCoeffs& coeffs, long long n, double u_n,
    double u_prev) {
  const Complex an = coeffs.a_at(n);
  if (an.imag() != 0.0)
    throw NotGaugeReduced("solution_action requires real coefficients");
  if (an.real() == 0.0) return std::nullopt;
  const double a_prev =
      (n - 1 < coeffs.window.lo) ? 0.0 : coeffs.a_at(n - 1).real();
  const double u_next =
      ((E - coeffs.b_at(n)) * u_n - a_prev * u_prev) / an.real();
  return std::make_pair(u_next, u_n);
}

double rotation_number(double E, const SystemSpec& sys, const SamplingFn& p,
                       const SamplingFn& q, const PhasePoint& omega,
                       long long t_max) {
  if (t_max < 1000) throw ConfigError("rotation_number needs t_max >= 1e3");
  // Gauge reduction first: only |p| matters for the flip count.
  const SamplingFn p_abs = (p.post == PostMap::ClampBelow)
                               ? p
                               : SamplingFn::modulus(p.base);
  const JacobiCoeffs coeffs =
      coefficients(sys, p_abs, q, omega, Window{0, t_max});

  long long flips = 0;
  double u_prev = 0.0;  // u(n-1), block-local Dirichlet data
  double u_cur = 1.0;   // u(n)
  bool last_negative = false;
  for (long long n = 0; n < t_max; ++n) {
    const double a_n = coeffs.a_at(n).real();
    const double a_prev = (n == coeffs.window.lo) ? 0.0 : coeffs.a_at(n - 1).real();
    const double divisor = (a_n == 0.0) ? 1.0 : a_n;  // trailing tilde-a = 1
    double u_next = ((E - coeffs.b_at(n)) * u_cur - a_prev * u_prev) / divisor;

    if (u_next != 0.0) {
      const bool neg = std::signbit(u_next);
      if (neg != last_negative) ++flips;
      last_negative = neg;
    }

    if (a_n == 0.0) {
      // Block boundary: restart the Dirichlet data for the next block.
      u_prev = 0.0;
      u_cur = 1.0;
      last_negative = false;
    } else {
      const double scale = std::max(std::abs(u_cur), std::abs(u_next));
      if (scale > 1e100) {
        u_cur /= scale;
        u_next /= scale;
      }
      u_prev = u_cur;
      u_cur = u_next;
    }
  }
  return static_cast<double>(flips) / static_cast<double>(t_max);
}

DsVerdict dominated_splitting_test(double E, const SystemSpec& sys,
                                   const SamplingFn& p, const SamplingFn& q,
                                   const DsParams& params) {
  if (!sys.invertible())
    throw NonInvertible("dominated splitting test needs an invertible system");
  DsVerdict verdict;
  verdict.horizon = params.horizon;

  const auto points = sample_points(sys, params.seed, params.grid);
  const double required = std::pow(params.rho_min, params.horizon);
  double min_ratio = std::numeric_limits<double>::infinity();
  double worst_alignment = 0.0;
  verdict.min_collision = std::numeric_limits<double>::infinity();

  for (const PhasePoint& pt : points) {
    // Reject the singular regime up front.
    const PhasePoint prev = iterate(sys, pt, -1);
    if (std::abs(eval(p, sys, pt)) < 1e-14 ||
        std::abs(eval(p, sys, prev)) < 1e-14)
      throw SingularCocycle("p vanishes at a sampled point");

    const ScaledMatrix bn =
        cocycle_iterate(E, sys, p, q, pt, params.horizon);
    // Singularity is decided per step (p vanishing, above): the determinant
    // of a long renormalized hyperbolic product is below rounding noise, so
    // testing it here would misfire. s2 can likewise underflow; that is
    // domination, not degeneracy.
    const auto [s1, s2] = bn.m.singular_values();
    const double ratio =
        (s2 > 0.0) ? s1 / s2 : std::numeric_limits<double>::infinity();
    if (ratio <= 1.0 + 1e-6) {
      verdict.status = DsStatus::NotDominated;
      verdict.reason = "singular value ratio collapses";
      verdict.witness = pt;
      return verdict;
    }
    min_ratio = std::min(min_ratio, ratio);

    // Stable direction candidate: least-expanded right singular direction,
    // refined at doubled horizon to check convergence.
    const auto [topN, stableN] = right_singular_dirs(bn.m);
    const ScaledMatrix b2n =
        cocycle_iterate(E, sys, p, q, pt, 2 * params.horizon);
    const auto [top2N, stable2N] = right_singular_dirs(b2n.m);
    worst_alignment = std::max(worst_alignment, stableN.distance(stable2N));

    // Collision check along an orbit segment: push the unstable direction
    // forward and pull the stable direction backward over 4 N* sites and
    // take the closest approach. Outside the spectrum the two fields stay a
    // dichotomy angle apart everywhere; inside, the splitting is at best
    // measurable and the fields come arbitrarily close along orbits.
    const int span = 4 * params.horizon;
    PhasePoint cur = iterate(sys, pt, -params.horizon);
    std::array<Complex, 2> u{Complex{0.73907, 0.0}, Complex{0.67361, 0.0}};
    for (int k = 0; k < params.horizon; ++k) {  // burn-in toward the section
      u = cocycle_matrix(E, sys, p, q, cur).apply(u);
      normalize(u);
      cur = iterate(sys, cur, 1);
    }
    std::vector<Matrix2c> steps(span);
    std::vector<ProjectivePoint> unstable_at(span + 1);
    unstable_at[0].v = u;
    for (int n = 0; n < span; ++n) {
      steps[n] = cocycle_matrix(E, sys, p, q, cur);
      u = steps[n].apply(u);
      normalize(u);
      unstable_at[n + 1].v = u;
      cur = iterate(sys, cur, 1);
    }
    const ScaledMatrix tail = cocycle_iterate(E, sys, p, q, cur, params.horizon);
    ProjectivePoint stable = right_singular_dirs(tail.m).second;
    double min_dist = unstable_at[span].distance(stable);
    for (int n = span - 1; n >= 0; --n) {
      const auto sv = steps[n].inverse().apply(stable.v);
      stable = ProjectivePoint::from(sv[0], sv[1]);
      min_dist = std::min(min_dist, unstable_at[n].distance(stable));
    }
    verdict.min_collision = std::min(verdict.min_collision, min_dist);
    if (min_dist < 1e-2) {
      verdict.status = DsStatus::NotDominated;
      verdict.reason = "stable and unstable direction fields collide";
      verdict.witness = pt;
      return verdict;
    }
  }

  if (worst_alignment > 1e-2) {
    verdict.status = DsStatus::Inconclusive;
    verdict.reason = "direction fields not converged at this horizon";
    return verdict;
  }
  if (min_ratio >= required) {
    verdict.status = DsStatus::Dominated;
    verdict.rate = std::pow(min_ratio, 1.0 / params.horizon);
    verdict.reason = "uniform singular value growth over sampled grid";
  } else {
    verdict.status = DsStatus::Inconclusive;
    verdict.reason = "growth ratio below threshold at tested horizon";
  }
  return verdict;
}

namespace {

// Push a generic direction forward along the orbit from T^{-depth} w to w.
// Off-diagonal zeros anchor the section at span(e1) exactly.
ProjectivePoint push_forward(double E, const SystemSpec& sys,
                             const SamplingFn& p, const SamplingFn& q,
                             const PhasePoint& omega, int depth) {
  PhasePoint cur = iterate(sys, omega, -depth);
  std::array<Complex, 2> v{Complex{0.73907, 0.0}, Complex{0.67361, 0.0}};
  for (int k = 0; k < depth; ++k) {
    const Matrix2c B = cocycle_matrix(E, sys, p, q, cur);
    v = B.apply(v);
    if (std::abs(v[0]) == 0.0 && std::abs(v[1]) == 0.0)
      v = {Complex{1.0, 0.0}, Complex{0.0, 0.0}};  // image of a zero row
    normalize(v);
    cur = iterate(sys, cur, 1);
  }
  ProjectivePoint out;
  out.v = v;
  return out;
}

ProjectivePoint pull_back(double E, const SystemSpec& sys, const SamplingFn& p,
                          const SamplingFn& q, const PhasePoint& omega,
                          int depth) {
  std::array<Complex, 2> v{Complex{0.73907, 0.0}, Complex{0.67361, 0.0}};
  for (int k = depth - 1; k >= 0; --k) {
    const PhasePoint at = iterate(sys, omega, k);
    const Matrix2c Binv = cocycle_matrix(E, sys, p, q, at).inverse();
    v = Binv.apply(v);
    normalize(v);
  }
  ProjectivePoint out;
  out.v = v;
  return out;
}

}  // namespace

SectionResult unstable_section(double E, const SystemSpec& sys,
                               const SamplingFn& p, const SamplingFn& q,
                               const PhasePoint& omega, int depth) {
  SectionResult res;
  res.direction = push_forward(E, sys, p, q, omega, depth);
  const ProjectivePoint at_next = push_forward(E, sys, p, q,
                                               iterate(sys, omega, 1), depth);
  const Matrix2c B = cocycle_matrix(E, sys, p, q, omega);
  auto img = B.apply(res.direction.v);
  if (std::abs(img[0]) == 0.0 && std::abs(img[1]) == 0.0)
    img = {Complex{1.0, 0.0}, Complex{0.0, 0.0}};
  res.residual = ProjectivePoint::from(img[0], img[1]).distance(at_next);
  return res;
}

SectionResult stable_section(double E, const SystemSpec& sys,
                             const SamplingFn& p, const SamplingFn& q,
                             const PhasePoint& omega, int depth) {
  SectionResult res;
  res.direction = pull_back(E, sys, p, q, omega, depth);
  const ProjectivePoint at_next =
      pull_back(E, sys, p, q, iterate(sys, omega, 1), depth);
  const Matrix2c B = cocycle_matrix(E, sys, p, q, omega);
  const auto img = B.apply(res.direction.v);
  res.residual = ProjectivePoint::from(img[0], img[1]).distance(at_next);
  return res;
}

}  // namespace gaplab
