#include "gaplab/tridiag.hpp"

#include <algorithm>
#include <cmath>

namespace gaplab {

std::pair<double, double> JacobiBlock::spectral_bounds() const {
  double lo = diag.empty() ? 0.0 : diag[0];
  double hi = lo;
  const std::size_t m = size();
  for (std::size_t n = 0; n < m; ++n) {
    double radius = 0.0;
    if (n > 0) radius += std::abs(offdiag[n - 1]);
    if (n + 1 < m) radius += std::abs(offdiag[n]);
    lo = std::min(lo, diag[n] - radius);
    hi = std::max(hi, diag[n] + radius);
  }
  return {lo, hi};
}

JacobiBlock build_block(const JacobiCoeffs& coeffs, const Window& sub) {
  if (sub.lo > sub.hi) throw EmptyBlock("block sub-interval is empty");
  if (sub.lo < coeffs.window.lo || sub.hi > coeffs.window.hi)
    throw ConfigError("block sub-interval outside coefficient window");
  JacobiBlock blk;
  const std::size_t m = static_cast<std::size_t>(sub.length());
  blk.diag.reserve(m);
  blk.offdiag.reserve(m - 1);
  for (long long n = sub.lo; n <= sub.hi; ++n) {
    blk.diag.push_back(coeffs.b_at(n));
    if (n < sub.hi) blk.offdiag.push_back(coeffs.a_at(n));
  }
  blk.phases.assign(m, Complex{1.0, 0.0});
  return blk;
}

JacobiBlock make_block(std::vector<double> diag, std::vector<Complex> offdiag) {
  if (diag.empty()) throw EmptyBlock("block must have at least one site");
  if (offdiag.size() + 1 != diag.size())
    throw ConfigError("offdiag length must be size-1");
  JacobiBlock blk;
  blk.phases.assign(diag.size(), Complex{1.0, 0.0});
  blk.diag = std::move(diag);
  blk.offdiag = std::move(offdiag);
  return blk;
}

JacobiBlock gauge_reduce(const JacobiBlock& block) {
  JacobiBlock out = block;
  const std::size_t m = block.size();
  out.phases.assign(m, Complex{1.0, 0.0});
  Complex lambda{1.0, 0.0};
  for (std::size_t n = 0; n + 1 < m; ++n) {
    const Complex a = block.offdiag[n];
    // lambda_{n+1} = lambda_n e^{-i Arg(a(n))}, with e^{-i Arg(0)} = 1
    if (std::abs(a) != 0.0) lambda *= std::conj(a) / std::abs(a);
    out.phases[n + 1] = lambda;
    out.offdiag[n] = Complex{std::abs(a), 0.0};
  }
  out.gauge_reduced = true;
  return out;
}

namespace {

// Relative pivot floor for zero-pivot replacement (LDL^T practice).
double pivot_floor(const JacobiBlock& block) {
  const auto [lo, hi] = block.spectral_bounds();
  const double scale = std::max({std::abs(lo), std::abs(hi), 1.0});
  return 1e-300 + 2.3e-16 * scale * scale;
}

int sturm_count_raw(const JacobiBlock& block, double E, double floor) {
  const std::size_t m = block.size();
  int count = 0;
  double d = 1.0;
  for (std::size_t n = 0; n < m; ++n) {
    const double off2 = (n == 0) ? 0.0 : block.off(n - 1) * block.off(n - 1);
    d = (block.diag[n] - E) - off2 / d;
    if (d == 0.0) d = -floor;
    if (d < 0.0) ++count;
  }
  return count;
}

void require_real_offdiag(const JacobiBlock& block) {
  if (block.gauge_reduced) return;
  for (const Complex& a : block.offdiag)
    if (a.imag() != 0.0 || a.real() < 0.0)
      throw NotGaugeReduced("sturm_count requires real nonnegative offdiag");
}

}  // namespace

int sturm_count(const JacobiBlock& block, double E) {
  require_real_offdiag(block);
  return sturm_count_raw(block, E, pivot_floor(block));
}

EigenList eigenvalues(const JacobiBlock& block, double tol) {
  if (tol <= 0.0) throw ConfigError("eigenvalue tolerance must be positive");
  require_real_offdiag(block);
  const double floor = pivot_floor(block);
  const std::size_t m = block.size();
  auto [glo, ghi] = block.spectral_bounds();
  glo -= tol;
  ghi += tol;

  EigenList out;
  out.tol = tol;
  out.values.resize(m);

  // Count-driven bisection; process indices in increasing order and reuse the
  // previous eigenvalue as a lower bracket.
  double running_lo = glo;
  for (std::size_t k = 0; k < m; ++k) {
    double lo = running_lo;
    double hi = ghi;
    // Find smallest E with sturm_count >= k+1.
    while (hi - lo > tol) {
      const double mid = 0.5 * (lo + hi);
      if (static_cast<std::size_t>(sturm_count_raw(block, mid, floor)) >= k + 1)
        hi = mid;
      else
        lo = mid;
    }
    out.values[k] = 0.5 * (lo + hi);
    running_lo = lo;
  }
  return out;
}

}  // namespace gaplab
