#include "gaplab/oscillation.hpp"

#include <cmath>

namespace gaplab {

DirichletSolution dirichlet_solution(const JacobiBlock& block, double E,
                                     double trailing) {
  const std::size_t m = block.size();
  for (std::size_t n = 0; n + 1 < m; ++n)
    if (!(block.off(n) > 0.0) || block.offdiag[n].imag() != 0.0)
      throw NonPositiveOffdiag("interior off-diagonals must be > 0");
  if (!(trailing > 0.0))
    throw NonPositiveOffdiag("trailing coefficient must be > 0");

  DirichletSolution sol;
  sol.energy = E;
  sol.trailing = trailing;
  sol.u.resize(m + 2);
  sol.u[0] = 0.0;  // u(-1)
  sol.u[1] = 1.0;  // u(0)
  for (std::size_t n = 0; n < m; ++n) {
    const double a_prev = (n == 0) ? 0.0 : block.off(n - 1);
    const double a_next = (n + 1 < m) ? block.off(n) : trailing;
    sol.u[n + 2] =
        ((E - block.diag[n]) * sol.u[n + 1] - a_prev * sol.u[n]) / a_next;
  }
  return sol;
}

int count_interpolated_zeros(const DirichletSolution& sol) {
  const std::size_t m = sol.m();
  int count = 0;
  // Lattice zeros strictly inside (0, m) count once.
  for (std::size_t j = 1; j < m; ++j)
    if (sol.at(static_cast<long long>(j)) == 0.0) ++count;
  // Strict sign changes between consecutive nonzero nodes cross once.
  for (std::size_t j = 0; j < m; ++j) {
    const double a = sol.at(static_cast<long long>(j));
    const double b = sol.at(static_cast<long long>(j) + 1);
    if (a != 0.0 && b != 0.0 && std::signbit(a) != std::signbit(b)) ++count;
  }
  return count;
}

OscillationReport verify_oscillation(const JacobiBlock& block, double E) {
  OscillationReport rep;
  const DirichletSolution sol = dirichlet_solution(block, E, 1.0);
  rep.zeros = count_interpolated_zeros(sol);
  rep.eigencount_above = static_cast<int>(block.size()) - sturm_count(block, E);
  rep.equal = (rep.zeros == rep.eigencount_above);
  return rep;
}

BlockDecomposition split_blocks(const JacobiCoeffs& coeffs) {
  for (std::size_t i = 0; i < coeffs.a.size(); ++i)
    if (coeffs.a[i].imag() != 0.0 || coeffs.a[i].real() < 0.0)
      throw NotGaugeReduced("split_blocks requires real nonnegative a");

  BlockDecomposition dec;
  const long long lo = coeffs.window.lo;
  const long long hi = coeffs.window.hi;
  long long start = lo;
  for (long long n = lo; n <= hi; ++n) {
    const bool cut = (coeffs.a_at(n).real() == 0.0);
    if (cut) dec.singular_positions.push_back(n);
    if (cut || n == hi) {
      Window range{start, n};
      JacobiBlock blk = build_block(coeffs, range);
      blk.gauge_reduced = true;
      dec.ranges.push_back(range);
      dec.blocks.push_back(std::move(blk));
      start = n + 1;
    }
  }
  return dec;
}

int block_sign_flips(const JacobiBlock& block, double E) {
  // The identity is stated off the block spectrum; reject near-eigenvalues.
  const double guard = 1e-9;
  if (sturm_count(block, E - guard) != sturm_count(block, E + guard))
    throw EnergyTooCloseToBlockSpectrum("E within 1e-9 of block spectrum");

  const DirichletSolution sol = dirichlet_solution(block, E, 1.0);
  const std::size_t m = sol.m();
  int flips = 0;
  bool last_negative = false;  // sign of u(0) = 1
  // Walk u(1)..u(m), tracking the last nonzero sign; an interior lattice zero
  // is always a genuine crossing for the three-term recurrence.
  for (long long j = 1; j <= static_cast<long long>(m); ++j) {
    const double v = sol.at(j);
    if (v == 0.0) continue;
    const bool neg = std::signbit(v);
    if (neg != last_negative) ++flips;
    last_negative = neg;
  }
  return flips;
}

}  // namespace gaplab
