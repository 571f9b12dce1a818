#pragma once

#include <vector>

#include "gaplab/sampling.hpp"

namespace gaplab {

// Finite Jacobi block. Off-diagonals may be complex until gauge_reduce turns
// them into |a| via a diagonal unitary conjugation (spectrum preserved).
struct JacobiBlock {
  std::vector<double> diag;       // b[0..m)
  std::vector<Complex> offdiag;   // a[0..m-1)
  std::vector<Complex> phases;    // lambda[0..m), identity until gauge_reduce
  bool gauge_reduced = false;

  std::size_t size() const { return diag.size(); }
  // Real off-diagonal entry; valid after gauge_reduce (or real input).
  double off(std::size_t n) const { return offdiag[n].real(); }
  // [min, max] containing the spectrum (Gershgorin).
  std::pair<double, double> spectral_bounds() const;
};

struct EigenList {
  std::vector<double> values;  // nondecreasing, length = block size
  double tol = 0.0;
};

JacobiBlock build_block(const JacobiCoeffs& coeffs, const Window& sub);
JacobiBlock make_block(std::vector<double> diag, std::vector<Complex> offdiag);

JacobiBlock gauge_reduce(const JacobiBlock& block);

// #{eigenvalues <= E}, with multiplicity, via the Sturm pivot recurrence.
int sturm_count(const JacobiBlock& block, double E);

// All eigenvalues by count-driven bisection; each bracketed to width <= tol.
EigenList eigenvalues(const JacobiBlock& block, double tol = 1e-10);

}  // namespace gaplab
