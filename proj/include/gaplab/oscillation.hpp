#pragma once

#include <vector>

#include "gaplab/tridiag.hpp"

namespace gaplab {

// Solution of the three-term recurrence with u(-1) = 0, u(0) = 1, continued
// one site past the block with a chosen trailing off-diagonal.
struct DirichletSolution {
  double energy = 0.0;
  double trailing = 1.0;
  std::vector<double> u;  // u(-1), u(0), ..., u(m); length m + 2

  double at(long long n) const {  // n in [-1, m]
    return u[static_cast<std::size_t>(n + 1)];
  }
  std::size_t m() const { return u.size() - 2; }
};

struct OscillationReport {
  int zeros = 0;            // F_m(E)
  int eigencount_above = 0; // #[sigma(J_m) in (E, inf)]
  bool equal = false;
};

struct BlockDecomposition {
  std::vector<long long> singular_positions;  // n with a(n) = 0
  std::vector<JacobiBlock> blocks;
  std::vector<Window> ranges;  // index range of each block
};

DirichletSolution dirichlet_solution(const JacobiBlock& block, double E,
                                     double trailing = 1.0);

// Zeros of the piecewise-linear interpolation of u on the open interval
// (0, m); a lattice zero counts once.
int count_interpolated_zeros(const DirichletSolution& sol);

OscillationReport verify_oscillation(const JacobiBlock& block, double E);

BlockDecomposition split_blocks(const JacobiCoeffs& coeffs);

// Sign flips of the block Dirichlet solution (trailing coefficient 1);
// equals the block eigencount above E for E off the block spectrum.
int block_sign_flips(const JacobiBlock& block, double E);

}  // namespace gaplab
